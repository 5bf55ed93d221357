#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "quivhom/field.hpp"
#include "quivhom/p1_sheaf.hpp"
#include "quivhom/quiver.hpp"
#include "quivhom/twisted_rep.hpp"

namespace quivhom::cli {

using Json = nlohmann::ordered_json;

enum class Mode { vector, p1 };

std::string to_string(Mode m);

/// Malformed JSON. `offset` is the byte position reported by the parser.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Well-formed JSON that does not describe a valid instance. `path` is a
/// JSON pointer to the offending value.
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

struct Instance {
  Json document;
  Field field;
  Quiver quiver;
  Mode mode = Mode::vector;
  TwistData vector_twists;
  std::vector<SplitBundle> p1_twists;
  std::map<std::string, TwistedRep> vector_modules;
  std::map<std::string, QSheafP1> p1_modules;

  const TwistedRep& vector_module(const std::string& name) const;
  const QSheafP1& p1_module(const std::string& name) const;
};

/// Parses and validates an instance document.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// The instance document rebuilt from the parsed objects.
Json serialize(const Instance& inst);

/// Hex SHA-256 of the compact, key-sorted form of the document.
std::string instance_digest(const Json& document);

/// Exact text of a field element: "3/2" for Q, canonical residue for F_p.
Json scalar_to_json(const Field& field, const Scalar& s);

} // namespace quivhom::cli
