#include "quivhom/cli/instance.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

#include "quivhom/errors.hpp"

namespace quivhom::cli {

std::string to_string(Mode m) { return m == Mode::vector ? "vector" : "p1"; }

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error(what), offset_(offset) {}

ValidationError::ValidationError(std::string path, const std::string& what)
    : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + what),
      path_(std::move(path)) {}

namespace {

constexpr long long kMaxDim = 10000;
constexpr long long kMaxTwist = 1000;

std::string child(const std::string& path, const std::string& key) {
  return path + "/" + key;
}
std::string child(const std::string& path, std::size_t k) {
  return path + "/" + std::to_string(k);
}

void expect_object(const Json& v, const std::string& path) {
  if (!v.is_object())
    throw ValidationError(path, "expected an object");
}

void expect_array(const Json& v, const std::string& path) {
  if (!v.is_array())
    throw ValidationError(path, "expected an array");
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
  expect_object(obj, path);
  for (const auto& [key, _] : obj.items())
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      throw ValidationError(child(path, key), "unknown key");
  for (const char* key : allowed)
    if (!obj.contains(key))
      throw ValidationError(child(path, key), "missing key");
}

long long get_int(const Json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer())
    throw ValidationError(path, "expected an integer");
  long long x;
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
      throw ValidationError(path, "integer out of range");
    x = static_cast<long long>(u);
  } else {
    x = v.get<long long>();
  }
  if (x < lo || x > hi)
    throw ValidationError(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "]");
  return x;
}

Scalar get_scalar(const Field& field, const Json& v, const std::string& path) {
  if (field.is_prime_field()) {
    if (!v.is_number_integer())
      throw ValidationError(path, "prime-field entries must be integers in [0, p)");
    return field.from_int(get_int(v, path, 0, static_cast<long long>(field.modulus()) - 1));
  }
  if (v.is_number_integer())
    return field.from_int(get_int(v, path, std::numeric_limits<long long>::min(),
                                  std::numeric_limits<long long>::max()));
  if (!v.is_string())
    throw ValidationError(path, "rational entries must be strings such as \"3/2\"");
  auto s = field.parse(v.get<std::string>());
  if (!s)
    throw ValidationError(path, "not a rational number: \"" + v.get<std::string>() + "\"");
  return *s;
}

Field parse_field(const Json& v) {
  const std::string path = "/field";
  if (v.is_string()) {
    if (v.get<std::string>() == "q")
      return Field::rationals();
    throw ValidationError(path, "expected \"q\" or {\"fp\": p}");
  }
  check_keys(v, {"fp"}, path);
  const long long p = get_int(v["fp"], child(path, "fp"), 2, (1LL << 31) - 1);
  if (!is_prime(static_cast<std::uint64_t>(p)))
    throw ValidationError(child(path, "fp"), std::to_string(p) + " is not prime");
  return Field::prime(static_cast<std::uint64_t>(p));
}

Quiver parse_quiver(const Json& v) {
  const std::string path = "/quiver";
  check_keys(v, {"vertices", "arrows"}, path);
  const auto n = static_cast<std::size_t>(get_int(v["vertices"], child(path, "vertices"), 1, kMaxDim));
  const Json& arrows = v["arrows"];
  const std::string apath = child(path, "arrows");
  expect_array(arrows, apath);
  std::vector<Arrow> out;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const std::string p = child(apath, k);
    expect_array(arrows[k], p);
    if (arrows[k].size() != 2)
      throw ValidationError(p, "an arrow is [tail, head]");
    const auto hi = static_cast<long long>(n) - 1;
    out.push_back({static_cast<Vertex>(get_int(arrows[k][0], child(p, 0), 0, hi)),
                   static_cast<Vertex>(get_int(arrows[k][1], child(p, 1), 0, hi))});
  }
  return Quiver(n, std::move(out));
}

std::vector<int> parse_twist_list(const Json& v, const std::string& path) {
  expect_array(v, path);
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(static_cast<int>(get_int(v[k], child(path, k), -kMaxTwist, kMaxTwist)));
  if (!std::is_sorted(out.begin(), out.end(), std::greater<>()))
    throw ValidationError(path, "twists must be listed in non-increasing order");
  return out;
}

ExactMatrix parse_matrix(const Field& field, const Json& v, std::size_t rows, std::size_t cols,
                         const std::string& path) {
  expect_array(v, path);
  if (v.size() != rows)
    throw ValidationError(path, "expected " + std::to_string(rows) + " rows, got " +
                                    std::to_string(v.size()));
  ExactMatrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = child(path, r);
    expect_array(v[r], rp);
    if (v[r].size() != cols)
      throw ValidationError(rp, "expected " + std::to_string(cols) + " entries, got " +
                                    std::to_string(v[r].size()));
    for (std::size_t c = 0; c < cols; ++c)
      m.set(r, c, get_scalar(field, v[r][c], child(rp, c)));
  }
  return m;
}

TwistedRep parse_vector_module(const Instance& inst, const Json& v, const std::string& path) {
  check_keys(v, {"dims", "phi"}, path);
  const Quiver& q = inst.quiver;
  const std::string dpath = child(path, "dims");
  expect_array(v["dims"], dpath);
  if (v["dims"].size() != q.vertex_count())
    throw ValidationError(dpath, "expected one dimension per vertex");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    dims.push_back(static_cast<std::size_t>(get_int(v["dims"][i], child(dpath, i), 0, kMaxDim)));
  const std::string ppath = child(path, "phi");
  expect_array(v["phi"], ppath);
  if (v["phi"].size() != q.arrow_count())
    throw ValidationError(ppath, "expected one matrix per arrow");
  std::vector<ExactMatrix> phi;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
    phi.push_back(parse_matrix(inst.field, v["phi"][a], dims[q.head(a)],
                               inst.vector_twists[a] * dims[q.tail(a)], child(ppath, a)));
  return TwistedRep(q, inst.vector_twists, inst.field, std::move(dims), std::move(phi));
}

QSheafP1 parse_p1_module(const Instance& inst, const Json& v, const std::string& path) {
  check_keys(v, {"twists", "phi"}, path);
  const Quiver& q = inst.quiver;
  const std::string tpath = child(path, "twists");
  expect_array(v["twists"], tpath);
  if (v["twists"].size() != q.vertex_count())
    throw ValidationError(tpath, "expected one twist list per vertex");
  std::vector<SplitBundle> bundles;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    bundles.emplace_back(parse_twist_list(v["twists"][i], child(tpath, i)));
  const std::string ppath = child(path, "phi");
  expect_array(v["phi"], ppath);
  if (v["phi"].size() != q.arrow_count())
    throw ValidationError(ppath, "expected one form matrix per arrow");
  std::vector<FormMatrix> phi;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const std::string mp = child(ppath, a);
    const Json& mv = v["phi"][a];
    FormMatrix fm(inst.field, tensor(inst.p1_twists[a], bundles[q.tail(a)]).bundle,
                  bundles[q.head(a)]);
    expect_array(mv, mp);
    if (mv.size() != fm.target().rank())
      throw ValidationError(mp, "expected " + std::to_string(fm.target().rank()) + " rows");
    for (std::size_t r = 0; r < fm.target().rank(); ++r) {
      const std::string rp = child(mp, r);
      expect_array(mv[r], rp);
      if (mv[r].size() != fm.source().rank())
        throw ValidationError(rp, "expected " + std::to_string(fm.source().rank()) + " entries");
      for (std::size_t c = 0; c < fm.source().rank(); ++c) {
        const std::string ep = child(rp, c);
        const Json& ev = mv[r][c];
        expect_array(ev, ep);
        const int d = fm.degree(r, c);
        const std::size_t want = d >= 0 ? static_cast<std::size_t>(d) + 1 : 0;
        if (ev.size() != want)
          throw ValidationError(ep, "a form of degree " + std::to_string(d) + " has " +
                                        std::to_string(want) + " coefficients");
        BinForm f = BinForm::zero(inst.field, d);
        for (std::size_t k = 0; k < want; ++k)
          f.coeffs[k] = get_scalar(inst.field, ev[k], child(ep, k));
        fm.set(r, c, std::move(f));
      }
    }
    phi.push_back(std::move(fm));
  }
  return QSheafP1(q, inst.field, inst.p1_twists, std::move(bundles), std::move(phi));
}

Json matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(scalar_to_json(m.field(), m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

const TwistedRep& Instance::vector_module(const std::string& name) const {
  if (mode != Mode::vector)
    throw IncompatibleInstances("instance is in " + to_string(mode) +
                                " mode; this command needs vector mode");
  auto it = vector_modules.find(name);
  if (it == vector_modules.end())
    throw ValidationError("/modules/" + name, "no such module");
  return it->second;
}

const QSheafP1& Instance::p1_module(const std::string& name) const {
  if (mode != Mode::p1)
    throw IncompatibleInstances("instance is in " + to_string(mode) +
                                " mode; this command needs p1 mode");
  auto it = p1_modules.find(name);
  if (it == p1_modules.end())
    throw ValidationError("/modules/" + name, "no such module");
  return it->second;
}

Instance parse_instance(std::string_view text) {
  Instance inst;
  try {
    inst.document = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const Json& doc = inst.document;
  check_keys(doc, {"field", "quiver", "mode", "twists", "modules"}, "");
  inst.field = parse_field(doc["field"]);
  inst.quiver = parse_quiver(doc["quiver"]);

  if (!doc["mode"].is_string() ||
      (doc["mode"] != "vector" && doc["mode"] != "p1"))
    throw ValidationError("/mode", "expected \"vector\" or \"p1\"");
  inst.mode = doc["mode"] == "vector" ? Mode::vector : Mode::p1;

  const Json& tw = doc["twists"];
  expect_array(tw, "/twists");
  if (tw.size() != inst.quiver.arrow_count())
    throw ValidationError("/twists", "expected one entry per arrow");
  for (std::size_t a = 0; a < tw.size(); ++a) {
    const std::string p = child("/twists", a);
    if (inst.mode == Mode::vector) {
      inst.vector_twists.dims.push_back(static_cast<std::size_t>(get_int(tw[a], p, 1, kMaxDim)));
    } else {
      auto list = parse_twist_list(tw[a], p);
      if (list.empty())
        throw ValidationError(p, "a twisting bundle needs rank >= 1");
      inst.p1_twists.emplace_back(std::move(list));
    }
  }

  const Json& mods = doc["modules"];
  expect_object(mods, "/modules");
  for (const auto& [name, body] : mods.items()) {
    const std::string p = child("/modules", name);
    try {
      if (inst.mode == Mode::vector)
        inst.vector_modules.emplace(name, parse_vector_module(inst, body, p));
      else
        inst.p1_modules.emplace(name, parse_p1_module(inst, body, p));
    } catch (const DimensionMismatch& e) {
      throw ValidationError(p, e.what());
    }
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

Json scalar_to_json(const Field& field, const Scalar& s) {
  if (field.is_prime_field())
    return Json(static_cast<std::uint64_t>(s.get_num().get_ui()));
  return Json(field.format(s));
}

Json serialize(const Instance& inst) {
  Json doc = Json::object();
  if (inst.field.is_prime_field())
    doc["field"] = Json{{"fp", inst.field.modulus()}};
  else
    doc["field"] = "q";
  Json arrows = Json::array();
  for (const auto& a : inst.quiver.arrows())
    arrows.push_back(Json::array({a.tail, a.head}));
  doc["quiver"] = Json{{"vertices", inst.quiver.vertex_count()}, {"arrows", arrows}};
  doc["mode"] = to_string(inst.mode);
  Json tw = Json::array();
  if (inst.mode == Mode::vector)
    for (auto t : inst.vector_twists.dims)
      tw.push_back(t);
  else
    for (const auto& b : inst.p1_twists)
      tw.push_back(b.twists());
  doc["twists"] = tw;
  Json mods = Json::object();
  // Keep the document's module order.
  for (const auto& [name, _] : inst.document["modules"].items()) {
    Json m = Json::object();
    if (inst.mode == Mode::vector) {
      const TwistedRep& V = inst.vector_modules.at(name);
      m["dims"] = V.dims();
      Json phi = Json::array();
      for (const auto& p : V.phis())
        phi.push_back(matrix_to_json(p));
      m["phi"] = phi;
    } else {
      const QSheafP1& V = inst.p1_modules.at(name);
      Json tws = Json::array();
      for (const auto& b : V.bundles())
        tws.push_back(b.twists());
      m["twists"] = tws;
      Json phi = Json::array();
      for (ArrowIndex a = 0; a < inst.quiver.arrow_count(); ++a) {
        const FormMatrix& f = V.phi(a);
        Json rows = Json::array();
        for (std::size_t r = 0; r < f.target().rank(); ++r) {
          Json row = Json::array();
          for (std::size_t c = 0; c < f.source().rank(); ++c) {
            Json coeffs = Json::array();
            for (const auto& x : f.entry(r, c).coeffs)
              coeffs.push_back(scalar_to_json(inst.field, x));
            row.push_back(coeffs);
          }
          rows.push_back(row);
        }
        phi.push_back(rows);
      }
      m["phi"] = phi;
    }
    mods[name] = m;
  }
  doc["modules"] = mods;
  return doc;
}

std::string instance_digest(const Json& document) {
  const std::string canonical = nlohmann::json::parse(document.dump()).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream hex;
  for (unsigned int k = 0; k < len; ++k)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return hex.str();
}

} // namespace quivhom::cli
