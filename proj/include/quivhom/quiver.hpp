#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quivhom {

using Vertex = std::size_t;
using ArrowIndex = std::size_t;

struct Arrow {
  Vertex tail;
  Vertex head;
  bool operator==(const Arrow&) const = default;
};

/// Finite directed multigraph. The arrow order is the canonical order for
/// every direct sum indexed by arrows.
class Quiver {
public:
  Quiver() = default;
  Quiver(std::size_t n_vertices, std::vector<Arrow> arrows);

  std::size_t vertex_count() const { return n_vertices_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  Vertex tail(ArrowIndex a) const { return arrows_.at(a).tail; }
  Vertex head(ArrowIndex a) const { return arrows_.at(a).head; }

  bool is_acyclic() const;

  bool operator==(const Quiver&) const = default;

private:
  std::size_t n_vertices_ = 0;
  std::vector<Arrow> arrows_;
};

/// A trivial path <i> or a composable arrow sequence p = a_m ... a_0.
///
/// Arrows are stored in traversal order: arrows()[0] is a_0 (the first arrow
/// applied), arrows().back() is a_m.
class Path {
public:
  static Path trivial(Vertex v) { return Path(v, v, {}); }
  /// Builds a_m ... a_0 from the traversal-order list {a_0, ..., a_m}.
  static Path from_arrows(const Quiver& q, std::vector<ArrowIndex> traversal);

  bool is_trivial() const { return arrows_.empty(); }
  std::size_t length() const { return arrows_.size(); }
  Vertex tail() const { return tail_; }
  Vertex head() const { return head_; }
  const std::vector<ArrowIndex>& arrows() const { return arrows_; }
  /// Arrow indices in written order a_m, ..., a_0.
  std::vector<ArrowIndex> written_order() const;

  /// "<i>" or "a3*a1*a0" style, written order.
  std::string to_string() const;

  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;

private:
  friend std::optional<Path> compose(const Path& p, const Path& q);
  static Path from_arrows_unchecked(Vertex tail, Vertex head, std::vector<ArrowIndex> arrows) {
    return Path(tail, head, std::move(arrows));
  }

  Path(Vertex tail, Vertex head, std::vector<ArrowIndex> arrows)
      : tail_(tail), head_(head), arrows_(std::move(arrows)) {}

  Vertex tail_ = 0;
  Vertex head_ = 0;
  std::vector<ArrowIndex> arrows_;
};

/// p * q ("p after q"): defined iff tail(p) == head(q).
std::optional<Path> compose(const Path& p, const Path& q);

/// Paths grouped by (length, head). Group (l, i) holds the paths of length l
/// ending at i, sorted lexicographically on their written arrow sequence.
class PathTable {
public:
  PathTable(const Quiver& q, std::size_t max_len);

  std::size_t max_length() const { return groups_.size() - 1; }
  const std::vector<Path>& paths(std::size_t length, Vertex head) const {
    return groups_.at(length).at(head);
  }
  std::size_t count(std::size_t length, Vertex head) const { return paths(length, head).size(); }

private:
  std::vector<std::vector<std::vector<Path>>> groups_;
};

PathTable enumerate_paths(const Quiver& q, std::size_t max_len);

} // namespace quivhom
