#include "quivhom/quiver.hpp"

#include <stdexcept>

namespace quivhom {

Quiver::Quiver(std::size_t n_vertices, std::vector<Arrow> arrows)
    : n_vertices_(n_vertices), arrows_(std::move(arrows)) {
  if (n_vertices_ == 0)
    throw std::invalid_argument("a quiver needs at least one vertex");
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].tail >= n_vertices_ || arrows_[a].head >= n_vertices_)
      throw std::invalid_argument("arrow " + std::to_string(a) + " has an endpoint outside 0.." +
                                  std::to_string(n_vertices_ - 1));
}

bool Quiver::is_acyclic() const {
  // Kahn's algorithm; loops count as cycles.
  std::vector<std::size_t> indegree(n_vertices_, 0);
  for (const auto& a : arrows_)
    ++indegree[a.head];
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n_vertices_; ++v)
    if (indegree[v] == 0)
      ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& a : arrows_)
      if (a.tail == v && --indegree[a.head] == 0)
        ready.push_back(a.head);
  }
  return seen == n_vertices_;
}

Path Path::from_arrows(const Quiver& q, std::vector<ArrowIndex> traversal) {
  if (traversal.empty())
    throw std::invalid_argument("use Path::trivial for length-zero paths");
  for (std::size_t k = 0; k < traversal.size(); ++k) {
    if (traversal[k] >= q.arrow_count())
      throw std::out_of_range("arrow index " + std::to_string(traversal[k]) + " out of range");
    if (k > 0 && q.head(traversal[k - 1]) != q.tail(traversal[k]))
      throw std::invalid_argument("arrows " + std::to_string(traversal[k - 1]) + " and " +
                                  std::to_string(traversal[k]) + " are not composable");
  }
  Vertex t = q.tail(traversal.front());
  Vertex h = q.head(traversal.back());
  return Path(t, h, std::move(traversal));
}

std::vector<ArrowIndex> Path::written_order() const {
  return std::vector<ArrowIndex>(arrows_.rbegin(), arrows_.rend());
}

std::string Path::to_string() const {
  if (is_trivial())
    return "<" + std::to_string(tail_) + ">";
  std::string out;
  for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
    if (!out.empty())
      out += '*';
    out += 'a' + std::to_string(*it);
  }
  return out;
}

std::optional<Path> compose(const Path& p, const Path& q) {
  if (p.tail() != q.head())
    return std::nullopt;
  if (p.is_trivial())
    return q;
  if (q.is_trivial())
    return p;
  std::vector<ArrowIndex> seq = q.arrows();
  seq.insert(seq.end(), p.arrows().begin(), p.arrows().end());
  return Path::from_arrows_unchecked(q.tail(), p.head(), std::move(seq));
}

PathTable::PathTable(const Quiver& q, std::size_t max_len) {
  groups_.assign(max_len + 1, std::vector<std::vector<Path>>(q.vertex_count()));
  for (Vertex i = 0; i < q.vertex_count(); ++i)
    groups_[0][i].push_back(Path::trivial(i));
  for (std::size_t len = 1; len <= max_len; ++len)
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
      for (const Path& rest : groups_[len - 1][q.tail(a)])
        groups_[len][q.head(a)].push_back(*compose(Path::from_arrows(q, {a}), rest));
}

PathTable enumerate_paths(const Quiver& q, std::size_t max_len) { return PathTable(q, max_len); }

} // namespace quivhom
