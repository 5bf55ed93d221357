#include "quivhom/cli/generate.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace quivhom::cli {

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0)
    return rng(); // full 64-bit range
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do
    x = rng();
  while (x >= limit);
  return lo + x % span;
}

void validate(const GenOptions& opts) {
  if (opts.max_vertices < 1)
    throw ValidationError("--max-vertices", "must be at least 1");
  if (opts.max_dim < 1)
    throw ValidationError("--max-dim", "must be at least 1");
  if (opts.max_twist < 1)
    throw ValidationError("--max-twist", "must be at least 1");
  if (opts.prime < 2 || !is_prime(opts.prime))
    throw ValidationError("--prime", std::to_string(opts.prime) + " is not prime");
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform(rng, 0, static_cast<std::uint64_t>(hi - lo)));
}

std::vector<int> random_twists(std::mt19937_64& rng, std::size_t rank, int bound) {
  std::vector<int> t;
  for (std::size_t k = 0; k < rank; ++k)
    t.push_back(uniform_int(rng, -bound, bound));
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

Json random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::uint32_t p) {
  Json m = Json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < cols; ++c)
      row.push_back(uniform(rng, 0, p - 1));
    m.push_back(row);
  }
  return m;
}

Json vector_module(std::mt19937_64& rng, const GenOptions& o, std::size_t n,
                   const std::vector<std::pair<std::size_t, std::size_t>>& arrows,
                   const std::vector<std::size_t>& twist) {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < n; ++i)
    dims.push_back(uniform(rng, 0, o.max_dim));
  Json phi = Json::array();
  for (std::size_t a = 0; a < arrows.size(); ++a)
    phi.push_back(random_matrix(rng, dims[arrows[a].second], twist[a] * dims[arrows[a].first],
                                o.prime));
  return Json{{"dims", dims}, {"phi", phi}};
}

Json p1_module(std::mt19937_64& rng, const GenOptions& o, std::size_t n,
               const std::vector<std::pair<std::size_t, std::size_t>>& arrows,
               const std::vector<std::vector<int>>& twist) {
  std::vector<std::vector<int>> bundles;
  for (std::size_t i = 0; i < n; ++i)
    bundles.push_back(random_twists(rng, uniform(rng, 0, o.max_dim), o.max_twist));
  Json phi = Json::array();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto& target = bundles[arrows[a].second];
    std::vector<int> source;
    for (int m : twist[a])
      for (int v : bundles[arrows[a].first])
        source.push_back(m + v);
    std::sort(source.begin(), source.end(), std::greater<>());
    Json rows = Json::array();
    for (int t : target) {
      Json row = Json::array();
      for (int s : source) {
        Json coeffs = Json::array();
        for (int k = 0; k <= t - s; ++k)
          coeffs.push_back(uniform(rng, 0, o.prime - 1));
        row.push_back(coeffs);
      }
      rows.push_back(row);
    }
    phi.push_back(rows);
  }
  return Json{{"twists", bundles}, {"phi", phi}};
}

} // namespace

Json generate_instance(const GenOptions& o) {
  validate(o);
  std::mt19937_64 rng(o.seed);
  const std::size_t n = uniform(rng, 1, o.max_vertices);
  const std::size_t k = uniform(rng, 0, o.max_arrows);
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t t = uniform(rng, 0, n - 1);
    const std::size_t h = uniform(rng, 0, n - 1);
    arrows.emplace_back(t, h);
  }
  Json jarrows = Json::array();
  for (const auto& [t, h] : arrows)
    jarrows.push_back(Json::array({t, h}));

  Json doc = Json::object();
  doc["field"] = Json{{"fp", o.prime}};
  doc["quiver"] = Json{{"vertices", n}, {"arrows", jarrows}};
  doc["mode"] = to_string(o.mode);
  Json modules = Json::object();
  if (o.mode == Mode::vector) {
    std::vector<std::size_t> twist;
    for (std::size_t a = 0; a < k; ++a)
      twist.push_back(uniform(rng, 1, static_cast<std::uint64_t>(o.max_twist)));
    doc["twists"] = twist;
    modules["V"] = vector_module(rng, o, n, arrows, twist);
    modules["W"] = vector_module(rng, o, n, arrows, twist);
  } else {
    std::vector<std::vector<int>> twist;
    for (std::size_t a = 0; a < k; ++a)
      twist.push_back(random_twists(rng, uniform(rng, 1, o.max_dim), o.max_twist));
    doc["twists"] = twist;
    modules["V"] = p1_module(rng, o, n, arrows, twist);
    modules["W"] = p1_module(rng, o, n, arrows, twist);
  }
  doc["modules"] = modules;
  return doc;
}

} // namespace quivhom::cli
