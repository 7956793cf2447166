#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "coblab/freegroup.hpp"
#include "coblab/random.hpp"

namespace coblab {

/// Cayley tree of the free group of rank r >= 2; vertices are reduced words.
class CayleyTree {
 public:
  using vertex_type = ReducedWord;

  explicit CayleyTree(int rank);

  int rank() const { return rank_; }
  std::string selector() const { return "cayley:" + std::to_string(rank_); }

  vertex_type base() const { return ReducedWord(rank_); }
  bool contains(const vertex_type& v) const { return v.rank() == rank_; }
  void require(const vertex_type& v) const;

  std::size_t distance(const vertex_type& x, const vertex_type& y) const;
  std::vector<vertex_type> geodesic(const vertex_type& x, const vertex_type& y) const;
  vertex_type median(const vertex_type& x0, const vertex_type& x1, const vertex_type& x2) const;
  std::vector<vertex_type> neighbors(const vertex_type& v) const;

  /// Vertices at distance <= radius from the identity.
  std::uint64_t ball_count(int radius) const { return ball_size(rank_, radius); }
  vertex_type ball_vertex(std::uint64_t index) const { return word_at(rank_, index); }
  std::size_t ball_diameter(int radius) const { return 2 * static_cast<std::size_t>(radius); }

  std::string format(const vertex_type& v) const { return v.str(); }
  vertex_type parse_vertex(std::string_view text) const { return ReducedWord::parse(text, rank_); }

 private:
  int rank_;
};

/// Explicit finite tree on vertices 0..n-1, validated on construction.
class FiniteTree {
 public:
  using vertex_type = std::uint32_t;
  using Edge = std::pair<vertex_type, vertex_type>;

  /// Throws std::invalid_argument unless the edges form a tree on n vertices.
  FiniteTree(std::size_t n, std::vector<Edge> edges);

  /// Text format: first line `n`, then n-1 lines `u v`.
  static FiniteTree parse(std::istream& in);
  static FiniteTree load(const std::string& path);
  static FiniteTree path_graph(std::size_t n);

  std::size_t size() const { return adjacency_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::string selector() const { return selector_; }
  void set_selector(std::string s) { selector_ = std::move(s); }

  vertex_type base() const { return 0; }
  bool contains(vertex_type v) const { return v < size(); }
  void require(vertex_type v) const;

  std::size_t distance(vertex_type x, vertex_type y) const;
  std::vector<vertex_type> geodesic(vertex_type x, vertex_type y) const;
  vertex_type median(vertex_type x0, vertex_type x1, vertex_type x2) const;
  const std::vector<vertex_type>& neighbors(vertex_type v) const { return adjacency_.at(v); }

  /// Vertices within `radius` of vertex 0 (negative radius: whole tree),
  /// indexed in order of distance from 0, then id.
  std::uint64_t ball_count(int radius) const;
  vertex_type ball_vertex(std::uint64_t index) const { return by_depth_.at(index); }
  std::size_t ball_diameter(int radius) const;

  std::string format(vertex_type v) const { return std::to_string(v); }
  vertex_type parse_vertex(std::string_view text) const;

 private:
  vertex_type lca(vertex_type x, vertex_type y) const;

  std::vector<std::vector<vertex_type>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<vertex_type> parent_;
  std::vector<std::size_t> depth_;
  std::vector<vertex_type> by_depth_;
  std::string selector_;
};

template <class T>
concept TreeBackend = requires(const T& t, const typename T::vertex_type& v) {
  { t.distance(v, v) } -> std::convertible_to<std::size_t>;
  { t.geodesic(v, v) } -> std::same_as<std::vector<typename T::vertex_type>>;
  { t.median(v, v, v) } -> std::same_as<typename T::vertex_type>;
  { t.format(v) } -> std::convertible_to<std::string>;
  { t.ball_count(0) } -> std::convertible_to<std::uint64_t>;
};

using TreeModel = std::variant<CayleyTree, FiniteTree>;

/// `cayley:R` or `file:PATH`.
TreeModel parse_tree_selector(std::string_view selector);

template <TreeBackend Tree>
bool on_geodesic(const Tree& t, const typename Tree::vertex_type& a,
                 const typename Tree::vertex_type& b, const typename Tree::vertex_type& v) {
  return t.distance(a, v) + t.distance(v, b) == t.distance(a, b);
}

/// True iff one geodesic segment contains every vertex of xs.
template <TreeBackend Tree>
bool is_aligned(const Tree& t, std::span<const typename Tree::vertex_type> xs) {
  if (xs.empty()) throw std::invalid_argument("is_aligned: empty tuple");
  // In a tree, a segment containing xs exists iff the farthest pair's does.
  std::size_t best_i = 0, best_j = 0, best_d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const std::size_t d = t.distance(xs[i], xs[j]);
      if (d > best_d) best_i = i, best_j = j, best_d = d;
    }
  }
  return std::all_of(xs.begin(), xs.end(), [&](const auto& v) {
    return on_geodesic(t, xs[best_i], xs[best_j], v);
  });
}

/// Distinct, aligned, and strictly monotone along [x_first, x_last].
template <TreeBackend Tree>
bool is_coherent(const Tree& t, std::span<const typename Tree::vertex_type> xs) {
  if (xs.empty()) throw std::invalid_argument("is_coherent: empty tuple");
  const auto& first = xs.front();
  const auto& last = xs.back();
  std::size_t previous = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!on_geodesic(t, first, last, xs[i])) return false;
    const std::size_t d = t.distance(first, xs[i]);
    if (i > 0 && d <= previous) return false;
    previous = d;
  }
  return true;
}

template <TreeBackend Tree>
typename Tree::vertex_type sample_vertex(const Tree& t, int radius, SplitMix64& rng) {
  return t.ball_vertex(rng.below(t.ball_count(radius)));
}

/// k independent uniform vertices of the radius-ball (repeats allowed).
template <TreeBackend Tree>
std::vector<typename Tree::vertex_type> sample_tuple(const Tree& t, std::size_t k, int radius,
                                                     SplitMix64& rng) {
  std::vector<typename Tree::vertex_type> xs;
  xs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) xs.push_back(sample_vertex(t, radius, rng));
  return xs;
}

/// Two ball vertices at distance >= q, then q+1 sorted positions on their
/// geodesic chosen uniformly without replacement.
template <TreeBackend Tree>
std::vector<typename Tree::vertex_type> sample_coherent(const Tree& t, int q, int radius,
                                                        SplitMix64& rng) {
  if (q < 0) throw std::invalid_argument("sample_coherent: q must be non-negative");
  if (t.ball_diameter(radius) < static_cast<std::size_t>(q)) {
    throw std::invalid_argument("sample_coherent: radius " + std::to_string(radius) +
                                " too small for " + std::to_string(q + 1) +
                                " aligned distinct vertices");
  }
  for (;;) {
    auto u = sample_vertex(t, radius, rng);
    auto v = sample_vertex(t, radius, rng);
    if (t.distance(u, v) < static_cast<std::size_t>(q)) continue;
    auto path = t.geodesic(u, v);
    // Floyd's sampling of q+1 positions out of path.size().
    const std::size_t n = path.size();
    const std::size_t m = static_cast<std::size_t>(q) + 1;
    std::vector<std::size_t> chosen;
    chosen.reserve(m);
    for (std::size_t j = n - m; j < n; ++j) {
      const std::size_t r = rng.below(j + 1);
      if (std::find(chosen.begin(), chosen.end(), r) == chosen.end()) {
        chosen.push_back(r);
      } else {
        chosen.push_back(j);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<typename Tree::vertex_type> xs;
    xs.reserve(m);
    for (std::size_t pos : chosen) xs.push_back(std::move(path[pos]));
    return xs;
  }
}

/// Calls fn on every coherent (q+1)-tuple exactly once, ordered by
/// (first vertex, last vertex, lexicographic interior positions).
void for_each_coherent(const FiniteTree& t, int q,
                       const std::function<void(std::span<const FiniteTree::vertex_type>)>& fn);
std::vector<std::vector<FiniteTree::vertex_type>> enumerate_coherent(const FiniteTree& t, int q);

}  // namespace coblab
