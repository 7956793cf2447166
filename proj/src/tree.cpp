#include "coblab/tree.hpp"

#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

namespace coblab {

CayleyTree::CayleyTree(int rank) : rank_(rank) {
  if (rank < 2 || rank > kMaxRank) {
    throw std::invalid_argument("Cayley tree rank must be in [2, " + std::to_string(kMaxRank) +
                                "], got " + std::to_string(rank));
  }
}

void CayleyTree::require(const vertex_type& v) const {
  if (!contains(v)) {
    throw std::invalid_argument("vertex '" + v.str() + "' is not in " + selector());
  }
}

namespace {

std::size_t common_prefix(const ReducedWord& x, const ReducedWord& y) {
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  return k;
}

ReducedWord prefix(const ReducedWord& x, std::size_t length) {
  return ReducedWord(x.rank(), x.letters().first(length));
}

}  // namespace

std::size_t CayleyTree::distance(const vertex_type& x, const vertex_type& y) const {
  require(x);
  require(y);
  return x.size() + y.size() - 2 * common_prefix(x, y);
}

std::vector<ReducedWord> CayleyTree::geodesic(const vertex_type& x, const vertex_type& y) const {
  require(x);
  require(y);
  const std::size_t k = common_prefix(x, y);
  std::vector<ReducedWord> path;
  path.reserve(x.size() + y.size() - 2 * k + 1);
  for (std::size_t len = x.size(); len > k; --len) path.push_back(prefix(x, len));
  for (std::size_t len = k; len <= y.size(); ++len) path.push_back(prefix(y, len));
  return path;
}

ReducedWord CayleyTree::median(const vertex_type& x0, const vertex_type& x1,
                               const vertex_type& x2) const {
  require(x0);
  require(x1);
  require(x2);
  // Rooted at e, the median is the deepest of the three pairwise meets.
  const std::size_t a = common_prefix(x0, x1);
  const std::size_t b = common_prefix(x1, x2);
  const std::size_t c = common_prefix(x0, x2);
  if (a >= b && a >= c) return prefix(x0, a);
  if (b >= c) return prefix(x1, b);
  return prefix(x0, c);
}

std::vector<ReducedWord> CayleyTree::neighbors(const vertex_type& v) const {
  require(v);
  std::vector<ReducedWord> out;
  out.reserve(2 * static_cast<std::size_t>(rank_));
  for (int key = 0; key < 2 * rank_; ++key) {
    const Letter l = Letter::from_order_key(key);
    out.push_back(v * ReducedWord(rank_, std::span<const Letter>(&l, 1)));
  }
  return out;
}

FiniteTree::FiniteTree(std::size_t n, std::vector<Edge> edges)
    : adjacency_(n), edges_(std::move(edges)) {
  if (n == 0) throw std::invalid_argument("finite tree must have at least one vertex");
  if (n > 0xFFFFFFFFull) throw std::invalid_argument("finite tree too large");
  if (edges_.size() != n - 1) {
    throw std::invalid_argument("a tree on " + std::to_string(n) + " vertices needs " +
                                std::to_string(n - 1) + " edges, got " +
                                std::to_string(edges_.size()));
  }
  for (const auto& [u, v] : edges_) {
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge " + std::to_string(u) + " " + std::to_string(v) +
                                  " references a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  constexpr vertex_type kUnseen = 0xFFFFFFFFu;
  parent_.assign(n, kUnseen);
  depth_.assign(n, 0);
  by_depth_.reserve(n);
  std::queue<vertex_type> frontier;
  parent_[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const vertex_type u = frontier.front();
    frontier.pop();
    by_depth_.push_back(u);
    for (vertex_type v : adjacency_[u]) {
      if (parent_[v] != kUnseen) continue;
      parent_[v] = u;
      depth_[v] = depth_[u] + 1;
      frontier.push(v);
    }
  }
  if (by_depth_.size() != n) {
    throw std::invalid_argument("edges do not connect all " + std::to_string(n) + " vertices");
  }
  std::stable_sort(by_depth_.begin(), by_depth_.end(), [&](vertex_type a, vertex_type b) {
    return depth_[a] != depth_[b] ? depth_[a] < depth_[b] : a < b;
  });
  selector_ = "finite:" + std::to_string(n);
}

FiniteTree FiniteTree::parse(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> FiniteTree {
    throw std::invalid_argument("tree file line " + std::to_string(line_no) + ": " + what);
  };
  auto read_uint = [&](std::istringstream& ls, unsigned long long& out) {
    std::string tok;
    if (!(ls >> tok)) return false;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
  };

  if (!next_line()) return fail("missing vertex count");
  unsigned long long n = 0;
  {
    std::istringstream ls(line);
    std::string rest;
    if (!read_uint(ls, n) || (ls >> rest)) return fail("expected a single vertex count");
  }
  if (n == 0) return fail("vertex count must be positive");
  std::vector<Edge> edges;
  for (unsigned long long i = 0; i + 1 < n; ++i) {
    if (!next_line()) return fail("expected " + std::to_string(n - 1) + " edges, got " +
                                  std::to_string(i));
    std::istringstream ls(line);
    unsigned long long u = 0, v = 0;
    std::string rest;
    if (!read_uint(ls, u) || !read_uint(ls, v) || (ls >> rest)) return fail("expected `u v`");
    if (u >= n || v >= n) return fail("vertex out of range");
    edges.emplace_back(static_cast<vertex_type>(u), static_cast<vertex_type>(v));
  }
  if (next_line()) return fail("unexpected trailing content");
  return FiniteTree(static_cast<std::size_t>(n), std::move(edges));
}

FiniteTree FiniteTree::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file '" + path + "'");
  FiniteTree t = parse(in);
  t.selector_ = "file:" + path;
  return t;
}

FiniteTree FiniteTree::path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<vertex_type>(i), static_cast<vertex_type>(i + 1));
  }
  FiniteTree t(n, std::move(edges));
  t.selector_ = "path:" + std::to_string(n);
  return t;
}

void FiniteTree::require(vertex_type v) const {
  if (!contains(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not in a tree with " +
                                std::to_string(size()) + " vertices");
  }
}

FiniteTree::vertex_type FiniteTree::lca(vertex_type x, vertex_type y) const {
  while (depth_[x] > depth_[y]) x = parent_[x];
  while (depth_[y] > depth_[x]) y = parent_[y];
  while (x != y) {
    x = parent_[x];
    y = parent_[y];
  }
  return x;
}

std::size_t FiniteTree::distance(vertex_type x, vertex_type y) const {
  require(x);
  require(y);
  return depth_[x] + depth_[y] - 2 * depth_[lca(x, y)];
}

std::vector<FiniteTree::vertex_type> FiniteTree::geodesic(vertex_type x, vertex_type y) const {
  require(x);
  require(y);
  const vertex_type meet = lca(x, y);
  std::vector<vertex_type> path;
  for (vertex_type v = x; v != meet; v = parent_[v]) path.push_back(v);
  path.push_back(meet);
  const std::size_t mark = path.size();
  for (vertex_type v = y; v != meet; v = parent_[v]) path.push_back(v);
  std::reverse(path.begin() + static_cast<std::ptrdiff_t>(mark), path.end());
  return path;
}

FiniteTree::vertex_type FiniteTree::median(vertex_type x0, vertex_type x1, vertex_type x2) const {
  require(x0);
  require(x1);
  require(x2);
  const vertex_type a = lca(x0, x1);
  const vertex_type b = lca(x1, x2);
  const vertex_type c = lca(x0, x2);
  if (depth_[a] >= depth_[b] && depth_[a] >= depth_[c]) return a;
  return depth_[b] >= depth_[c] ? b : c;
}

std::uint64_t FiniteTree::ball_count(int radius) const {
  if (radius < 0) return size();
  return static_cast<std::uint64_t>(
      std::upper_bound(by_depth_.begin(), by_depth_.end(), static_cast<std::size_t>(radius),
                       [&](std::size_t r, vertex_type v) { return r < depth_[v]; }) -
      by_depth_.begin());
}

std::size_t FiniteTree::ball_diameter(int radius) const {
  const std::uint64_t count = ball_count(radius);
  // The ball around 0 is a subtree, so a double sweep finds its diameter.
  auto farthest = [&](vertex_type from) {
    vertex_type best = from;
    std::size_t best_d = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::size_t d = distance(from, by_depth_[i]);
      if (d > best_d) best = by_depth_[i], best_d = d;
    }
    return std::pair{best, best_d};
  };
  return farthest(farthest(0).first).second;
}

FiniteTree::vertex_type FiniteTree::parse_vertex(std::string_view text) const {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("invalid vertex id '" + std::string(text) + "'");
  }
  if (v >= size()) {
    throw std::invalid_argument("vertex " + std::string(text) + " is not in a tree with " +
                                std::to_string(size()) + " vertices");
  }
  return static_cast<vertex_type>(v);
}

TreeModel parse_tree_selector(std::string_view selector) {
  if (selector.starts_with("cayley:")) {
    const std::string_view digits = selector.substr(7);
    int rank = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw std::invalid_argument("invalid rank in tree selector '" + std::string(selector) + "'");
    }
    return CayleyTree(rank);
  }
  if (selector.starts_with("file:")) {
    return FiniteTree::load(std::string(selector.substr(5)));
  }
  throw std::invalid_argument("tree selector must be cayley:R or file:PATH, got '" +
                              std::string(selector) + "'");
}

void for_each_coherent(const FiniteTree& t, int q,
                       const std::function<void(std::span<const FiniteTree::vertex_type>)>& fn) {
  using V = FiniteTree::vertex_type;
  if (q < 0) throw std::invalid_argument("for_each_coherent: q must be non-negative");
  const auto n = static_cast<V>(t.size());
  if (q == 0) {
    for (V v = 0; v < n; ++v) fn(std::span<const V>(&v, 1));
    return;
  }
  const auto need = static_cast<std::size_t>(q);
  std::vector<V> tuple(need + 1);
  std::vector<std::size_t> pick(need - 1);
  for (V a = 0; a < n; ++a) {
    for (V b = 0; b < n; ++b) {
      if (a == b || t.distance(a, b) < need) continue;
      const auto path = t.geodesic(a, b);
      const std::size_t interior = path.size() - 2;
      // Lexicographic (q-1)-combinations of interior positions 1..interior.
      for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i + 1;
      for (;;) {
        tuple.front() = a;
        tuple.back() = b;
        for (std::size_t i = 0; i < pick.size(); ++i) tuple[i + 1] = path[pick[i]];
        fn(tuple);
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == interior - (pick.size() - i)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
}

std::vector<std::vector<FiniteTree::vertex_type>> enumerate_coherent(const FiniteTree& t, int q) {
  std::vector<std::vector<FiniteTree::vertex_type>> out;
  for_each_coherent(t, q, [&](std::span<const FiniteTree::vertex_type> xs) {
    out.emplace_back(xs.begin(), xs.end());
  });
  return out;
}

}  // namespace coblab
