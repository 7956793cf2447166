#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "coblab/tree.hpp"

using namespace coblab;

namespace {

using U = FiniteTree::vertex_type;

ReducedWord W(const char* s) { return ReducedWord::parse(s, 2); }

template <class V>
std::span<const V> S(const std::vector<V>& v) {
  return v;
}

// Ball of the Cayley tree as an explicit tree: vertex i is word_at(i), and
// each nonempty word hangs off its prefix.
struct EmbeddedBall {
  FiniteTree tree;
  std::vector<ReducedWord> words;
  std::unordered_map<ReducedWord, U> index;
};

EmbeddedBall embed_ball(int radius) {
  auto words = ball_words(2, radius);
  std::unordered_map<ReducedWord, U> index;
  for (U i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  std::vector<FiniteTree::Edge> edges;
  for (U i = 1; i < words.size(); ++i) {
    const auto letters = words[i].letters();
    edges.emplace_back(index.at(ReducedWord(2, letters.first(letters.size() - 1))), i);
  }
  FiniteTree tree(words.size(), std::move(edges));
  return {std::move(tree), std::move(words), std::move(index)};
}

// Plain BFS over the adjacency lists, independent of the LCA machinery.
std::vector<U> bfs_geodesic(const FiniteTree& t, U x, U y) {
  std::vector<U> parent(t.size(), static_cast<U>(-1));
  std::queue<U> queue;
  queue.push(x);
  parent[x] = x;
  while (!queue.empty()) {
    const U u = queue.front();
    queue.pop();
    for (U v : t.neighbors(u)) {
      if (parent[v] == static_cast<U>(-1)) parent[v] = u, queue.push(v);
    }
  }
  std::vector<U> path{y};
  while (path.back() != x) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// The vertex common to all three geodesics, found by intersection.
template <class Tree>
std::vector<typename Tree::vertex_type> brute_median(const Tree& t, const typename Tree::vertex_type& a,
                                                     const typename Tree::vertex_type& b,
                                                     const typename Tree::vertex_type& c) {
  using V = typename Tree::vertex_type;
  auto g1 = t.geodesic(a, b), g2 = t.geodesic(b, c), g3 = t.geodesic(a, c);
  std::vector<V> out;
  for (const auto& v : g1) {
    if (std::find(g2.begin(), g2.end(), v) != g2.end() && std::find(g3.begin(), g3.end(), v) != g3.end()) {
      out.push_back(v);
    }
  }
  return out;
}

FiniteTree star(std::size_t leaves) {
  std::vector<FiniteTree::Edge> edges;
  for (U i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return FiniteTree(leaves + 1, edges);
}

FiniteTree parse_text(const std::string& text) {
  std::istringstream in(text);
  return FiniteTree::parse(in);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("Cayley geodesic examples") {
  const CayleyTree t(2);
  CHECK(t.geodesic(W("a"), W("a")) == std::vector{W("a")});
  CHECK(t.geodesic(W("a"), W("b")) == std::vector{W("a"), W(""), W("b")});
  CHECK(t.distance(W("ab"), W("aB")) == 2);
  CHECK(t.geodesic(W("aba"), W("abB")) == std::vector{W("aba"), W("ab"), W("abB")});
  CHECK_THROWS_AS(CayleyTree(1), std::invalid_argument);
  CHECK_THROWS_AS(t.require(ReducedWord::parse("c", 3)), std::invalid_argument);
}

TEST_CASE("median examples") {
  const CayleyTree t(2);
  CHECK(t.median(W("a"), W("b"), W("")) == W(""));
  CHECK(t.median(W("ab"), W("ab"), W("B")) == W("ab"));
  CHECK(t.median(W("ab"), W("aB"), W("")) == W("a"));
  const auto p = FiniteTree::path_graph(3);
  CHECK(p.geodesic(0, 2) == std::vector<U>{0, 1, 2});
  CHECK(p.median(0, 0, 2) == 0);
}

TEST_CASE("alignment and coherence examples") {
  const CayleyTree t(2);
  const std::vector<ReducedWord> a{W(""), W("a"), W("ab")};
  const std::vector<ReducedWord> b{W("a"), W(""), W("b"), W("ba")};
  // [b, ab] runs b, e, a, ab, so this "tripod" is in fact aligned.
  const std::vector<ReducedWord> c{W("a"), W("b"), W("ab")};
  const std::vector<ReducedWord> tripod{W("a"), W("b"), W("B")};
  CHECK(is_aligned(t, S(a)));
  CHECK(is_aligned(t, S(b)));
  CHECK(is_aligned(t, S(c)));
  CHECK_FALSE(is_coherent(t, S(c)));
  CHECK_FALSE(is_aligned(t, S(tripod)));
  CHECK(is_coherent(t, S(a)));
  CHECK(is_coherent(t, S(std::vector{W("ab"), W("a"), W("")})));
  CHECK_FALSE(is_coherent(t, S(std::vector{W(""), W("ab"), W("a")})));
  CHECK(is_coherent(t, S(b)));
  CHECK_FALSE(is_coherent(t, S(std::vector{W("a"), W("a")})));
  CHECK(is_coherent(t, S(std::vector{W("a")})));
}

TEST_CASE("geodesics and medians agree with brute force on embedded balls") {
  for (int radius = 1; radius <= 4; ++radius) {
    const auto ball = embed_ball(radius);
    const CayleyTree cayley(2);
    const auto& t = ball.tree;
    SplitMix64 rng(static_cast<std::uint64_t>(radius));
    for (int i = 0; i < 400; ++i) {
      const U x = static_cast<U>(rng.below(t.size()));
      const U y = static_cast<U>(rng.below(t.size()));
      const U z = static_cast<U>(rng.below(t.size()));
      const auto bfs = bfs_geodesic(t, x, y);
      REQUIRE(t.geodesic(x, y) == bfs);
      std::vector<U> mapped;
      for (const auto& w : cayley.geodesic(ball.words[x], ball.words[y])) mapped.push_back(ball.index.at(w));
      REQUIRE(mapped == bfs);
      REQUIRE(t.distance(x, y) == bfs.size() - 1);

      const auto m = brute_median(t, x, y, z);
      REQUIRE(m.size() == 1);
      CHECK(t.median(x, y, z) == m.front());
      CHECK(ball.index.at(cayley.median(ball.words[x], ball.words[y], ball.words[z])) == m.front());
    }
  }
}

TEST_CASE("geodesic reversal and median symmetry") {
  const CayleyTree t(2);
  SplitMix64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto x = sample_vertex(t, 5, rng), y = sample_vertex(t, 5, rng), z = sample_vertex(t, 5, rng);
    auto g = t.geodesic(x, y);
    std::reverse(g.begin(), g.end());
    CHECK(g == t.geodesic(y, x));
    const auto c = t.median(x, y, z);
    CHECK(c == t.median(z, x, y));
    CHECK(c == t.median(y, x, z));
    CHECK(on_geodesic(t, x, y, c));
    CHECK(on_geodesic(t, y, z, c));
    CHECK(on_geodesic(t, x, z, c));
  }
}

TEST_CASE("sample_coherent yields coherent tuples closed under faces and reversal") {
  const CayleyTree t(2);
  for (int q = 0; q <= 5; ++q) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      auto rng = SplitMix64::substream(42, s);
      const auto x = sample_coherent(t, q, 6, rng);
      REQUIRE(x.size() == static_cast<std::size_t>(q + 1));
      REQUIRE(is_coherent(t, S(x)));
      REQUIRE(is_aligned(t, S(x)));
      std::vector<ReducedWord> r(x.rbegin(), x.rend());
      CHECK(is_coherent(t, S(r)));
      for (std::size_t i = 0; i < x.size() && x.size() > 1; ++i) {
        auto face = x;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK(is_coherent(t, S(face)));
      }
    }
  }
  SplitMix64 rng(1);
  CHECK_THROWS_AS(sample_coherent(t, 5, 2, rng), std::invalid_argument);
}

TEST_CASE("sample_coherent on a path graph picks a monotone subset") {
  const auto p = FiniteTree::path_graph(9);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto rng = SplitMix64::substream(42, s);
    const auto x = sample_coherent(p, 4, -1, rng);
    CHECK((std::is_sorted(x.begin(), x.end()) || std::is_sorted(x.rbegin(), x.rend())));
    CHECK(std::set<U>(x.begin(), x.end()).size() == 5);
  }
}

TEST_CASE("enumerate_coherent examples") {
  const auto p3 = FiniteTree::path_graph(3);
  CHECK(enumerate_coherent(p3, 2) == std::vector<std::vector<U>>{{0, 1, 2}, {2, 1, 0}});
  CHECK(enumerate_coherent(star(3), 3).empty());
  CHECK(enumerate_coherent(star(3), 0).size() == 4);
  CHECK(enumerate_coherent(FiniteTree::path_graph(6), 4).size() == 12);
}

TEST_CASE("enumerate_coherent matches a brute-force filter of V^(q+1)") {
  // A small caterpillar with a branch, plus a path and a star.
  const std::vector<FiniteTree> trees{
      FiniteTree(7, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {2, 6}}),
      FiniteTree::path_graph(5),
      star(4),
  };
  for (const auto& t : trees) {
    for (int q = 0; q <= 4; ++q) {
      std::vector<std::vector<U>> brute;
      std::vector<U> x(static_cast<std::size_t>(q + 1), 0);
      for (;;) {
        if (is_coherent(t, S(x))) brute.push_back(x);
        std::size_t k = x.size();
        while (k > 0 && ++x[k - 1] == t.size()) x[--k] = 0;
        if (k == 0) break;
      }
      auto got = enumerate_coherent(t, q);
      std::set<std::vector<U>> got_set(got.begin(), got.end());
      CHECK(got_set.size() == got.size());
      CHECK(got_set == std::set<std::vector<U>>(brute.begin(), brute.end()));
    }
  }
  // Path graphs: two orientations of every (q+1)-subset.
  for (std::size_t n = 1; n <= 9; ++n) {
    for (int q = 1; q <= 5; ++q) {
      CHECK(enumerate_coherent(FiniteTree::path_graph(n), q).size() == 2 * binomial(n, q + 1));
    }
  }
}

TEST_CASE("finite tree parsing rejects malformed input") {
  CHECK(parse_text("3\n0 1\n1 2\n").size() == 3);
  CHECK(parse_text("1\n").size() == 1);
  CHECK(parse_text("  4\n0 1\n\n1 2\n 1 3 \n").size() == 4);
  CHECK_THROWS_AS(parse_text(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_text("0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text("3\n0 1\n"), std::invalid_argument);            // too few edges
  CHECK_THROWS_AS(parse_text("3\n0 1\n1 2\n2 0\n"), std::invalid_argument);  // too many
  CHECK_THROWS_AS(parse_text("4\n0 1\n1 0\n2 3\n"), std::invalid_argument);  // cycle, disconnected
  CHECK_THROWS_AS(parse_text("3\n0 1\n1 3\n"), std::invalid_argument);       // out of range
  CHECK_THROWS_AS(parse_text("3\n0 0\n1 2\n"), std::invalid_argument);       // loop
  CHECK_THROWS_AS(parse_text("3\n0 x\n1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text("3\n0 1 2\n1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text("2\n-1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteTree::load(COBLAB_TEST_DATA "/does-not-exist.tree"), std::runtime_error);
}

TEST_CASE("tree selectors") {
  CHECK(std::holds_alternative<CayleyTree>(parse_tree_selector("cayley:2")));
  CHECK(std::get<CayleyTree>(parse_tree_selector("cayley:3")).rank() == 3);
  const auto f = parse_tree_selector("file:" COBLAB_TEST_DATA "/path6.tree");
  REQUIRE(std::holds_alternative<FiniteTree>(f));
  CHECK(std::get<FiniteTree>(f).size() == 6);
  for (const char* bad : {"", "cayley:", "cayley:1", "cayley:x", "cayley:2x", "tree:2"}) {
    CHECK_THROWS_AS(parse_tree_selector(bad), std::invalid_argument);
  }
  CHECK_THROWS(parse_tree_selector("file:"));
}

TEST_CASE("finite ball helpers") {
  const auto t = FiniteTree(6, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}});
  CHECK(t.ball_count(0) == 1);
  CHECK(t.ball_count(1) == 3);
  CHECK(t.ball_count(-1) == 6);
  CHECK(t.ball_diameter(-1) == 5);
  CHECK(t.ball_diameter(1) == 2);
  CHECK(t.parse_vertex("5") == 5);
  CHECK_THROWS_AS(t.parse_vertex("6"), std::invalid_argument);
  CHECK_THROWS_AS(t.parse_vertex("a"), std::invalid_argument);
}
