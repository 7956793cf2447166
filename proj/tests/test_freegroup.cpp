#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "coblab/freegroup.hpp"
#include "coblab/random.hpp"

using namespace coblab;

namespace {

// String-level oracles, independent of the library's letter machinery.

char flip(char c) { return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c)); }

std::string oracle_reduce(std::string s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == flip(s[i + 1])) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

std::string oracle_inverse(const std::string& s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) c = flip(c);
  return out;
}

long oracle_count(const std::string& w, const std::string& g) {
  long n = 0;
  for (std::size_t pos = g.find(w); pos != std::string::npos; pos = g.find(w, pos + 1)) ++n;
  return n;
}

long oracle_f(const std::string& w, const std::string& g) {
  return oracle_count(w, g) - oracle_count(w, oracle_inverse(g));
}

// Every reduced string of length <= radius over a, A, b, B, ..., sorted
// length-lexicographically with a < A < b < B.
std::vector<std::string> oracle_ball(int rank, int radius) {
  std::string alphabet;
  for (int i = 0; i < rank; ++i) {
    alphabet += static_cast<char>('a' + i);
    alphabet += static_cast<char>('A' + i);
  }
  std::vector<std::string> layer{""}, all{""};
  for (int n = 1; n <= radius; ++n) {
    std::vector<std::string> next;
    for (const auto& s : layer) {
      for (char c : alphabet) {
        std::string t = s + c;
        if (oracle_reduce(t) == t) next.push_back(t);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  auto key = [&](const std::string& s) {
    std::vector<std::size_t> k{s.size()};
    for (char c : s) k.push_back(alphabet.find(c));
    return k;
  };
  std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return all;
}

std::string random_word(SplitMix64& rng, int rank, std::size_t max_len) {
  std::string s;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    const auto k = rng.below(2 * static_cast<std::uint64_t>(rank));
    s += static_cast<char>((k % 2 ? 'A' : 'a') + k / 2);
  }
  return s;
}

ReducedWord W(const char* s, int rank = 2) { return ReducedWord::parse(s, rank); }

}  // namespace

TEST_CASE("parse reduces on ingestion and round-trips") {
  CHECK(W("abBA").str() == "");
  CHECK(W("aAb").str() == "b");
  CHECK(W("").empty());
  CHECK(W("ab").size() == 2);
  CHECK(W("abc", 3).str() == "abc");
  CHECK_THROWS_AS(W("abc", 2), std::invalid_argument);
  CHECK_THROWS_AS(W("a1"), std::invalid_argument);
  CHECK_THROWS_AS(ReducedWord::parse("a", 0), std::invalid_argument);
}

TEST_CASE("multiply examples") {
  CHECK((W("ab") * W("BA")).str() == "");
  CHECK((W("ab") * W("ba")).str() == "abba");
  CHECK((W("ab", 3) * W("Bc", 3)).str() == "ac");
  CHECK_THROWS_AS(W("ab", 2) * W("ab", 3), std::invalid_argument);
}

TEST_CASE("multiply agrees with the string reduction oracle") {
  SplitMix64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::string g = random_word(rng, 3, 10);
    const std::string h = random_word(rng, 3, 10);
    CHECK((W(g.c_str(), 3) * W(h.c_str(), 3)).str() == oracle_reduce(oracle_reduce(g) + oracle_reduce(h)));
  }
}

TEST_CASE("group laws on ball(3)") {
  const auto ball = ball_words(2, 3);
  const ReducedWord e(2);
  for (const auto& g : ball) {
    CHECK(g * e == g);
    CHECK(e * g == g);
    CHECK((g * g.inverse()).empty());
    CHECK(g.inverse().str() == oracle_inverse(g.str()));
  }
  // Associativity on all triples is 53^3 products; sample a deterministic slice.
  for (std::size_t i = 0; i < ball.size(); i += 1) {
    for (std::size_t j = 0; j < ball.size(); j += 3) {
      for (std::size_t k = 0; k < ball.size(); k += 5) {
        REQUIRE((ball[i] * ball[j]) * ball[k] == ball[i] * (ball[j] * ball[k]));
      }
    }
  }
}

TEST_CASE("count_occurrences examples and errors") {
  CHECK(count_occurrences(W("aa"), W("aaa")) == 2);
  CHECK(count_occurrences(W("ab"), W("abab")) == 2);
  CHECK(count_occurrences(W("ab"), W("")) == 0);
  CHECK(count_occurrences(W("abab"), W("ab")) == 0);
  CHECK_THROWS_AS(count_occurrences(W(""), W("ab")), std::invalid_argument);
}

TEST_CASE("count_occurrences matches the naive scanner") {
  SplitMix64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    std::string w = oracle_reduce(random_word(rng, 2, 4));
    if (w.empty()) w = "a";
    const std::string g = oracle_reduce(random_word(rng, 2, 14));
    REQUIRE(count_occurrences(W(w.c_str()), W(g.c_str())) == static_cast<std::uint64_t>(oracle_count(w, g)));
  }
}

TEST_CASE("brooks_value examples") {
  CHECK(brooks_value(W("ab"), W("abab")) == 2);
  CHECK(brooks_value(W("ab"), W("")) == 0);
  CHECK(brooks_value(W("ab"), W("BABA")) == -2);
  CHECK_THROWS_AS(brooks_value(W(""), W("ab")), std::invalid_argument);
}

TEST_CASE("brooks_value antisymmetry and the occurrence identity") {
  SplitMix64 rng(3);
  for (int i = 0; i < 3000; ++i) {
    std::string ws = oracle_reduce(random_word(rng, 2, 4));
    if (ws.empty()) ws = "ab";
    const ReducedWord w = W(ws.c_str());
    const ReducedWord g = W(random_word(rng, 2, 12).c_str());
    CHECK(brooks_value(w, g.inverse()) == -brooks_value(w, g));
    CHECK(count_occurrences(w, g.inverse()) == count_occurrences(w.inverse(), g));
    CHECK(brooks_value(w, g) == oracle_f(w.str(), g.str()));
  }
}

TEST_CASE("ball enumeration") {
  CHECK(ball_size(2, 0) == 1);
  CHECK(ball_size(2, 1) == 5);
  CHECK(ball_size(2, 2) == 17);
  CHECK(ball_size(1, 3) == 7);
  for (int r = 0; r <= 5; ++r) {
    // 1 + 2r((2r-1)^radius - 1)/(2r-2) at rank 2.
    std::uint64_t p = 1;
    for (int i = 0; i < r; ++i) p *= 3;
    CHECK(ball_size(2, r) == 1 + 4 * (p - 1) / 2);
  }
  for (int rank = 1; rank <= 3; ++rank) {
    for (int r = 0; r <= 4; ++r) {
      const auto expected = oracle_ball(rank, r);
      std::vector<std::string> got;
      for (const auto& w : Ball(rank, r)) got.push_back(w.str());
      REQUIRE(got == expected);
      for (std::size_t i = 0; i < expected.size(); ++i) REQUIRE(word_at(rank, i).str() == expected[i]);
    }
  }
  CHECK_THROWS_AS(Ball(2, -1), std::invalid_argument);
}

TEST_CASE("defect_search against the exhaustive oracle") {
  // Frozen from a brute-force string oracle over ball(4)^2.
  const auto ab = defect_search(W("ab"), 4);
  CHECK(ab.max == 1);
  CHECK(ab.g.str() == "a");
  CHECK(ab.h.str() == "b");
  const auto abA = defect_search(W("abA"), 4);
  CHECK(abA.max == 2);
  CHECK(abA.g.str() == "abA");
  CHECK(abA.h.str() == "abA");
  CHECK(defect_search(W("a"), 3).max == 0);
  CHECK_THROWS_AS(defect_search(W(""), 3), std::invalid_argument);

  // Live comparison on a smaller ball, including the witness tie-break.
  const auto ball = oracle_ball(2, 3);
  for (const char* ws : {"ab", "aab", "abA", "ba"}) {
    long best = -1;
    std::string bg, bh;
    for (const auto& g : ball) {
      for (const auto& h : ball) {
        const long d = std::labs(oracle_f(ws, oracle_reduce(g + h)) - oracle_f(ws, g) - oracle_f(ws, h));
        if (d > best) best = d, bg = g, bh = h;
      }
    }
    for (unsigned workers : {1u, 3u}) {
      const auto r = defect_search(W(ws), 3, workers);
      CHECK(r.max == best);
      CHECK(r.g.str() == bg);
      CHECK(r.h.str() == bh);
    }
  }
}

TEST_CASE("defect bound 3(|w|-1) on ball(4)") {
  for (const auto& w : ball_words(2, 3)) {
    if (w.empty()) continue;
    CHECK(defect_search(w, 4).max <= 3 * (static_cast<long>(w.size()) - 1));
  }
}

TEST_CASE("ordering is length-lexicographic with a < A < b < B") {
  CHECK(W("a") < W("A"));
  CHECK(W("A") < W("b"));
  CHECK(W("B") < W("aa"));
  CHECK(W("") < W("a"));
  std::set<ReducedWord> s{W("b"), W("a"), W("")};
  CHECK(s.begin()->empty());
}
