#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coblab/freegroup.hpp"
#include "coblab/rational.hpp"
#include "coblab/tree.hpp"

namespace coblab {

/// A backtrack-free edge path. In a tree such a path is the geodesic between
/// its endpoints, so the endpoints and the edge count identify it.
template <class V>
struct Path {
  V from;
  V to;
  std::size_t length = 0;

  Path reverse() const { return {to, from, length}; }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// Canonical when the vertex sequence is below its reverse, which for paths
/// of positive length reduces to from < to.
template <class V>
bool is_canonical(const Path<V>& p) {
  return p.from < p.to;
}

template <class V>
std::pair<Path<V>, int> canonicalize(const Path<V>& p) {
  if (p.length == 0 || p.from == p.to) throw std::invalid_argument("path of length zero");
  if (is_canonical(p)) return {p, 1};
  return {p.reverse(), -1};
}

/// Sorted, zero-free sparse vector with exact coefficients.
template <class Key>
class SparseVector {
 public:
  using Entry = std::pair<Key, Rational>;

  SparseVector() = default;

  static SparseVector from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    v.entries_.reserve(entries.size());
    for (auto& e : entries) {
      if (!v.entries_.empty() && v.entries_.back().first == e.first) {
        v.entries_.back().second += e.second;
      } else {
        if (!v.entries_.empty() && v.entries_.back().second == 0) v.entries_.pop_back();
        v.entries_.push_back(std::move(e));
      }
    }
    if (!v.entries_.empty() && v.entries_.back().second == 0) v.entries_.pop_back();
    return v;
  }

  /// Caller guarantees keys strictly increasing and coefficients nonzero.
  static SparseVector from_sorted(std::vector<Entry> entries) {
    SparseVector v;
    v.entries_ = std::move(entries);
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  Rational coefficient(const Key& key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, const Key& k) { return e.first < k; });
    return it != entries_.end() && it->first == key ? it->second : Rational(0);
  }

  SparseVector combined(const SparseVector& other, const Rational& factor) const {
    SparseVector out;
    out.entries_.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.entries_.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        out.entries_.emplace_back(b->first, factor * b->second);
        ++b;
      } else {
        Rational c = a->second + factor * b->second;
        if (c != 0) out.entries_.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    return out;
  }

  SparseVector scaled(const Rational& factor) const {
    if (factor == 0) return {};
    SparseVector out = *this;
    for (auto& e : out.entries_) e.second *= factor;
    return out;
  }

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    return a.combined(b, Rational(1));
  }
  friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
    return a.combined(b, Rational(-1));
  }
  friend SparseVector operator-(const SparseVector& a) { return a.scaled(Rational(-1)); }
  friend SparseVector operator*(const Rational& c, const SparseVector& a) { return a.scaled(c); }
  SparseVector& operator+=(const SparseVector& b) { return *this = *this + b; }
  SparseVector& operator-=(const SparseVector& b) { return *this = *this - b; }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }

  /// Smallest key where the two vectors differ.
  friend std::optional<Key> first_difference(const SparseVector& a, const SparseVector& b) {
    auto x = a.entries_.begin();
    auto y = b.entries_.begin();
    while (x != a.entries_.end() || y != b.entries_.end()) {
      if (y == b.entries_.end() || (x != a.entries_.end() && x->first < y->first)) return x->first;
      if (x == a.entries_.end() || y->first < x->first) return y->first;
      if (x->second != y->second) return x->first;
      ++x;
      ++y;
    }
    return std::nullopt;
  }

 private:
  std::vector<Entry> entries_;
};

/// Finitely supported element of the path module, stored on canonical paths;
/// the coefficient of a non-canonical path is minus that of its reverse.
template <class V>
class PathVector : public SparseVector<Path<V>> {
 public:
  using Base = SparseVector<Path<V>>;
  using Base::Base;
  PathVector(Base b) : Base(std::move(b)) {}  // NOLINT: implicit lift of sums

  /// Accepts paths in either orientation.
  static PathVector from_terms(std::vector<std::pair<Path<V>, Rational>> terms) {
    for (auto& [p, c] : terms) {
      auto [canon, sign] = canonicalize(p);
      p = std::move(canon);
      if (sign < 0) c = -c;
    }
    return Base::from_entries(std::move(terms));
  }

  Rational at(const Path<V>& p) const {
    auto [canon, sign] = canonicalize(p);
    Rational c = this->coefficient(canon);
    return sign < 0 ? Rational(-c) : c;
  }
};

template <class V>
using PathPair = std::pair<Path<V>, Path<V>>;

/// Finitely supported element of the algebraic tensor square, keyed on pairs
/// of canonical paths; each slot obeys the reversal sign rule independently.
template <class V>
class TensorVector : public SparseVector<PathPair<V>> {
 public:
  using Base = SparseVector<PathPair<V>>;
  using Base::Base;
  TensorVector(Base b) : Base(std::move(b)) {}  // NOLINT

  static TensorVector from_terms(std::vector<std::pair<PathPair<V>, Rational>> terms) {
    for (auto& [pp, c] : terms) {
      auto [p1, s1] = canonicalize(pp.first);
      auto [p2, s2] = canonicalize(pp.second);
      pp = {std::move(p1), std::move(p2)};
      if (s1 * s2 < 0) c = -c;
    }
    return Base::from_entries(std::move(terms));
  }

  Rational at(const Path<V>& p1, const Path<V>& p2) const {
    auto [c1, s1] = canonicalize(p1);
    auto [c2, s2] = canonicalize(p2);
    Rational c = this->coefficient({std::move(c1), std::move(c2)});
    return s1 * s2 < 0 ? Rational(-c) : c;
  }
};

template <class V>
TensorVector<V> tensor_product(const PathVector<V>& a, const PathVector<V>& b) {
  std::vector<std::pair<PathPair<V>, Rational>> entries;
  entries.reserve(a.size() * b.size());
  for (const auto& [p1, c1] : a.entries()) {
    for (const auto& [p2, c2] : b.entries()) entries.push_back({{p1, p2}, c1 * c2});
  }
  // Both factors are sorted, so the nested loop is already in key order.
  return TensorVector<V>::Base::from_sorted(std::move(entries));
}

/// Every sub-path of [x0, x1] with coefficient +1 in the geodesic orientation.
template <TreeBackend Tree>
PathVector<typename Tree::vertex_type> eta(const Tree& t, const typename Tree::vertex_type& x0,
                                           const typename Tree::vertex_type& x1) {
  using V = typename Tree::vertex_type;
  const auto g = t.geodesic(x0, x1);
  std::vector<std::pair<Path<V>, Rational>> terms;
  terms.reserve(g.size() * (g.size() - 1) / 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) terms.push_back({{g[i], g[j], j - i}, Rational(1)});
  }
  return PathVector<V>::from_terms(std::move(terms));
}

/// Sum over lengths n of (1/n!) times the l1 mass on canonical paths of length n.
template <class V>
Rational weighted_norm(const SparseVector<Path<V>>& v) {
  Rational total = 0;
  for (const auto& [p, c] : v.entries()) total += abs(c) * inverse_factorial(static_cast<int>(p.length));
  return total;
}

/// Projective-norm upper bound from the support decomposition.
template <class V>
Rational tensor_bound(const SparseVector<PathPair<V>>& v) {
  Rational total = 0;
  for (const auto& [pp, c] : v.entries()) {
    total += abs(c) * inverse_factorial(static_cast<int>(pp.first.length)) *
             inverse_factorial(static_cast<int>(pp.second.length));
  }
  return total;
}

/// Word read along a Cayley-tree path.
inline ReducedWord label(const Path<ReducedWord>& p) { return p.from.inverse() * p.to; }

/// +1 if w labels p, -1 if w labels the reverse of p, 0 otherwise.
inline int lambda_on_path(const ReducedWord& w, const Path<ReducedWord>& p) {
  if (w.empty()) throw std::invalid_argument("lambda: empty word");
  if (p.length != w.size()) return 0;
  const ReducedWord l = label(p);
  if (l == w) return 1;
  if (l == w.inverse()) return -1;
  return 0;
}

inline Rational lambda(const ReducedWord& w, const PathVector<ReducedWord>& v) {
  Rational total = 0;
  for (const auto& [p, c] : v.entries()) {
    if (const int s = lambda_on_path(w, p)) total += s * c;
  }
  return total;
}

inline Rational lambda_pair(const ReducedWord& w, const ReducedWord& w2,
                            const TensorVector<ReducedWord>& v) {
  Rational total = 0;
  for (const auto& [pp, c] : v.entries()) {
    const int s1 = lambda_on_path(w, pp.first);
    if (s1 == 0) continue;
    if (const int s2 = lambda_on_path(w2, pp.second)) total += s1 * s2 * c;
  }
  return total;
}

/// Pushes a vector forward along a vertex map that is a tree automorphism.
template <class V, class F>
PathVector<V> transport(const PathVector<V>& v, F&& map) {
  std::vector<std::pair<Path<V>, Rational>> terms;
  terms.reserve(v.size());
  for (const auto& [p, c] : v.entries()) terms.push_back({{map(p.from), map(p.to), p.length}, c});
  return PathVector<V>::from_terms(std::move(terms));
}

template <class V, class F>
TensorVector<V> transport(const TensorVector<V>& v, F&& map) {
  std::vector<std::pair<PathPair<V>, Rational>> terms;
  terms.reserve(v.size());
  for (const auto& [pp, c] : v.entries()) {
    terms.push_back({{{map(pp.first.from), map(pp.first.to), pp.first.length},
                      {map(pp.second.from), map(pp.second.to), pp.second.length}},
                     c});
  }
  return TensorVector<V>::from_terms(std::move(terms));
}

/// Left translation by g on the Cayley tree.
inline PathVector<ReducedWord> translate(const ReducedWord& g, const PathVector<ReducedWord>& v) {
  return transport(v, [&](const ReducedWord& x) { return g * x; });
}
inline TensorVector<ReducedWord> translate(const ReducedWord& g, const TensorVector<ReducedWord>& v) {
  return transport(v, [&](const ReducedWord& x) { return g * x; });
}

/// Debug text: `coefficient<TAB>start<TAB>label` per canonical path.
inline std::string serialize(const CayleyTree&, const PathVector<ReducedWord>& v) {
  std::ostringstream out;
  for (const auto& [p, c] : v.entries()) {
    out << to_string(c) << '\t' << p.from.str() << '\t' << label(p).str() << '\n';
  }
  return out.str();
}

/// Debug text: `coefficient<TAB>v0,v1,...,vn` per canonical path.
inline std::string serialize(const FiniteTree& t, const PathVector<FiniteTree::vertex_type>& v) {
  std::ostringstream out;
  for (const auto& [p, c] : v.entries()) {
    out << to_string(c) << '\t';
    const auto vertices = t.geodesic(p.from, p.to);
    for (std::size_t i = 0; i < vertices.size(); ++i) out << (i ? "," : "") << vertices[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace coblab
