#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coblab/pathspace.hpp"
#include "coblab/rational.hpp"
#include "coblab/tree.hpp"

namespace coblab {

/// A tuple outside a cochain's declared domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Domain { all, coherent };

/// Homogeneous cochain of degree q, evaluated on (q+1)-tuples. Values may be
/// Rational, PathVector or TensorVector; anything with +, - and Rational * v.
template <TreeBackend Tree, class Value>
struct Cochain {
  using vertex_type = typename Tree::vertex_type;
  using value_type = Value;
  using Evaluator = std::function<Value(std::span<const vertex_type>)>;

  const Tree* tree = nullptr;
  int degree = 0;
  Domain domain = Domain::all;
  Evaluator eval;

  /// Checked evaluation: arity, membership and domain.
  Value operator()(std::span<const vertex_type> x) const {
    require_domain(x, degree + 1);
    return eval(x);
  }

  void require_domain(std::span<const vertex_type> x, int arity) const {
    if (static_cast<int>(x.size()) != arity) {
      throw DomainError("expected a " + std::to_string(arity) + "-tuple, got " +
                        std::to_string(x.size()) + " entries");
    }
    for (const auto& v : x) tree->require(v);
    if (domain == Domain::coherent && !is_coherent(*tree, x)) {
      throw DomainError("tuple is not coherent");
    }
  }
};

/// (-1)^floor((q+1)/2): the signature of the order reversal of {0, ..., q}.
constexpr int tau_sign(int q) { return ((q + 1) / 2) % 2 == 0 ? 1 : -1; }

namespace detail {

template <class V>
std::vector<V> omit(std::span<const V> x, std::size_t i) {
  std::vector<V> face;
  face.reserve(x.size() - 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != i) face.push_back(x[j]);
  }
  return face;
}

template <class V>
std::vector<V> reversed(std::span<const V> x) {
  return std::vector<V>(x.rbegin(), x.rend());
}

}  // namespace detail

/// Sum over i of (-1)^i alpha(x with entry i omitted). Faces of a coherent
/// tuple are coherent, so only x itself is domain-checked.
template <TreeBackend Tree, class Value>
Value coboundary(const Cochain<Tree, Value>& alpha, std::span<const typename Tree::vertex_type> x) {
  alpha.require_domain(x, alpha.degree + 2);
  Value total{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    Value face = alpha.eval(detail::omit(x, i));
    if (i % 2 == 0) {
      total += face;
    } else {
      total -= face;
    }
  }
  return total;
}

template <TreeBackend Tree, class Value>
Cochain<Tree, Value> coboundary(const Cochain<Tree, Value>& alpha) {
  Cochain<Tree, Value> d{alpha.tree, alpha.degree + 1, alpha.domain, {}};
  d.eval = [alpha](std::span<const typename Tree::vertex_type> x) -> Value {
    Value total{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      Value face = alpha.eval(detail::omit(x, i));
      if (i % 2 == 0) {
        total += face;
      } else {
        total -= face;
      }
    }
    return total;
  };
  return d;
}

/// sign(tau_q) * alpha(reversed x) on a coherent tuple.
template <TreeBackend Tree, class Value>
Value tau_hat(const Cochain<Tree, Value>& alpha, std::span<const typename Tree::vertex_type> x) {
  if (alpha.domain != Domain::coherent) throw DomainError("tau_hat needs a coherent-domain cochain");
  alpha.require_domain(x, alpha.degree + 1);
  return Rational(tau_sign(alpha.degree)) * alpha.eval(detail::reversed(x));
}

template <TreeBackend Tree, class Value>
Cochain<Tree, Value> tau_hat(const Cochain<Tree, Value>& alpha) {
  if (alpha.domain != Domain::coherent) throw DomainError("tau_hat needs a coherent-domain cochain");
  Cochain<Tree, Value> out{alpha.tree, alpha.degree, Domain::coherent, {}};
  const Rational sign(tau_sign(alpha.degree));
  out.eval = [alpha, sign](std::span<const typename Tree::vertex_type> x) -> Value {
    return sign * alpha.eval(detail::reversed(x));
  };
  return out;
}

/// A_q = (tau_hat + Id) / 2.
template <TreeBackend Tree, class Value>
Cochain<Tree, Value> alternator(const Cochain<Tree, Value>& alpha) {
  if (alpha.domain != Domain::coherent) throw DomainError("A_q needs a coherent-domain cochain");
  Cochain<Tree, Value> out{alpha.tree, alpha.degree, Domain::coherent, {}};
  const Rational sign(tau_sign(alpha.degree));
  out.eval = [alpha, sign](std::span<const typename Tree::vertex_type> x) -> Value {
    Value sum = alpha.eval(x);
    sum += sign * alpha.eval(detail::reversed(x));
    Rational half(1);
    half /= 2;
    return half * sum;
  };
  return out;
}

/// The same evaluator restricted to coherent tuples.
template <TreeBackend Tree, class Value>
Cochain<Tree, Value> restrict_to_coherent(Cochain<Tree, Value> alpha) {
  alpha.domain = Domain::coherent;
  return alpha;
}

// ---------------------------------------------------------------------------
// The concrete cochains.

template <TreeBackend Tree>
using PathCochain = Cochain<Tree, PathVector<typename Tree::vertex_type>>;
template <TreeBackend Tree>
using TensorCochain = Cochain<Tree, TensorVector<typename Tree::vertex_type>>;

template <TreeBackend Tree>
PathCochain<Tree> eta_cochain(const Tree& t) {
  PathCochain<Tree> c{&t, 1, Domain::all, {}};
  c.eval = [&t](std::span<const typename Tree::vertex_type> x) { return eta(t, x[0], x[1]); };
  return c;
}

/// omega = d(eta).
template <TreeBackend Tree>
PathCochain<Tree> omega_cochain(const Tree& t) {
  return coboundary(eta_cochain(t));
}

template <TreeBackend Tree>
PathVector<typename Tree::vertex_type> omega(const Tree& t, const typename Tree::vertex_type& x0,
                                             const typename Tree::vertex_type& x1,
                                             const typename Tree::vertex_type& x2) {
  const typename Tree::vertex_type x[] = {x0, x1, x2};
  return coboundary(eta_cochain(t), std::span<const typename Tree::vertex_type>(x));
}

/// Closed form of omega on a triple of distinct vertices: +1 on each path p
/// carried by a side of the triangle, traversed x0 -> x1 -> x2 -> x0, whose
/// interior contains the median; the sign is the orientation of p relative
/// to that oriented side.
template <TreeBackend Tree>
PathVector<typename Tree::vertex_type> omega_closed_form(const Tree& t,
                                                         const typename Tree::vertex_type& x0,
                                                         const typename Tree::vertex_type& x1,
                                                         const typename Tree::vertex_type& x2) {
  using V = typename Tree::vertex_type;
  const V center = t.median(x0, x1, x2);
  const V* sides[3][2] = {{&x0, &x1}, {&x1, &x2}, {&x2, &x0}};
  std::vector<std::pair<Path<V>, Rational>> terms;
  for (const auto& side : sides) {
    const auto g = t.geodesic(*side[0], *side[1]);
    const auto k = static_cast<std::size_t>(std::find(g.begin(), g.end(), center) - g.begin());
    if (k == g.size()) continue;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = k + 1; b < g.size(); ++b) terms.push_back({{g[a], g[b], b - a}, Rational(1)});
    }
  }
  return PathVector<V>::from_terms(std::move(terms));
}

/// Closed form of omega on a coherent triple: the sub-paths of [x0, x2] with
/// x1 in their interior, each with minus its orientation relative to [x0, x2].
template <TreeBackend Tree>
PathVector<typename Tree::vertex_type> omega_coherent_form(const Tree& t,
                                                           const typename Tree::vertex_type& x0,
                                                           const typename Tree::vertex_type& x1,
                                                           const typename Tree::vertex_type& x2) {
  using V = typename Tree::vertex_type;
  const auto g = t.geodesic(x0, x2);
  const std::size_t k = t.distance(x0, x1);
  std::vector<std::pair<Path<V>, Rational>> terms;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = k + 1; b < g.size(); ++b) terms.push_back({{g[a], g[b], b - a}, Rational(-1)});
  }
  return PathVector<V>::from_terms(std::move(terms));
}

/// (omega cup omega)(x)(p1, p2) = omega(x0,x1,x2)(p1) * omega(x2,x3,x4)(p2).
template <TreeBackend Tree>
TensorVector<typename Tree::vertex_type> cup_square(const Tree& t,
                                                    std::span<const typename Tree::vertex_type> x) {
  if (x.size() != 5) throw DomainError("cup_square needs a 5-tuple");
  return tensor_product(omega(t, x[0], x[1], x[2]), omega(t, x[2], x[3], x[4]));
}

template <TreeBackend Tree>
TensorCochain<Tree> cup_square_cochain(const Tree& t) {
  TensorCochain<Tree> c{&t, 4, Domain::all, {}};
  c.eval = [&t](std::span<const typename Tree::vertex_type> x) { return cup_square(t, x); };
  return c;
}

/// The primitive B on a coherent 4-tuple: +-1 on (p1, p2) when both are
/// carried by [x0, x3], their interiors are disjoint and x_i lies in Int(p_i);
/// the sign is the product of the orientations relative to [x0, x3].
template <TreeBackend Tree>
TensorVector<typename Tree::vertex_type> primitive_B_unchecked(
    const Tree& t, std::span<const typename Tree::vertex_type> x) {
  using V = typename Tree::vertex_type;
  const auto g = t.geodesic(x[0], x[3]);
  const std::size_t last = g.size() - 1;
  const std::size_t i1 = t.distance(x[0], x[1]);
  const std::size_t i2 = t.distance(x[0], x[2]);
  // Sub-paths carried by [x0, x3] are position intervals (a, b), a < b; the
  // interior of (a, b) is the open interval.
  std::vector<std::pair<PathPair<V>, Rational>> terms;
  for (std::size_t a = 0; a < i1; ++a) {
    for (std::size_t b = i1 + 1; b <= last; ++b) {
      for (std::size_t c = 0; c < i2; ++c) {
        for (std::size_t d = i2 + 1; d <= last; ++d) {
          const bool disjoint = b <= c + 1 || d <= a + 1;
          if (!disjoint) continue;
          terms.push_back({{{g[a], g[b], b - a}, {g[c], g[d], d - c}}, Rational(1)});
        }
      }
    }
  }
  return TensorVector<V>::from_terms(std::move(terms));
}

template <TreeBackend Tree>
TensorVector<typename Tree::vertex_type> primitive_B(const Tree& t,
                                                     std::span<const typename Tree::vertex_type> x) {
  if (x.size() != 4) throw DomainError("primitive_B needs a 4-tuple");
  for (const auto& v : x) t.require(v);
  if (!is_coherent(t, x)) throw DomainError("primitive_B needs a coherent tuple");
  return primitive_B_unchecked(t, x);
}

template <TreeBackend Tree>
TensorCochain<Tree> B_cochain(const Tree& t) {
  TensorCochain<Tree> c{&t, 3, Domain::coherent, {}};
  c.eval = [&t](std::span<const typename Tree::vertex_type> x) { return primitive_B_unchecked(t, x); };
  return c;
}

/// Outcome of an exact tensor identity check; on failure, the smallest key
/// where the two sides differ and both values there.
template <class V>
struct TensorCheck {
  bool holds = true;
  std::optional<PathPair<V>> witness;
  Rational lhs;
  Rational rhs;

  explicit operator bool() const { return holds; }
};

template <class V>
TensorCheck<V> compare_tensors(const TensorVector<V>& lhs, const TensorVector<V>& rhs) {
  TensorCheck<V> r;
  if (auto key = first_difference(lhs, rhs)) {
    r.holds = false;
    r.lhs = lhs.coefficient(*key);
    r.rhs = rhs.coefficient(*key);
    r.witness = std::move(key);
  }
  return r;
}

/// dB(x) == (omega cup omega)(x) on a coherent 5-tuple.
template <TreeBackend Tree>
TensorCheck<typename Tree::vertex_type> verify_prop5(const Tree& t,
                                                     std::span<const typename Tree::vertex_type> x) {
  const auto lhs = coboundary(B_cochain(t), x);
  return compare_tensors(lhs, cup_square(t, x));
}

/// d(A_3 B)(x) == A_4(omega cup omega)(x) on a coherent 5-tuple.
template <TreeBackend Tree>
TensorCheck<typename Tree::vertex_type> verify_A_chain(const Tree& t,
                                                       std::span<const typename Tree::vertex_type> x) {
  const auto lhs = coboundary(alternator(B_cochain(t)), x);
  const auto rhs = alternator(restrict_to_coherent(cup_square_cochain(t)))(x);
  return compare_tensors(lhs, rhs);
}

/// b(x) = (lambda_w (x) lambda_w')(A_3 B(x)) on a coherent 4-tuple.
inline Rational scalar_cup_primitive(const CayleyTree& t, const ReducedWord& w,
                                     const ReducedWord& w2, std::span<const ReducedWord> x) {
  return lambda_pair(w, w2, alternator(B_cochain(t))(x));
}

inline Cochain<CayleyTree, Rational> scalar_primitive_cochain(const CayleyTree& t,
                                                              const ReducedWord& w,
                                                              const ReducedWord& w2) {
  const auto a3b = alternator(B_cochain(t));
  Cochain<CayleyTree, Rational> c{&t, 3, Domain::coherent, {}};
  c.eval = [a3b, w, w2](std::span<const ReducedWord> x) { return lambda_pair(w, w2, a3b.eval(x)); };
  return c;
}

struct ScalarCheck {
  Rational lhs;  ///< d(b)(x)
  Rational rhs;  ///< (lambda_w (x) lambda_w')(A_4(omega cup omega)(x))
  bool holds() const { return lhs == rhs; }
};

/// The scalar identity on a coherent 5-tuple.
inline ScalarCheck scalar_cup_check(const CayleyTree& t, const ReducedWord& w,
                                    const ReducedWord& w2, std::span<const ReducedWord> x) {
  ScalarCheck r;
  r.lhs = coboundary(scalar_primitive_cochain(t, w, w2), x);
  r.rhs = lambda_pair(w, w2, alternator(restrict_to_coherent(cup_square_cochain(t)))(x));
  return r;
}

/// The word-independent tensors behind scalar_cup_check at one tuple, so
/// many (w, w') pairs can share them.
struct ScalarCupTensors {
  std::vector<TensorVector<ReducedWord>> faces;  ///< A_3 B at each face of x
  TensorVector<ReducedWord> pushed;              ///< A_4(omega cup omega)(x)

  ScalarCheck check(const ReducedWord& w, const ReducedWord& w2) const {
    ScalarCheck r;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const Rational v = lambda_pair(w, w2, faces[i]);
      if (i % 2 == 0) {
        r.lhs += v;
      } else {
        r.lhs -= v;
      }
    }
    r.rhs = lambda_pair(w, w2, pushed);
    return r;
  }
};

inline ScalarCupTensors scalar_cup_tensors(const CayleyTree& t, std::span<const ReducedWord> x) {
  const auto a3b = alternator(B_cochain(t));
  a3b.require_domain(x, 5);
  ScalarCupTensors out;
  for (std::size_t i = 0; i < x.size(); ++i) out.faces.push_back(a3b.eval(detail::omit(x, i)));
  out.pushed = alternator(restrict_to_coherent(cup_square_cochain(t)))(x);
  return out;
}

}  // namespace coblab
