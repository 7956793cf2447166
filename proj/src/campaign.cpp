#include "coblab/campaign.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

#include "coblab/cochain.hpp"
#include "coblab/freegroup.hpp"
#include "coblab/pathspace.hpp"
#include "coblab/random.hpp"
#include "coblab/tree.hpp"

namespace coblab {

namespace {

// Ceilings for the norm checks.
const Rational kOmegaCeiling(6);
const Rational kBCeiling(2);

struct Partial {
  std::uint64_t checks = 0;
  std::vector<Failure> failures;
  Extremes extremes;

  void merge(Partial&& other) {
    checks += other.checks;
    std::move(other.failures.begin(), other.failures.end(), std::back_inserter(failures));
    auto take_max = [](auto& mine, auto& theirs) {
      if (theirs && (!mine || *mine < *theirs)) mine = std::move(theirs);
    };
    take_max(extremes.max_omega_norm, other.extremes.max_omega_norm);
    take_max(extremes.max_B_bound, other.extremes.max_B_bound);
    take_max(extremes.max_defect, other.extremes.max_defect);
  }

  void observe_omega(const Rational& q) {
    if (!extremes.max_omega_norm || *extremes.max_omega_norm < q) extremes.max_omega_norm = q;
  }
  void observe_B(const Rational& q) {
    if (!extremes.max_B_bound || *extremes.max_B_bound < q) extremes.max_B_bound = q;
  }
  void observe_defect(std::int64_t d) {
    if (!extremes.max_defect || *extremes.max_defect < d) extremes.max_defect = d;
  }
};

/// Runs fn(index, partial) for every index in [0, count), statically chunked.
/// Every per-index computation is self-contained, so the merged result does
/// not depend on the worker count.
template <class Fn>
Partial run_items(std::uint64_t count, unsigned workers, Fn&& fn) {
  workers = std::max<unsigned>(1, workers);
  if (count < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, count));
  std::vector<Partial> parts(workers);
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i, parts[0]);
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned k = 0; k < workers; ++k) {
      threads.emplace_back([&, k] {
        try {
          const std::uint64_t lo = std::min(count, k * chunk);
          const std::uint64_t hi = std::min(count, lo + chunk);
          for (std::uint64_t i = lo; i < hi; ++i) fn(i, parts[k]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }
  Partial total;
  for (auto& p : parts) total.merge(std::move(p));
  return total;
}

std::string int_value(std::int64_t v) { return to_string(Rational(static_cast<long>(v))); }

template <class Tree>
std::vector<std::string> format_tuple(const Tree& t, std::span<const typename Tree::vertex_type> xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& v : xs) out.push_back(t.format(v));
  return out;
}

template <class Tree>
PathWitness witness(const Tree& t, const Path<typename Tree::vertex_type>& p) {
  return {t.format(p.from), t.format(p.to), p.length};
}

template <class Tree>
void record_tensor_failure(const Tree& t, std::string check,
                           std::span<const typename Tree::vertex_type> x,
                           const TensorCheck<typename Tree::vertex_type>& r, Partial& out) {
  Failure f{std::move(check), format_tuple(t, x), {}, to_string(r.lhs), to_string(r.rhs)};
  if (r.witness) f.paths = {witness(t, r.witness->first), witness(t, r.witness->second)};
  out.failures.push_back(std::move(f));
}

template <class Tree>
void record_path_failure(const Tree& t, std::string check,
                         std::span<const typename Tree::vertex_type> x,
                         const PathVector<typename Tree::vertex_type>& lhs,
                         const PathVector<typename Tree::vertex_type>& rhs, Partial& out) {
  Failure f{std::move(check), format_tuple(t, x), {}, "", ""};
  if (auto key = first_difference(lhs, rhs)) {
    f.paths = {witness(t, *key)};
    f.lhs = to_string(lhs.coefficient(*key));
    f.rhs = to_string(rhs.coefficient(*key));
  }
  out.failures.push_back(std::move(f));
}

// Sources of tuples: seeded samples on the Cayley tree, exhaustive
// enumeration on finite trees.

template <class Tree>
class CoherentSource;

template <>
class CoherentSource<CayleyTree> {
 public:
  CoherentSource(const CayleyTree& t, int q, const CampaignConfig& cfg) : t_(t), q_(q), cfg_(cfg) {
    if (t.ball_diameter(cfg.radius) < static_cast<std::size_t>(q)) {
      throw ConfigError("radius " + std::to_string(cfg.radius) + " is too small for coherent " +
                        std::to_string(q + 1) + "-tuples");
    }
  }
  std::uint64_t count() const { return cfg_.samples; }
  std::vector<ReducedWord> tuple(std::uint64_t i, SplitMix64& rng) const {
    (void)i;
    return sample_coherent(t_, q_, cfg_.radius, rng);
  }

 private:
  const CayleyTree& t_;
  int q_;
  const CampaignConfig& cfg_;
};

template <>
class CoherentSource<FiniteTree> {
 public:
  CoherentSource(const FiniteTree& t, int q, const CampaignConfig&)
      : tuples_(enumerate_coherent(t, q)) {}
  std::uint64_t count() const { return tuples_.size(); }
  std::vector<FiniteTree::vertex_type> tuple(std::uint64_t i, SplitMix64&) const {
    return tuples_[i];
  }

 private:
  std::vector<std::vector<FiniteTree::vertex_type>> tuples_;
};

template <class Tree>
class ArbitrarySource;

template <>
class ArbitrarySource<CayleyTree> {
 public:
  ArbitrarySource(const CayleyTree& t, std::size_t k, const CampaignConfig& cfg)
      : t_(t), k_(k), cfg_(cfg) {}
  std::uint64_t count() const { return cfg_.samples; }
  std::vector<ReducedWord> tuple(std::uint64_t, SplitMix64& rng) const {
    return sample_tuple(t_, k_, cfg_.radius, rng);
  }

 private:
  const CayleyTree& t_;
  std::size_t k_;
  const CampaignConfig& cfg_;
};

template <>
class ArbitrarySource<FiniteTree> {
 public:
  ArbitrarySource(const FiniteTree& t, std::size_t k, const CampaignConfig&) : n_(t.size()), k_(k) {
    total_ = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (total_ > (std::uint64_t{1} << 40) / n_) throw ConfigError("finite tree too large for exhaustive tuples");
      total_ *= n_;
    }
  }
  std::uint64_t count() const { return total_; }
  std::vector<FiniteTree::vertex_type> tuple(std::uint64_t i, SplitMix64&) const {
    std::vector<FiniteTree::vertex_type> xs(k_);
    for (std::size_t j = k_; j-- > 0;) {
      xs[j] = static_cast<FiniteTree::vertex_type>(i % n_);
      i /= n_;
    }
    return xs;
  }

 private:
  std::uint64_t n_;
  std::size_t k_;
  std::uint64_t total_ = 0;
};

// ---------------------------------------------------------------------------
// Campaign bodies.

template <class Tree>
Partial run_prop5(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  CoherentSource<Tree> source(t, 4, cfg);
  return run_items(source.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x = source.tuple(i, rng);
    const auto r = verify_prop5(t, std::span(x));
    ++out.checks;
    if (!r) record_tensor_failure(t, "prop5", std::span(x), r, out);
  });
}

template <class Tree>
Partial run_a_chain(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  CoherentSource<Tree> source(t, 4, cfg);
  return run_items(source.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x = source.tuple(i, rng);
    const auto r = verify_A_chain(t, std::span(x));
    ++out.checks;
    if (!r) record_tensor_failure(t, "a-chain", std::span(x), r, out);
  });
}

template <class Tree>
Partial run_b_bound(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  CoherentSource<Tree> source(t, 3, cfg);
  return run_items(source.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x = source.tuple(i, rng);
    const Rational bound = tensor_bound(primitive_B(t, std::span(x)));
    ++out.checks;
    out.observe_B(bound);
    if (bound > kBCeiling) {
      out.failures.push_back({"b-bound", format_tuple(t, std::span(x)), {}, to_string(bound),
                              to_string(kBCeiling)});
    }
  });
}

template <class Tree>
Partial run_omega_norm(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  ArbitrarySource<Tree> source(t, 3, cfg);
  return run_items(source.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x = source.tuple(i, rng);
    const Rational norm = weighted_norm(omega(t, x[0], x[1], x[2]));
    ++out.checks;
    out.observe_omega(norm);
    if (norm > kOmegaCeiling) {
      out.failures.push_back({"omega-norm", format_tuple(t, std::span(x)), {}, to_string(norm),
                              to_string(kOmegaCeiling)});
    }
  });
}

/// Signature of a permutation by counting inversions.
int permutation_sign(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
  }
  return inversions % 2 ? -1 : 1;
}

template <class Tree>
Partial run_cocycle(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  using V = typename Tree::vertex_type;
  ArbitrarySource<Tree> quads(t, 4, cfg);
  ArbitrarySource<Tree> triples(t, 3, cfg);
  const auto d_omega = coboundary(omega_cochain(t));

  // dw = 0 on 4-tuples.
  Partial total = run_items(quads.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x = quads.tuple(i, rng);
    const auto value = d_omega(std::span(x));
    ++out.checks;
    if (!value.empty()) record_path_failure(t, "d-omega", std::span(x), value, PathVector<V>{}, out);
  });

  // Closed forms and alternation on triples.
  total.merge(run_items(triples.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed ^ 0x5bd1e995u, i);
    const auto x = triples.tuple(i, rng);
    const auto w = omega(t, x[0], x[1], x[2]);
    if (x[0] != x[1] && x[1] != x[2] && x[0] != x[2]) {
      const auto closed = omega_closed_form(t, x[0], x[1], x[2]);
      ++out.checks;
      if (closed != w) record_path_failure(t, "omega-closed-form", std::span(x), w, closed, out);
    }
    std::array<int, 3> perm{0, 1, 2};
    do {
      const V y[] = {x[perm[0]], x[perm[1]], x[perm[2]]};
      const auto permuted = omega(t, y[0], y[1], y[2]);
      const PathVector<V> expected = Rational(permutation_sign(perm)) * w;
      ++out.checks;
      if (permuted != expected) {
        record_path_failure(t, "omega-alternation", std::span<const V>(y), permuted, expected, out);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (is_coherent(t, std::span(x))) {
      const auto coherent = omega_coherent_form(t, x[0], x[1], x[2]);
      ++out.checks;
      if (coherent != w) record_path_failure(t, "omega-coherent-form", std::span(x), w, coherent, out);
    }
  }));
  return total;
}

// Deterministic pseudo-random scalar cochain: a hash of (seed, tuple) picks
// zero half the time, otherwise a small rational.
template <class Tree>
Cochain<Tree, Rational> random_cochain(const Tree& t, int degree, std::uint64_t seed) {
  Cochain<Tree, Rational> c{&t, degree, Domain::coherent, {}};
  c.eval = [&t, seed](std::span<const typename Tree::vertex_type> x) -> Rational {
    std::uint64_t h = seed;
    for (const auto& v : x) {
      for (char ch : t.format(v)) h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001B3ull;
      h = (h ^ 0xFF) * 0x100000001B3ull;
    }
    SplitMix64 rng(h);
    if (rng.below(2) == 0) return Rational(0);
    Rational r(static_cast<long>(rng.below(11)) - 5);
    r /= static_cast<long>(rng.below(4) + 1);
    return r;
  };
  return c;
}

template <class Tree>
Partial run_chain_map(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  using V = typename Tree::vertex_type;
  Partial total;
  // Signs of the order reversal against an inversion-count oracle.
  for (int q = 0; q <= 8; ++q) {
    std::vector<int> perm(static_cast<std::size_t>(q) + 1);
    std::iota(perm.rbegin(), perm.rend(), 0);
    total.checks += 2;
    if (tau_sign(q) != permutation_sign(perm)) {
      total.failures.push_back({"tau-sign", {std::to_string(q)}, {}, int_value(tau_sign(q)),
                                int_value(permutation_sign(perm))});
    }
    const int product_expected = (q + 1) % 2 ? -1 : 1;
    if (tau_sign(q) * tau_sign(q + 1) != product_expected) {
      total.failures.push_back({"tau-sign-product", {std::to_string(q)}, {},
                                int_value(tau_sign(q) * tau_sign(q + 1)), int_value(product_expected)});
    }
  }

  const auto eta_c = restrict_to_coherent(eta_cochain(t));
  const auto omega_c = restrict_to_coherent(omega_cochain(t));
  const auto b_c = B_cochain(t);
  const auto rand2 = random_cochain(t, 2, cfg.seed);
  const auto rand3 = random_cochain(t, 3, cfg.seed + 1);

  CoherentSource<Tree> source(t, 4, cfg);
  total.merge(run_items(source.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x5 = source.tuple(i, rng);
    const std::span<const V> x(x5);
    const auto x4 = x.first(4);
    const auto x3 = x.first(3);

    auto check_paths = [&](const char* name, std::span<const V> at, const auto& lhs, const auto& rhs) {
      ++out.checks;
      if (lhs != rhs) record_path_failure(t, name, at, lhs, rhs, out);
    };
    auto check_tensor = [&](const char* name, std::span<const V> at, const auto& lhs, const auto& rhs) {
      ++out.checks;
      const auto r = compare_tensors<V>(lhs, rhs);
      if (!r) record_tensor_failure(t, name, at, r, out);
    };
    auto check_scalar = [&](const char* name, std::span<const V> at, const Rational& lhs,
                            const Rational& rhs) {
      ++out.checks;
      if (lhs != rhs) out.failures.push_back({name, format_tuple(t, at), {}, to_string(lhs), to_string(rhs)});
    };

    // d(tau_hat alpha) = tau_hat(d alpha).
    check_paths("chain-map-eta", x3, coboundary(tau_hat(eta_c), x3), tau_hat(coboundary(eta_c), x3));
    check_paths("chain-map-omega", x4, coboundary(tau_hat(omega_c), x4), tau_hat(coboundary(omega_c), x4));
    check_tensor("chain-map-B", x, coboundary(tau_hat(b_c), x), tau_hat(coboundary(b_c), x));
    check_scalar("chain-map-random-2", x4, coboundary(tau_hat(rand2), x4), tau_hat(coboundary(rand2), x4));
    check_scalar("chain-map-random-3", x, coboundary(tau_hat(rand3), x), tau_hat(coboundary(rand3), x));

    // tau_hat is an involution and A projects onto its +1 eigenspace.
    const auto b = b_c(x4);
    check_tensor("tau-involution-B", x4, tau_hat(tau_hat(b_c), x4), b);
    check_paths("tau-involution-omega", x3, tau_hat(tau_hat(omega_c), x3), omega_c(x3));
    const auto a3 = alternator(b_c);
    const auto a3b = a3(x4);
    check_tensor("A-fixed-by-tau", x4, tau_hat(a3, x4), a3b);
    check_tensor("A-idempotent", x4, alternator(a3)(x4), a3b);
  }));
  return total;
}

// Word campaigns (Cayley tree only).

std::string naive_scan_count(const std::string& w, const std::string& g) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + w.size() <= g.size(); ++i) n += g.compare(i, w.size(), w) == 0;
  return int_value(static_cast<std::int64_t>(n));
}

Partial run_qm_eval(const CayleyTree& t, const std::vector<ReducedWord>& words,
                    const CampaignConfig& cfg, unsigned workers) {
  return run_items(t.ball_count(cfg.radius), workers, [&](std::uint64_t i, Partial& out) {
    const ReducedWord g = t.ball_vertex(i);
    const ReducedWord g_inv = g.inverse();
    for (const auto& w : words) {
      auto fail = [&](const char* name, std::int64_t lhs, std::int64_t rhs) {
        out.failures.push_back({name, {w.str(), g.str()}, {}, int_value(lhs), int_value(rhs)});
      };
      out.checks += 3;
      const std::int64_t f = brooks_value(w, g);
      if (brooks_value(w, g_inv) != -f) fail("qm-antisymmetry", brooks_value(w, g_inv), -f);
      const auto c1 = static_cast<std::int64_t>(count_occurrences(w, g_inv));
      const auto c2 = static_cast<std::int64_t>(count_occurrences(w.inverse(), g));
      if (c1 != c2) fail("qm-occurrence-identity", c1, c2);
      const auto c = static_cast<std::int64_t>(count_occurrences(w, g));
      if (int_value(c) != naive_scan_count(w.str(), g.str())) {
        out.failures.push_back({"qm-scanner-oracle", {w.str(), g.str()}, {}, int_value(c),
                                naive_scan_count(w.str(), g.str())});
      }
    }
  });
}

std::int64_t defect_ceiling(const ReducedWord& w) {
  return 3 * (static_cast<std::int64_t>(w.size()) - 1);
}

Partial run_qm_defect(const CayleyTree& t, const std::vector<ReducedWord>& words,
                      const CampaignConfig& cfg, unsigned workers) {
  Partial out;
  const std::uint64_t pairs = t.ball_count(cfg.radius) * t.ball_count(cfg.radius);
  for (const auto& w : words) {
    const DefectResult r = defect_search(w, cfg.radius, workers);
    out.checks += pairs;
    out.observe_defect(r.max);
    if (r.max > defect_ceiling(w)) {
      out.failures.push_back({"qm-defect-bound", {w.str(), r.g.str(), r.h.str()}, {}, int_value(r.max),
                              int_value(defect_ceiling(w))});
    }
  }
  return out;
}

Partial run_lambda_eta(const CayleyTree& t, const std::vector<ReducedWord>& words,
                       const CampaignConfig& cfg, unsigned workers) {
  const ReducedWord e = t.base();
  return run_items(t.ball_count(cfg.radius), workers, [&](std::uint64_t i, Partial& out) {
    const ReducedWord g = t.ball_vertex(i);
    const auto v = eta(t, e, g);
    for (const auto& w : words) {
      ++out.checks;
      const Rational lhs = lambda(w, v);
      const Rational rhs(static_cast<long>(brooks_value(w, g)));
      if (lhs != rhs) out.failures.push_back({"lambda-eta", {w.str(), g.str()}, {}, to_string(lhs), to_string(rhs)});
    }
  });
}

Partial run_defect_identity(const CayleyTree& t, const std::vector<ReducedWord>& words,
                            const CampaignConfig& cfg, unsigned workers) {
  const ReducedWord e = t.base();
  return run_items(cfg.samples, workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const ReducedWord g = sample_vertex(t, cfg.radius, rng);
    const ReducedWord h = sample_vertex(t, cfg.radius, rng);
    const ReducedWord gh = g * h;
    const auto w3 = omega(t, e, g, gh);
    for (const auto& w : words) {
      out.checks += 2;
      const Rational lhs = lambda(w, w3);
      const std::int64_t defect = brooks_value(w, g) + brooks_value(w, h) - brooks_value(w, gh);
      const Rational rhs(static_cast<long>(defect));
      if (lhs != rhs) {
        out.failures.push_back({"defect-identity", {w.str(), g.str(), h.str()}, {}, to_string(lhs), to_string(rhs)});
      }
      const std::int64_t magnitude = defect < 0 ? -defect : defect;
      out.observe_defect(magnitude);
      if (magnitude > defect_ceiling(w)) {
        out.failures.push_back({"defect-bound", {w.str(), g.str(), h.str()}, {}, int_value(magnitude),
                                int_value(defect_ceiling(w))});
      }
    }
  });
}

Partial run_scalar_primitive(const CayleyTree& t, const std::vector<ReducedWord>& words,
                             const std::vector<ReducedWord>& seconds, const CampaignConfig& cfg,
                             unsigned workers) {
  CoherentSource<CayleyTree> source(t, 4, cfg);
  return run_items(source.count(), workers, [&](std::uint64_t i, Partial& out) {
    auto rng = SplitMix64::substream(cfg.seed, i);
    const auto x = source.tuple(i, rng);
    const auto tensors = scalar_cup_tensors(t, std::span(x));
    for (const auto& w : words) {
      for (const auto& w2 : seconds) {
        ++out.checks;
        const ScalarCheck r = tensors.check(w, w2);
        if (!r.holds()) {
          auto tuple = format_tuple(t, std::span(x));
          tuple.insert(tuple.begin(), {w.str(), w2.str()});
          out.failures.push_back({"scalar-primitive", std::move(tuple), {}, to_string(r.lhs), to_string(r.rhs)});
        }
      }
    }
  });
}

bool is_word_campaign(std::string_view name) {
  return name == "qm-eval" || name == "qm-defect" || name == "lambda-eta" ||
         name == "defect-identity" || name == "scalar-primitive";
}

std::vector<ReducedWord> parse_words(const std::vector<std::string>& texts, int rank) {
  std::vector<ReducedWord> words;
  for (const auto& text : texts) {
    ReducedWord w = [&] {
      try {
        return ReducedWord::parse(text, rank);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }();
    if (w.empty()) throw ConfigError("word '" + text + "' reduces to the identity");
    words.push_back(std::move(w));
  }
  return words;
}

template <class Tree>
Partial dispatch_generic(const Tree& t, const CampaignConfig& cfg, unsigned workers) {
  const std::string& name = cfg.campaign;
  if (name == "cocycle") return run_cocycle(t, cfg, workers);
  if (name == "omega-norm") return run_omega_norm(t, cfg, workers);
  if (name == "prop5") return run_prop5(t, cfg, workers);
  if (name == "a-chain") return run_a_chain(t, cfg, workers);
  if (name == "b-bound") return run_b_bound(t, cfg, workers);
  if (name == "chain-map") return run_chain_map(t, cfg, workers);
  throw ConfigError("unknown campaign '" + name + "'");
}

nlohmann::ordered_json path_json(const PathWitness& p) {
  return {{"from", p.from}, {"to", p.to}, {"length", p.length}};
}

template <class T>
nlohmann::ordered_json optional_rational(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rational>) {
    return to_string(*v);
  } else {
    return *v;
  }
}

}  // namespace

const std::vector<std::string_view>& campaign_names() {
  static const std::vector<std::string_view> names = {
      "qm-eval", "qm-defect", "cocycle", "omega-norm", "prop5", "a-chain",
      "b-bound", "lambda-eta", "defect-identity", "scalar-primitive", "chain-map"};
  return names;
}

const std::vector<std::string>& default_words() {
  static const std::vector<std::string> words = {"ab", "ba", "aab", "abA"};
  return words;
}

VerificationReport run_campaign(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto& names = campaign_names();
  if (std::find(names.begin(), names.end(), config.campaign) == names.end()) {
    throw ConfigError("unknown campaign '" + config.campaign + "'");
  }
  if (config.samples == 0) throw ConfigError("samples must be positive");
  if (config.radius <= 0) throw ConfigError("radius must be positive");

  TreeModel tree = [&] {
    try {
      return parse_tree_selector(config.tree);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }();

  VerificationReport report;
  report.config = config;
  report.config.workers = 0;
  const unsigned workers =
      config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());

  Partial result;
  if (is_word_campaign(config.campaign)) {
    const auto* cayley = std::get_if<CayleyTree>(&tree);
    if (!cayley) {
      throw ConfigError("campaign '" + config.campaign + "' needs word labels: use --tree cayley:R");
    }
    const auto& texts = config.words.empty() ? default_words() : config.words;
    const auto words = parse_words(texts, cayley->rank());
    report.config.words.clear();
    for (const auto& w : words) report.config.words.push_back(w.str());
    std::vector<ReducedWord> seconds = words;
    if (config.word2) {
      seconds = parse_words({*config.word2}, cayley->rank());
      report.config.word2 = seconds.front().str();
    }
    const std::string& name = config.campaign;
    if (name == "qm-eval") result = run_qm_eval(*cayley, words, config, workers);
    if (name == "qm-defect") result = run_qm_defect(*cayley, words, config, workers);
    if (name == "lambda-eta") result = run_lambda_eta(*cayley, words, config, workers);
    if (name == "defect-identity") result = run_defect_identity(*cayley, words, config, workers);
    if (name == "scalar-primitive") result = run_scalar_primitive(*cayley, words, seconds, config, workers);
  } else {
    result = std::visit([&](const auto& t) { return dispatch_generic(t, config, workers); }, tree);
  }

  report.checks_run = result.checks;
  report.failures = std::move(result.failures);
  std::sort(report.failures.begin(), report.failures.end());
  report.extremes = std::move(result.extremes);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_json(const VerificationReport& report, bool include_timing) {
  using nlohmann::ordered_json;
  const auto& c = report.config;
  ordered_json config{{"tree", c.tree},
                      {"samples", c.samples},
                      {"radius", c.radius},
                      {"seed", c.seed},
                      {"words", c.words},
                      {"word2", c.word2 ? ordered_json(*c.word2) : ordered_json(nullptr)}};
  ordered_json failures = ordered_json::array();
  for (const auto& f : report.failures) {
    ordered_json paths = ordered_json::array();
    for (const auto& p : f.paths) paths.push_back(path_json(p));
    failures.push_back({{"check", f.check}, {"tuple", f.tuple}, {"paths", paths}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  }
  ordered_json j{{"schema", VerificationReport::kSchema},
                 {"campaign", c.campaign},
                 {"rng", std::string(SplitMix64::kName)},
                 {"config", config},
                 {"checks_run", report.checks_run},
                 {"passed", report.passed()},
                 {"failures", failures},
                 {"extremes",
                  {{"max_omega_norm", optional_rational(report.extremes.max_omega_norm)},
                   {"max_B_bound", optional_rational(report.extremes.max_B_bound)},
                   {"max_defect", optional_rational(report.extremes.max_defect)}}}};
  if (include_timing) j["elapsed_ms"] = static_cast<std::int64_t>(report.elapsed_ms);
  return j.dump(2) + "\n";
}

std::string to_text(const VerificationReport& report, bool include_timing) {
  std::ostringstream out;
  const auto& c = report.config;
  out << "campaign   " << c.campaign << "\n";
  out << "tree       " << c.tree << "  samples=" << c.samples << "  radius=" << c.radius
      << "  seed=" << c.seed << "\n";
  if (!c.words.empty()) {
    out << "words     ";
    for (const auto& w : c.words) out << ' ' << w;
    if (c.word2) out << "  (second: " << *c.word2 << ")";
    out << "\n";
  }
  out << "checks     " << report.checks_run << "\n";
  auto show = [&](const char* label, const std::optional<Rational>& q) {
    if (!q) return;
    out << label << to_string(*q) << "  (" << std::fixed << std::setprecision(6) << q->get_d() << ")\n";
  };
  show("max |omega|  ", report.extremes.max_omega_norm);
  show("max |B|      ", report.extremes.max_B_bound);
  if (report.extremes.max_defect) out << "max defect   " << *report.extremes.max_defect << "\n";
  out << "failures   " << report.failures.size() << "\n";
  for (const auto& f : report.failures) {
    out << "  " << f.check << " at (";
    for (std::size_t i = 0; i < f.tuple.size(); ++i) out << (i ? ", " : "") << '"' << f.tuple[i] << '"';
    out << ")";
    for (const auto& p : f.paths) out << " [" << p.from << " -> " << p.to << "]";
    out << ": " << f.lhs << " != " << f.rhs << "\n";
  }
  if (include_timing) out << "elapsed    " << static_cast<std::int64_t>(report.elapsed_ms) << " ms\n";
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace coblab
