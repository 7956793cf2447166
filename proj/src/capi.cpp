#include "coblab/coblab.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "coblab/campaign.hpp"
#include "coblab/cochain.hpp"
#include "coblab/freegroup.hpp"
#include "coblab/pathspace.hpp"
#include "coblab/tree.hpp"

struct coblab_tree {
  coblab::TreeModel model;
};

struct coblab_config {
  coblab::CampaignConfig config;
};

struct coblab_report {
  coblab::VerificationReport report;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NullArgument : public std::invalid_argument {
 public:
  NullArgument() : std::invalid_argument("null argument") {}
};

template <class... P>
void require_non_null(const P*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw NullArgument();
}

template <class Fn>
coblab_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return COBLAB_OK;
  } catch (const coblab::ConfigError& e) {
    last_error = e.what();
    return COBLAB_ERR_CONFIG;
  } catch (const coblab::DomainError& e) {
    last_error = e.what();
    return COBLAB_ERR_DOMAIN;
  } catch (const Unsupported& e) {
    last_error = e.what();
    return COBLAB_ERR_UNSUPPORTED;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return COBLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return COBLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return COBLAB_ERR_INTERNAL;
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

coblab::ReducedWord word(int rank, const char* text) {
  require_non_null(text);
  return coblab::ReducedWord::parse(text, rank);
}

const coblab::CayleyTree& cayley(const coblab_tree* tree) {
  const auto* t = std::get_if<coblab::CayleyTree>(&tree->model);
  if (!t) throw Unsupported("operation needs path labels: use a Cayley tree");
  return *t;
}

template <class Tree>
std::vector<typename Tree::vertex_type> vertices(const Tree& t, const char* const* xs, std::size_t n) {
  if (n > 0) require_non_null(xs);
  std::vector<typename Tree::vertex_type> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_non_null(xs[i]);
    out.push_back(t.parse_vertex(xs[i]));
  }
  return out;
}

template <class Tree>
typename Tree::vertex_type vertex(const Tree& t, const char* x) {
  require_non_null(x);
  return t.parse_vertex(x);
}

}  // namespace

extern "C" {

const char* coblab_version(void) { return "1.0.0"; }

const char* coblab_status_name(coblab_status status) {
  switch (status) {
    case COBLAB_OK: return "ok";
    case COBLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case COBLAB_ERR_CONFIG: return "configuration error";
    case COBLAB_ERR_DOMAIN: return "domain error";
    case COBLAB_ERR_UNSUPPORTED: return "unsupported on this tree";
    case COBLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* coblab_last_error(void) { return last_error.c_str(); }

void coblab_string_free(char* s) { std::free(s); }

coblab_status coblab_word_reduce(int rank, const char* w, char** out) {
  return guarded([&] {
    require_non_null(out);
    *out = duplicate(word(rank, w).str());
  });
}

coblab_status coblab_word_multiply(int rank, const char* g, const char* h, char** out) {
  return guarded([&] {
    require_non_null(out);
    *out = duplicate((word(rank, g) * word(rank, h)).str());
  });
}

coblab_status coblab_word_inverse(int rank, const char* g, char** out) {
  return guarded([&] {
    require_non_null(out);
    *out = duplicate(word(rank, g).inverse().str());
  });
}

coblab_status coblab_count_occurrences(int rank, const char* w, const char* g, uint64_t* out) {
  return guarded([&] {
    require_non_null(out);
    *out = coblab::count_occurrences(word(rank, w), word(rank, g));
  });
}

coblab_status coblab_brooks_value(int rank, const char* w, const char* g, int64_t* out) {
  return guarded([&] {
    require_non_null(out);
    *out = coblab::brooks_value(word(rank, w), word(rank, g));
  });
}

coblab_status coblab_ball_size(int rank, int radius, uint64_t* out) {
  return guarded([&] {
    require_non_null(out);
    *out = coblab::ball_size(rank, radius);
  });
}

coblab_status coblab_defect_search(int rank, const char* w, int radius, int64_t* max,
                                   char** witness_g, char** witness_h) {
  return guarded([&] {
    require_non_null(max);
    const auto r = coblab::defect_search(word(rank, w), radius);
    *max = r.max;
    if (witness_g) *witness_g = duplicate(r.g.str());
    if (witness_h) *witness_h = duplicate(r.h.str());
  });
}

coblab_status coblab_tree_open(const char* selector, coblab_tree** out) {
  return guarded([&] {
    require_non_null(selector, out);
    try {
      *out = new coblab_tree{coblab::parse_tree_selector(selector)};
    } catch (const std::exception& e) {
      throw coblab::ConfigError(e.what());
    }
  });
}

coblab_status coblab_tree_parse(const char* text, coblab_tree** out) {
  return guarded([&] {
    require_non_null(text, out);
    std::istringstream in(text);
    try {
      *out = new coblab_tree{coblab::FiniteTree::parse(in)};
    } catch (const std::exception& e) {
      throw coblab::ConfigError(e.what());
    }
  });
}

void coblab_tree_free(coblab_tree* tree) { delete tree; }

int coblab_tree_is_cayley(const coblab_tree* tree) {
  return tree && std::holds_alternative<coblab::CayleyTree>(tree->model) ? 1 : 0;
}

coblab_status coblab_tree_distance(const coblab_tree* tree, const char* x, const char* y,
                                   uint64_t* out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = std::visit([&](const auto& t) { return static_cast<uint64_t>(t.distance(vertex(t, x), vertex(t, y))); },
                      tree->model);
  });
}

coblab_status coblab_tree_geodesic(const coblab_tree* tree, const char* x, const char* y, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = duplicate(std::visit(
        [&](const auto& t) {
          std::string s;
          const auto path = t.geodesic(vertex(t, x), vertex(t, y));
          for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + t.format(path[i]);
          return s;
        },
        tree->model));
  });
}

coblab_status coblab_tree_median(const coblab_tree* tree, const char* x0, const char* x1,
                                 const char* x2, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = duplicate(std::visit(
        [&](const auto& t) { return t.format(t.median(vertex(t, x0), vertex(t, x1), vertex(t, x2))); },
        tree->model));
  });
}

coblab_status coblab_tree_is_aligned(const coblab_tree* tree, const char* const* xs, size_t n, int* out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = std::visit([&](const auto& t) {
      const auto v = vertices(t, xs, n);
      return coblab::is_aligned(t, std::span(v)) ? 1 : 0;
    },
                      tree->model);
  });
}

coblab_status coblab_tree_is_coherent(const coblab_tree* tree, const char* const* xs, size_t n, int* out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = std::visit([&](const auto& t) {
      const auto v = vertices(t, xs, n);
      return coblab::is_coherent(t, std::span(v)) ? 1 : 0;
    },
                      tree->model);
  });
}

int coblab_tau_sign(int q) { return coblab::tau_sign(q); }

coblab_status coblab_eta_serialize(const coblab_tree* tree, const char* x0, const char* x1, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = duplicate(std::visit(
        [&](const auto& t) { return coblab::serialize(t, coblab::eta(t, vertex(t, x0), vertex(t, x1))); },
        tree->model));
  });
}

coblab_status coblab_omega_serialize(const coblab_tree* tree, const char* x0, const char* x1,
                                     const char* x2, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = duplicate(std::visit(
        [&](const auto& t) {
          return coblab::serialize(t, coblab::omega(t, vertex(t, x0), vertex(t, x1), vertex(t, x2)));
        },
        tree->model));
  });
}

coblab_status coblab_omega_norm(const coblab_tree* tree, const char* x0, const char* x1,
                                const char* x2, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = duplicate(std::visit(
        [&](const auto& t) {
          return coblab::to_string(
              coblab::weighted_norm(coblab::omega(t, vertex(t, x0), vertex(t, x1), vertex(t, x2))));
        },
        tree->model));
  });
}

coblab_status coblab_B_bound(const coblab_tree* tree, const char* const* xs, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    *out = duplicate(std::visit(
        [&](const auto& t) {
          const auto v = vertices(t, xs, 4);
          return coblab::to_string(coblab::tensor_bound(coblab::primitive_B(t, std::span(v))));
        },
        tree->model));
  });
}

coblab_status coblab_verify_prop5(const coblab_tree* tree, const char* const* xs, int* holds) {
  return guarded([&] {
    require_non_null(tree, holds);
    *holds = std::visit([&](const auto& t) {
      const auto v = vertices(t, xs, 5);
      return coblab::verify_prop5(t, std::span(v)).holds ? 1 : 0;
    },
                        tree->model);
  });
}

coblab_status coblab_verify_a_chain(const coblab_tree* tree, const char* const* xs, int* holds) {
  return guarded([&] {
    require_non_null(tree, holds);
    *holds = std::visit([&](const auto& t) {
      const auto v = vertices(t, xs, 5);
      return coblab::verify_A_chain(t, std::span(v)).holds ? 1 : 0;
    },
                        tree->model);
  });
}

coblab_status coblab_lambda_eta(const coblab_tree* tree, const char* w, const char* x0, const char* x1,
                                char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    const auto& t = cayley(tree);
    const auto word_w = word(t.rank(), w);
    if (word_w.empty()) throw std::invalid_argument("lambda: empty word");
    *out = duplicate(coblab::to_string(coblab::lambda(word_w, coblab::eta(t, vertex(t, x0), vertex(t, x1)))));
  });
}

coblab_status coblab_scalar_cup_primitive(const coblab_tree* tree, const char* w, const char* w2,
                                          const char* const* xs, char** out) {
  return guarded([&] {
    require_non_null(tree, out);
    const auto& t = cayley(tree);
    const auto a = word(t.rank(), w);
    const auto b = word(t.rank(), w2);
    if (a.empty() || b.empty()) throw std::invalid_argument("lambda: empty word");
    const auto x = vertices(t, xs, 4);
    if (!coblab::is_coherent(t, std::span(x))) throw coblab::DomainError("tuple is not coherent");
    *out = duplicate(coblab::to_string(coblab::scalar_cup_primitive(t, a, b, std::span(x))));
  });
}

size_t coblab_campaign_count(void) { return coblab::campaign_names().size(); }

const char* coblab_campaign_name(size_t index) {
  const auto& names = coblab::campaign_names();
  return index < names.size() ? names[index].data() : nullptr;
}

coblab_status coblab_config_create(const char* campaign, const char* tree_selector, coblab_config** out) {
  return guarded([&] {
    require_non_null(campaign, tree_selector, out);
    auto* c = new coblab_config{};
    c->config.campaign = campaign;
    c->config.tree = tree_selector;
    *out = c;
  });
}

void coblab_config_free(coblab_config* config) { delete config; }

coblab_status coblab_config_set_samples(coblab_config* config, uint64_t samples) {
  return guarded([&] {
    require_non_null(config);
    config->config.samples = samples;
  });
}

coblab_status coblab_config_set_radius(coblab_config* config, int radius) {
  return guarded([&] {
    require_non_null(config);
    config->config.radius = radius;
  });
}

coblab_status coblab_config_set_seed(coblab_config* config, uint64_t seed) {
  return guarded([&] {
    require_non_null(config);
    config->config.seed = seed;
  });
}

coblab_status coblab_config_add_word(coblab_config* config, const char* w) {
  return guarded([&] {
    require_non_null(config, w);
    config->config.words.emplace_back(w);
  });
}

coblab_status coblab_config_set_word2(coblab_config* config, const char* w) {
  return guarded([&] {
    require_non_null(config, w);
    config->config.word2 = w;
  });
}

coblab_status coblab_config_set_workers(coblab_config* config, unsigned workers) {
  return guarded([&] {
    require_non_null(config);
    config->config.workers = workers;
  });
}

coblab_status coblab_campaign_run(const coblab_config* config, coblab_report** out) {
  return guarded([&] {
    require_non_null(config, out);
    *out = new coblab_report{coblab::run_campaign(config->config), {}};
  });
}

void coblab_report_free(coblab_report* report) { delete report; }

int coblab_report_passed(const coblab_report* report) {
  return report && report->report.passed() ? 1 : 0;
}

uint64_t coblab_report_checks_run(const coblab_report* report) {
  return report ? report->report.checks_run : 0;
}

size_t coblab_report_failure_count(const coblab_report* report) {
  return report ? report->report.failures.size() : 0;
}

const char* coblab_report_json(coblab_report* report, int include_timing) {
  if (!report) return nullptr;
  report->rendered = coblab::to_json(report->report, include_timing != 0);
  return report->rendered.c_str();
}

const char* coblab_report_text(coblab_report* report, int include_timing) {
  if (!report) return nullptr;
  report->rendered = coblab::to_text(report->report, include_timing != 0);
  return report->rendered.c_str();
}

}  // extern "C"
