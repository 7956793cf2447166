#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coblab/rational.hpp"

namespace coblab {

/// Bad campaign name, tree selector, word or budget: a usage error rather
/// than a failed identity.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputMode { text, json };

struct CampaignConfig {
  std::string campaign;
  std::string tree = "cayley:2";
  std::uint64_t samples = 1000;
  int radius = 6;
  std::uint64_t seed = 1;
  std::vector<std::string> words;
  std::optional<std::string> word2;
  OutputMode output = OutputMode::text;
  /// 0 means one per hardware thread. Never affects the report.
  unsigned workers = 0;
};

struct PathWitness {
  std::string from;
  std::string to;
  std::size_t length = 0;

  friend auto operator<=>(const PathWitness&, const PathWitness&) = default;
};

struct Failure {
  std::string check;
  std::vector<std::string> tuple;
  std::vector<PathWitness> paths;
  std::string lhs;
  std::string rhs;

  friend auto operator<=>(const Failure&, const Failure&) = default;
};

struct Extremes {
  std::optional<Rational> max_omega_norm;
  std::optional<Rational> max_B_bound;
  std::optional<std::int64_t> max_defect;
};

struct VerificationReport {
  static constexpr int kSchema = 1;

  CampaignConfig config;
  std::uint64_t checks_run = 0;
  std::vector<Failure> failures;  ///< sorted
  Extremes extremes;
  double elapsed_ms = 0;

  bool passed() const { return failures.empty(); }
};

/// Names accepted by run_campaign, in catalog order.
const std::vector<std::string_view>& campaign_names();

/// Words used when a word campaign is given none.
const std::vector<std::string>& default_words();

/// Throws ConfigError for anything the caller got wrong.
VerificationReport run_campaign(const CampaignConfig& config);

/// Flat, versioned JSON. With include_timing=false the output depends only on
/// the configuration (minus workers) and is byte-stable across runs.
std::string to_json(const VerificationReport& report, bool include_timing = true);
std::string to_text(const VerificationReport& report, bool include_timing = true);

}  // namespace coblab
