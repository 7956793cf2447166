// coblab: run a verification campaign and report.
//
// Exit codes: 0 every identity held, 1 an identity failed, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coblab/coblab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ConfigDeleter {
  void operator()(coblab_config* c) const { coblab_config_free(c); }
};
struct ReportDeleter {
  void operator()(coblab_report* r) const { coblab_report_free(r); }
};

int report_error(coblab_status status) {
  std::fprintf(stderr, "coblab: %s: %s\n", coblab_status_name(status), coblab_last_error());
  return status == COBLAB_ERR_CONFIG || status == COBLAB_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFail;
}

std::string campaign_list() {
  std::string out;
  for (std::size_t i = 0; i < coblab_campaign_count(); ++i) {
    out += std::string(i ? ", " : "") + coblab_campaign_name(i);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coblab - exact verification campaigns for the tree cocycle, its cup square\n"
               "and Brooks quasimorphisms"};
  app.set_version_flag("--version", coblab_version());

  std::string campaign;
  std::string tree = "cayley:2";
  std::uint64_t samples = 1000;
  int radius = 6;
  std::uint64_t seed = 1;
  std::vector<std::string> words;
  std::optional<std::string> word2;
  bool json = false;
  bool no_timing = false;
  unsigned workers = 0;
  bool list = false;

  app.add_option("campaign", campaign, "Campaign: " + campaign_list());
  app.add_option("--tree", tree, "cayley:R or file:PATH")->capture_default_str();
  app.add_option("--samples", samples, "Seeded samples per campaign")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--radius", radius, "Ball radius for sampling and enumeration")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "64-bit seed")->capture_default_str();
  app.add_option("--word", words, "Reduced word (repeatable); default ab ba aab abA");
  app.add_option("--word2", word2, "Second word for scalar-primitive (default: every --word)");
  app.add_flag("--json", json, "Emit the JSON report");
  app.add_flag("--no-timing", no_timing, "Omit elapsed time so reports are byte-comparable");
  app.add_option("--workers", workers, "Worker threads (0: one per hardware thread)")
      ->capture_default_str();
  app.add_flag("--list", list, "List campaigns and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list) {
    for (std::size_t i = 0; i < coblab_campaign_count(); ++i) std::puts(coblab_campaign_name(i));
    return kExitPass;
  }
  if (campaign.empty()) {
    std::fprintf(stderr, "coblab: missing campaign (one of %s)\n", campaign_list().c_str());
    return kExitUsage;
  }

  coblab_config* raw_config = nullptr;
  if (auto s = coblab_config_create(campaign.c_str(), tree.c_str(), &raw_config); s != COBLAB_OK) {
    return report_error(s);
  }
  std::unique_ptr<coblab_config, ConfigDeleter> config(raw_config);
  coblab_config_set_samples(config.get(), samples);
  coblab_config_set_radius(config.get(), radius);
  coblab_config_set_seed(config.get(), seed);
  coblab_config_set_workers(config.get(), workers);
  for (const auto& w : words) coblab_config_add_word(config.get(), w.c_str());
  if (word2) coblab_config_set_word2(config.get(), word2->c_str());

  coblab_report* raw_report = nullptr;
  if (auto s = coblab_campaign_run(config.get(), &raw_report); s != COBLAB_OK) {
    return report_error(s);
  }
  std::unique_ptr<coblab_report, ReportDeleter> report(raw_report);
  const int timing = no_timing ? 0 : 1;
  std::fputs(json ? coblab_report_json(report.get(), timing) : coblab_report_text(report.get(), timing),
             stdout);
  return coblab_report_passed(report.get()) ? kExitPass : kExitFail;
}
