#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "coblab/coblab.h"

namespace {

// Takes ownership of a string returned through char**.
std::string take(char* s) {
  std::string out = s ? s : "";
  coblab_string_free(s);
  return out;
}

struct Tree {
  coblab_tree* t = nullptr;
  explicit Tree(const char* selector) { REQUIRE(coblab_tree_open(selector, &t) == COBLAB_OK); }
  ~Tree() { coblab_tree_free(t); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(coblab_version()) == "1.0.0");
  CHECK(std::string(coblab_status_name(COBLAB_OK)) == "ok");
  CHECK(std::string(coblab_status_name(COBLAB_ERR_DOMAIN)).size() > 0);
}

TEST_CASE("free group calls") {
  char* s = nullptr;
  REQUIRE(coblab_word_reduce(2, "abBA", &s) == COBLAB_OK);
  CHECK(take(s) == "");
  REQUIRE(coblab_word_multiply(2, "ab", "ba", &s) == COBLAB_OK);
  CHECK(take(s) == "abba");
  REQUIRE(coblab_word_inverse(2, "abA", &s) == COBLAB_OK);
  CHECK(take(s) == "aBA");
  uint64_t n = 0;
  REQUIRE(coblab_count_occurrences(2, "aa", "aaa", &n) == COBLAB_OK);
  CHECK(n == 2);
  int64_t v = 0;
  REQUIRE(coblab_brooks_value(2, "ab", "BABA", &v) == COBLAB_OK);
  CHECK(v == -2);
  REQUIRE(coblab_ball_size(2, 3, &n) == COBLAB_OK);
  CHECK(n == 53);
  char *g = nullptr, *h = nullptr;
  REQUIRE(coblab_defect_search(2, "abA", 4, &v, &g, &h) == COBLAB_OK);
  CHECK(v == 2);
  CHECK(take(g) == "abA");
  CHECK(take(h) == "abA");

  CHECK(coblab_word_reduce(2, "abc", &s) == COBLAB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(coblab_last_error()).size() > 0);
  CHECK(coblab_word_reduce(2, nullptr, &s) == COBLAB_ERR_INVALID_ARGUMENT);
  CHECK(coblab_word_reduce(2, "ab", nullptr) == COBLAB_ERR_INVALID_ARGUMENT);
  CHECK(coblab_count_occurrences(2, "", "ab", &n) == COBLAB_ERR_INVALID_ARGUMENT);
  CHECK(coblab_word_multiply(0, "", "", &s) == COBLAB_ERR_INVALID_ARGUMENT);
  // Success clears the message.
  REQUIRE(coblab_ball_size(2, 1, &n) == COBLAB_OK);
  CHECK(std::string(coblab_last_error()).empty());
}

TEST_CASE("tree calls") {
  Tree cayley("cayley:2");
  CHECK(coblab_tree_is_cayley(cayley.t) == 1);
  uint64_t d = 0;
  REQUIRE(coblab_tree_distance(cayley.t, "a", "b", &d) == COBLAB_OK);
  CHECK(d == 2);
  char* s = nullptr;
  REQUIRE(coblab_tree_geodesic(cayley.t, "a", "b", &s) == COBLAB_OK);
  CHECK(take(s) == "a,,b");
  REQUIRE(coblab_tree_median(cayley.t, "ab", "aB", "", &s) == COBLAB_OK);
  CHECK(take(s) == "a");
  const char* coherent[] = {"", "a", "ab"};
  const char* tripod[] = {"a", "b", "B"};
  int flag = -1;
  REQUIRE(coblab_tree_is_coherent(cayley.t, coherent, 3, &flag) == COBLAB_OK);
  CHECK(flag == 1);
  REQUIRE(coblab_tree_is_aligned(cayley.t, tripod, 3, &flag) == COBLAB_OK);
  CHECK(flag == 0);
  CHECK(coblab_tree_distance(cayley.t, "c", "a", &d) == COBLAB_ERR_INVALID_ARGUMENT);

  coblab_tree* t = nullptr;
  REQUIRE(coblab_tree_parse("3\n0 1\n1 2\n", &t) == COBLAB_OK);
  CHECK(coblab_tree_is_cayley(t) == 0);
  REQUIRE(coblab_tree_geodesic(t, "0", "2", &s) == COBLAB_OK);
  CHECK(take(s) == "0,1,2");
  CHECK(coblab_tree_distance(t, "0", "3", &d) == COBLAB_ERR_INVALID_ARGUMENT);
  coblab_tree_free(t);

  CHECK(coblab_tree_parse("3\n0 1\n", &t) == COBLAB_ERR_CONFIG);
  CHECK(coblab_tree_open("cayley:1", &t) == COBLAB_ERR_CONFIG);
  CHECK(coblab_tree_open("file:/nonexistent.tree", &t) == COBLAB_ERR_CONFIG);
  CHECK(coblab_tree_open("file:" COBLAB_TEST_DATA "/cycle.tree", &t) == COBLAB_ERR_CONFIG);
  coblab_tree_free(nullptr);
}

TEST_CASE("cochain calls") {
  Tree cayley("cayley:2");
  CHECK(coblab_tau_sign(2) == -1);
  CHECK(coblab_tau_sign(3) == 1);
  char* s = nullptr;
  REQUIRE(coblab_eta_serialize(cayley.t, "", "ab", &s) == COBLAB_OK);
  CHECK(take(s) == "1/1\t\ta\n1/1\t\tab\n1/1\ta\tb\n");
  REQUIRE(coblab_omega_serialize(cayley.t, "", "a", "ab", &s) == COBLAB_OK);
  CHECK(take(s) == "-1/1\t\tab\n");
  REQUIRE(coblab_omega_norm(cayley.t, "", "a", "ab", &s) == COBLAB_OK);
  CHECK(take(s) == "1/2");

  const char* x4[] = {"", "a", "ab", "aba"};
  REQUIRE(coblab_B_bound(cayley.t, x4, &s) == COBLAB_OK);
  CHECK(take(s) == "1/4");
  const char* x5[] = {"", "a", "ab", "aba", "abab"};
  int holds = 0;
  REQUIRE(coblab_verify_prop5(cayley.t, x5, &holds) == COBLAB_OK);
  CHECK(holds == 1);
  REQUIRE(coblab_verify_a_chain(cayley.t, x5, &holds) == COBLAB_OK);
  CHECK(holds == 1);
  const char* bad[] = {"", "ab", "a", "aba", "abab"};
  CHECK(coblab_verify_prop5(cayley.t, bad, &holds) == COBLAB_ERR_DOMAIN);
  CHECK(coblab_B_bound(cayley.t, bad, &s) == COBLAB_ERR_DOMAIN);

  REQUIRE(coblab_lambda_eta(cayley.t, "ab", "", "abab", &s) == COBLAB_OK);
  CHECK(take(s) == "2/1");
  REQUIRE(coblab_scalar_cup_primitive(cayley.t, "ab", "ba", x4, &s) == COBLAB_OK);
  CHECK(take(s) == "1/2");
  CHECK(coblab_lambda_eta(cayley.t, "", "", "ab", &s) == COBLAB_ERR_INVALID_ARGUMENT);

  coblab_tree* t = nullptr;
  REQUIRE(coblab_tree_parse("3\n0 1\n1 2\n", &t) == COBLAB_OK);
  REQUIRE(coblab_omega_serialize(t, "0", "1", "2", &s) == COBLAB_OK);
  CHECK(take(s) == "-1/1\t0,1,2\n");
  CHECK(coblab_lambda_eta(t, "ab", "0", "2", &s) == COBLAB_ERR_UNSUPPORTED);
  coblab_tree_free(t);
}

TEST_CASE("campaigns") {
  CHECK(coblab_campaign_count() == 11);
  CHECK(std::string(coblab_campaign_name(4)) == "prop5");
  CHECK(coblab_campaign_name(11) == nullptr);

  coblab_config* c = nullptr;
  REQUIRE(coblab_config_create("prop5", "file:" COBLAB_TEST_DATA "/path6.tree", &c) == COBLAB_OK);
  coblab_report* r = nullptr;
  REQUIRE(coblab_campaign_run(c, &r) == COBLAB_OK);
  CHECK(coblab_report_passed(r) == 1);
  CHECK(coblab_report_checks_run(r) == 12);
  CHECK(coblab_report_failure_count(r) == 0);
  const std::string json = coblab_report_json(r, 0);
  CHECK(json.find("\"checks_run\": 12") != std::string::npos);
  CHECK(json.find("elapsed_ms") == std::string::npos);
  CHECK(std::string(coblab_report_text(r, 1)).find("PASS") != std::string::npos);
  coblab_report_free(r);
  coblab_config_free(c);

  REQUIRE(coblab_config_create("lambda-eta", "file:" COBLAB_TEST_DATA "/path6.tree", &c) == COBLAB_OK);
  CHECK(coblab_campaign_run(c, &r) == COBLAB_ERR_CONFIG);
  coblab_config_free(c);

  REQUIRE(coblab_config_create("bogus", "cayley:2", &c) == COBLAB_OK);
  CHECK(coblab_campaign_run(c, &r) == COBLAB_ERR_CONFIG);
  coblab_config_free(c);

  REQUIRE(coblab_config_create("qm-eval", "cayley:2", &c) == COBLAB_OK);
  REQUIRE(coblab_config_add_word(c, "ab") == COBLAB_OK);
  REQUIRE(coblab_config_set_radius(c, 3) == COBLAB_OK);
  REQUIRE(coblab_config_set_samples(c, 10) == COBLAB_OK);
  REQUIRE(coblab_config_set_seed(c, 7) == COBLAB_OK);
  REQUIRE(coblab_config_set_workers(c, 2) == COBLAB_OK);
  REQUIRE(coblab_campaign_run(c, &r) == COBLAB_OK);
  CHECK(coblab_report_passed(r) == 1);
  coblab_report_free(r);
  coblab_config_free(c);

  CHECK(coblab_config_set_samples(nullptr, 1) == COBLAB_ERR_INVALID_ARGUMENT);
  CHECK(coblab_campaign_run(nullptr, &r) == COBLAB_ERR_INVALID_ARGUMENT);
  CHECK(coblab_report_passed(nullptr) == 0);
  CHECK(coblab_report_json(nullptr, 0) == nullptr);
}
