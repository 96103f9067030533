// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gradlab/gradlab.h"

namespace {

const char* kConstant = "[geometry]\nn = 3\nR = 1\n[coefficients]\na = 2\nb = -2\n[solver]\ngrid = 128\n[checks]\nid = k\ncase = cor1\n";

gradlab_scenario* parse(const char* text) {
  gradlab_scenario* s = nullptr;
  REQUIRE(gradlab_scenario_parse(text, &s) == GRADLAB_OK);
  return s;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::strlen(gradlab_version()) > 0);
  gradlab_scenario* s = nullptr;
  CHECK(gradlab_scenario_parse(nullptr, &s) == GRADLAB_E_INVALID_ARGUMENT);
  CHECK(std::strlen(gradlab_last_error()) > 0);
  CHECK(gradlab_scenario_parse("[geometry]\n", nullptr) == GRADLAB_E_INVALID_ARGUMENT);
}

TEST_CASE("config errors report the line") {
  gradlab_scenario* s = nullptr;
  CHECK(gradlab_scenario_parse("[geometry]\nn = 3\nbogus = 1\n", &s) == GRADLAB_E_CONFIG);
  CHECK(s == nullptr);
  CHECK(gradlab_last_error_line() == 3);
  CHECK(std::string(gradlab_last_error()).find("geometry.bogus") != std::string::npos);
  CHECK(gradlab_scenario_load("/nonexistent.cfg", &s) == GRADLAB_E_IO);
}

TEST_CASE("serialize uses the size query idiom") {
  gradlab_scenario* s = parse(kConstant);
  size_t needed = 0;
  CHECK(gradlab_scenario_serialize(s, nullptr, 0, &needed) == GRADLAB_E_BUFFER_TOO_SMALL);
  REQUIRE(needed > 1);
  std::vector<char> small(needed - 1);
  CHECK(gradlab_scenario_serialize(s, small.data(), small.size(), &needed) == GRADLAB_E_BUFFER_TOO_SMALL);
  std::vector<char> buf(needed);
  REQUIRE(gradlab_scenario_serialize(s, buf.data(), buf.size(), &needed) == GRADLAB_OK);
  CHECK(std::strlen(buf.data()) + 1 == needed);
  gradlab_scenario* back = parse(buf.data());
  int eq = 0;
  REQUIRE(gradlab_scenario_equal(s, back, &eq) == GRADLAB_OK);
  CHECK(eq == 1);
  REQUIRE(gradlab_scenario_set(back, "R", "2") == GRADLAB_OK);
  gradlab_scenario_equal(s, back, &eq);
  CHECK(eq == 0);
  CHECK(gradlab_scenario_set(back, "a", "tanh:0,1,1,1") == GRADLAB_E_CONFIG);
  gradlab_scenario* copy = nullptr;
  REQUIRE(gradlab_scenario_clone(back, &copy) == GRADLAB_OK);
  gradlab_scenario_equal(copy, back, &eq);
  CHECK(eq == 1);
  gradlab_scenario_destroy(copy);
  gradlab_scenario_destroy(back);
  gradlab_scenario_destroy(s);
  gradlab_scenario_destroy(nullptr);
}

TEST_CASE("run a case and read rows") {
  gradlab_scenario* s = parse(kConstant);
  gradlab_report* r = nullptr;
  REQUIRE(gradlab_run_case(s, 0, &r) == GRADLAB_OK);
  CHECK(gradlab_report_all_passed(r) == 1);
  CHECK(gradlab_report_solver_failed(r) == 0);
  const size_t n = gradlab_report_size(r);
  REQUIRE(n >= 3);
  bool saw_thm1 = false;
  for (size_t i = 0; i < n; ++i) {
    gradlab_row row;
    REQUIRE(gradlab_report_row(r, i, &row) == GRADLAB_OK);
    CHECK(std::string(row.case_id) == "k");
    if (std::string(row.check) == "thm1") {
      saw_thm1 = true;
      CHECK(row.lhs_max == doctest::Approx(3.0).epsilon(1e-9));
      CHECK(row.pass == 1);
      REQUIRE(gradlab_report_diagnostic_count(r, i) >= 1);
      const char* name = nullptr;
      double v = 0;
      CHECK(gradlab_report_diagnostic(r, i, 0, &name, &v) == GRADLAB_OK);
      CHECK(std::string(name) == "r_at_max");
    }
  }
  CHECK(saw_thm1);
  gradlab_row row;
  CHECK(gradlab_report_row(r, n, &row) == GRADLAB_E_INVALID_ARGUMENT);
  size_t needed = 0;
  CHECK(gradlab_report_csv(r, nullptr, 0, &needed) == GRADLAB_E_BUFFER_TOO_SMALL);
  std::string csv(needed, '\0');
  REQUIRE(gradlab_report_csv(r, csv.data(), csv.size(), &needed) == GRADLAB_OK);
  CHECK(csv.rfind("case_id,check,", 0) == 0);
  gradlab_report_destroy(r);
  gradlab_scenario_destroy(s);
}

TEST_CASE("sweep through the C API") {
  gradlab_scenario* s = parse(kConstant);
  const char* params[] = {"R=1,2"};
  gradlab_report* r = nullptr;
  REQUIRE(gradlab_run_sweep(s, params, 1, 0, &r) == GRADLAB_OK);
  gradlab_row first, last;
  gradlab_report_row(r, 0, &first);
  gradlab_report_row(r, gradlab_report_size(r) - 1, &last);
  CHECK(std::string(first.case_id) == "k-0");
  CHECK(std::string(last.case_id) == "k-1");
  gradlab_report_destroy(r);
  const char* bad[] = {"nokey"};
  CHECK(gradlab_run_sweep(s, bad, 1, 0, &r) == GRADLAB_E_CONFIG);
  gradlab_scenario_destroy(s);
}

TEST_CASE("elliptic and parabolic handles") {
  gradlab_scenario* s = parse(kConstant);
  gradlab_elliptic* e = nullptr;
  REQUIRE(gradlab_solve_elliptic(s, &e) == GRADLAB_OK);
  const size_t n = gradlab_elliptic_size(e);
  CHECK(n == 129);
  std::vector<double> r(n), u(n);
  REQUIRE(gradlab_elliptic_values(e, r.data(), u.data(), n) == GRADLAB_OK);
  CHECK(r.back() == 2.0);
  for (double v : u) CHECK(std::abs(v - std::exp(1.0)) < 1e-10);
  CHECK(gradlab_elliptic_residual(e) <= 1e-10);
  CHECK(gradlab_elliptic_iterations(e) >= 0);
  gradlab_elliptic_destroy(e);
  gradlab_scenario_destroy(s);

  gradlab_scenario* p =
      parse("[coefficients]\ninitial = gaussian:0.5,0.5,0,1\n[solver]\ngrid = 64\ntau = 0.05\nT = 0.5\n[checks]\ncase = thm2\n");
  gradlab_trajectory* t = nullptr;
  REQUIRE(gradlab_solve_parabolic(p, &t) == GRADLAB_OK);
  CHECK(gradlab_trajectory_snapshots(t) >= 11);
  CHECK(gradlab_trajectory_nodes(t) == 65);
  CHECK(gradlab_trajectory_time(t, 2) == doctest::Approx(0.1));
  std::vector<double> tr(65), tu(65);
  REQUIRE(gradlab_trajectory_values(t, 0, tr.data(), tu.data(), 65) == GRADLAB_OK);
  CHECK(tu[0] == doctest::Approx(1.0));
  CHECK(gradlab_trajectory_values(t, 1000, tr.data(), tu.data(), 65) == GRADLAB_E_INVALID_ARGUMENT);
  gradlab_trajectory_destroy(t);
  gradlab_scenario_destroy(p);
}

TEST_CASE("selftest") {
  gradlab_report* r = nullptr;
  REQUIRE(gradlab_selftest(&r) == GRADLAB_OK);
  CHECK(gradlab_report_size(r) >= 7);
  CHECK(gradlab_report_all_passed(r) == 1);
  gradlab_report_destroy(r);
}
