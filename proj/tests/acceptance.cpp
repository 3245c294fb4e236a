// One line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>

#include "confalg/verify.hpp"

using namespace confalg;

namespace {

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(const VerifyConfig&, const RecordSink&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  // optional criterion ids to run a subset
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const VerifyConfig cfg;  // default tolerances and seed 1
  const std::vector<Criterion> criteria{
      {1, "mobius cocycle vanishing", 10,
       [](auto& c, auto& s) { check_mobius_vanishing(c, 20, s); }},
      {2, "cocycle identity", 10,
       [](auto& c, auto& s) { check_cocycle_identity(c, 20, 50, s); }},
      {3, "schwarzian diagonal", 5,
       [](auto& c, auto& s) { check_schwarzian_diagonal(c, 10, 16, s); }},
      {4, "gegenbauer addition formula", 30,
       [](auto& c, auto& s) { check_addition_formula(c, 8, 50, s); }},
      {5, "green expansion decay rate", 5,
       [](auto& c, auto& s) { check_green_decay(c, s); }},
      {6, "delta reproduction", 60,
       [](auto& c, auto& s) { check_delta_reproduction(c, 50, 50, s); }},
      {7, "growth certificates", 10,
       [](auto& c, auto& s) { check_growth(c, s); }},
      {8, "oracle vs closed-form contraction", 300,
       [](auto& c, auto& s) { check_oracle_contraction(c, 20, 5, s); }},
      {9, "conformal invariance d=3", 30,
       [](auto& c, auto& s) { check_conformal_invariance(c, 10, 20, s); }},
      {10, "d=2 anomaly identity", 30,
       [](auto& c, auto& s) { check_anomaly(c, 20, 10, s); }},
      {11, "operad compatibility", 30,
       [](auto& c, auto& s) { check_operad_compatibility(c, 20, s); }},
      {12, "wick combinatorics", 5,
       [](auto& c, auto& s) { check_wick(c, 10, s); }},
  };
  int failed = 0;
  int ran = 0;
  for (const Criterion& cr : criteria) {
    if (!only.empty() && !only.count(cr.id)) continue;
    ++ran;
    int checks = 0, failures = 0;
    double worst = 0.0;  // largest residual / tolerance ratio
    std::string first_failure;
    std::string error;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(cfg, [&](const CheckRecord& r) {
        ++checks;
        if (r.tolerance > 0) worst = std::max(worst, r.residual / r.tolerance);
        if (!r.pass) {
          ++failures;
          if (first_failure.empty()) first_failure = r.check;
        }
      });
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= cr.limit_s;
    const bool pass = error.empty() && checks > 0 && failures == 0 && in_time;
    if (!pass) ++failed;
    std::printf("[C%d] %s %s: checks=%d failures=%d worst_residual/tol=%.2e time=%.2fs limit=%.0fs", cr.id,
                pass ? "PASS" : "FAIL", cr.name, checks, failures, worst, secs, cr.limit_s);
    if (!first_failure.empty()) std::printf(" first_failure=%s", first_failure.c_str());
    if (!in_time) std::printf(" over_time");
    if (!error.empty()) std::printf(" error=\"%s\"", error.c_str());
    std::printf("\n");
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
