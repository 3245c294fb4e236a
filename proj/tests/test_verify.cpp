#include <doctest.h>

#include "confalg/errors.hpp"
#include "confalg/verify.hpp"

using namespace confalg;

TEST_CASE("run_suite rejects unknown selectors and bad configurations") {
  const RecordSink ignore = [](const CheckRecord&) {};
  CHECK_THROWS_AS(run_suite("bogus", {}, ignore), DomainError);
  VerifyConfig small;
  small.trunc = 3;
  CHECK_THROWS_AS(run_suite("operad", small, ignore), DomainError);
  VerifyConfig zero;
  zero.tol = 0.0;
  CHECK_THROWS_AS(run_suite("operad", zero, ignore), DomainError);
}

TEST_CASE("operad suite passes and counts its records") {
  int seen = 0;
  const SuiteResult r = run_suite("operad", {}, [&](const CheckRecord& rec) {
    ++seen;
    CHECK(rec.pass);
  });
  CHECK(r.checks == seen);
  CHECK(r.failures == 0);
  CHECK(r.checks > 0);
}

TEST_CASE("an impossible tolerance turns passing checks into failures") {
  VerifyConfig strict;
  strict.tol = 1e-300;
  int failures = 0;
  check_cocycle_identity(strict, 3, 10, [&](const CheckRecord& r) { failures += !r.pass; });
  CHECK(failures > 0);
}

TEST_CASE("the worked cocycle example is reported") {
  bool found = false;
  check_schwarzian_diagonal({}, 1, 8, [&](const CheckRecord& r) {
    if (r.check == "cocycle_example.A00") {
      found = true;
      CHECK(r.lhs.real() == doctest::Approx(-0.01).epsilon(1e-12));
      CHECK(r.pass);
    }
  });
  CHECK(found);
}

TEST_CASE("same seed, same records") {
  auto collect = [](std::uint64_t seed) {
    VerifyConfig c;
    c.seed = seed;
    std::vector<double> out;
    check_anomaly(c, 3, 2, [&](const CheckRecord& r) { out.push_back(r.residual); out.push_back(r.lhs.real()); });
    return out;
  };
  CHECK(collect(4) == collect(4));
  CHECK(collect(4) != collect(5));
}
