#include "doctest.h"
#include "fixtures.hpp"
#include "xcom/check.hpp"

using namespace xcom;
using namespace xcom::check;

TEST_SUITE("check") {
  TEST_CASE("generation is deterministic per seed") {
    auto a = corpus(7, 20), b = corpus(7, 20), c = corpus(8, 20);
    REQUIRE(a.size() == 20);
    bool all_same = true, any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      all_same = all_same && (*a[i] == *b[i]);
      any_diff = any_diff || !(*a[i] == *c[i]);
    }
    CHECK(all_same);
    CHECK(any_diff);
  }

  TEST_CASE("generated programs are closed and terminate") {
    for (const auto& p : corpus(3, 50)) {
      auto o = run_backend(Backend::Interp, *p);
      CHECK_MESSAGE(o.ok(), describe(o));
    }
  }

  TEST_CASE("backends agree on the even list") {
    auto p = parse_program(fixtures::read("even_list.xcom"));
    auto cmp = compare_backends(*p);
    CHECK(cmp.verdict == Verdict::Agree);
    for (const auto& o : cmp.outcomes) CHECK(o.ok());
  }

  TEST_CASE("unknown types are the expected asymmetry") {
    auto p = parse_program(fixtures::read("unknown_type.xcom"));
    auto cmp = compare_backends(*p);
    CHECK(cmp.verdict == Verdict::ExpectedAsymmetry);
    CHECK(cmp.outcomes[2].error == ErrorKind::UnknownType);
    CHECK(cmp.outcomes[3].error == ErrorKind::UnknownType);
  }

  TEST_CASE("same error kind on every backend counts as agreement") {
    auto p = parse_program("begin value x is 1 mod 0 end end");
    auto cmp = compare_backends(*p);
    CHECK(cmp.verdict == Verdict::Agree);
    for (const auto& o : cmp.outcomes) CHECK(o.error == ErrorKind::DivisionByZero);
  }

  TEST_CASE("seed 7 reports clean") {
    auto r = run_check(7, 200);
    CHECK(r.count == 200);
    CHECK(r.divergences.empty());
    CHECK(r.stack_verified == 200);
    CHECK(r.erasure_clean == 200);
    CHECK(r.clean());
    CHECK(format_report(r).rfind("check seed=7 count=200: ", 0) == 0);
  }
}
