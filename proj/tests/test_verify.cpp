#include "nodalgen/verify.hpp"

#include "support.hpp"

#include <set>

using namespace nodalgen;

TEST_CASE("published tables are well formed") {
  CHECK(verify::published_b1().size() == 21);
  CHECK(verify::published_b2().size() == 21);
  CHECK(verify::published_b1()[1] == -1);
  CHECK(verify::published_b2()[1] == 5);
  REQUIRE(verify::published_q().size() == 3);
  CHECK(verify::published_q()[0].mu == 8);
  CHECK(verify::published_q()[2].Q.degree() == 5);
}

TEST_CASE("names") {
  for (auto l : {verify::Level::Quick, verify::Level::Full})
    CHECK(verify::parse_level(verify::level_name(l)) == l);
  CHECK_THROWS_AS(verify::parse_level("slow"), Error);
  std::set<std::string_view> names;
  for (auto s : {verify::Source::Published, verify::Source::Derived, verify::Source::Trivial})
    names.insert(verify::source_name(s));
  CHECK(names.size() == 3);
}

TEST_CASE("quick suite passes and reports every check") {
  severi::MemoCache cache;
  int seen = 0;
  verify::Options options;
  options.cache = &cache;
  options.on_result = [&](const verify::CheckResult&) { ++seen; };
  const verify::Report report = verify::run(options);
  CHECK(report.all_passed());
  CHECK(seen == static_cast<int>(report.checks.size()));
  CHECK(report.checks.size() == 10);
  for (const auto& c : report.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(cache.size() > 0);
}

TEST_CASE("a corrupted cache entry is caught") {
  severi::MemoCache cache;
  {
    severi::SeveriEngine engine(cache);
    engine.degree(7, 3);
  }
  severi::SeveriKey key;
  key.d = 7;
  key.delta = 3;
  key.beta = severi::TangencyProfile::unit(1, 7);
  const BigInt good = *cache.find(key);
  cache.overwrite(key, good + 1);
  verify::Options options;
  options.cache = &cache;
  const verify::Report report = verify::run(options);
  CHECK_FALSE(report.all_passed());
  bool idempotence_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "fit-idempotence")
      idempotence_failed = !c.passed;
  CHECK(idempotence_failed);
}
