#include "nodalgen/severi.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <fstream>
#include <thread>

using namespace nodalgen;
using namespace nodalgen::severi;

namespace {

SeveriKey key(int d, int delta, std::vector<int> alpha, std::vector<int> beta) {
  return {d, delta, TangencyProfile(std::move(alpha)), TangencyProfile(std::move(beta))};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nodalgen_test_" + name);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

} // namespace

TEST_CASE("tangency profiles") {
  const TangencyProfile p({1, 0, 2, 0, 0});
  CHECK(p.to_string() == "1,0,2");
  CHECK(p.weight() == 7);
  CHECK(p.length() == 3);
  CHECK(p[1] == 1);
  CHECK(p[3] == 2);
  CHECK(p[9] == 0);
  CHECK(TangencyProfile::parse("1,0,2,0") == p);
  CHECK(TangencyProfile::parse("").empty());
  CHECK(TangencyProfile::unit(2, 3).to_string() == "0,3");
  CHECK(p.adjusted(3, -2).to_string() == "1");
  CHECK(TangencyProfile({1}).leq(p));
  CHECK_FALSE(p.leq(TangencyProfile({1})));
  CHECK(code_of([] { TangencyProfile({1, -1}); }) == ErrorCode::InvalidProfile);
  CHECK(code_of([] { TangencyProfile::parse("1,-1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { TangencyProfile::parse("1,x"); }) == ErrorCode::ParseError);
}

TEST_CASE("memo keys") {
  const SeveriKey k = key(5, 3, {1, 0, 1}, {1});
  CHECK(k.valid());
  CHECK(k.canonical() == "5:3:1,0,1|1");
  CHECK(SeveriKey::parse(k.canonical()) == k);
  CHECK(SeveriKey::parse("4:0:|4") == key(4, 0, {}, {4}));
  CHECK(code_of([] { SeveriKey::parse("4:0:4"); }) == ErrorCode::ParseError);

  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> deg(1, 40), small(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    SeveriKey r;
    r.d = deg(rng);
    r.delta = deg(rng) * 7;
    std::vector<int> a(static_cast<std::size_t>(small(rng)));
    for (auto& v : a)
      v = small(rng);
    r.alpha = TangencyProfile(a);
    int rest = r.d - r.alpha.weight();
    if (rest < 0)
      continue;
    r.beta = TangencyProfile::unit(1, rest);
    CHECK(unpack_key(pack_key(r)) == r);
    CHECK(SeveriKey::parse(r.canonical()) == r);
  }
}

TEST_CASE("relative degrees from the recursion") {
  MemoCache cache;
  CHECK(severi_rel(key(1, 0, {}, {1}), cache) == 1);
  CHECK(severi_rel(key(1, 0, {1}, {}), cache) == 1);
  CHECK(severi_rel(key(2, 1, {}, {2}), cache) == 3);
  CHECK(severi_rel(key(3, 2, {}, {3}), cache) == 21);
  CHECK(severi_rel(key(1, 1, {}, {1}), cache) == 0);
  CHECK(code_of([&] { severi_rel(key(3, 0, {1}, {1}), cache); }) == ErrorCode::InvalidProfile);
  // conics through 4 points tangent to a line: 2
  CHECK(severi_rel(key(2, 0, {}, {0, 1}), cache) == 2);
  // conic through 3 points tangent to the line at a given point: 1
  CHECK(severi_rel(key(2, 0, {0, 1}, {}), cache) == 1);
}

TEST_CASE("classical Severi degrees") {
  MemoCache cache;
  for (int d = 1; d <= 12; ++d)
    CHECK(severi_degree(d, 0, cache) == 1);
  CHECK(severi_degree(3, 1, cache) == 12);
  CHECK(severi_degree(4, 3, cache) == 675);
  CHECK(severi_degree(4, 7, cache) == 0);
  CHECK(severi_degree(5, 11, cache) == 0);
}

TEST_CASE("closed forms for up to three nodes") {
  MemoCache cache;
  for (int delta = 1; delta <= 3; ++delta)
    for (int d = std::max(1, (delta + 3) / 2); d <= 14; ++d)
      CHECK(Rational(severi_degree(d, delta, cache)) == oracle::severi_closed(delta, d));
}

TEST_CASE("curves with the maximal number of nodes are unions of lines") {
  MemoCache cache;
  for (int d = 1; d <= 7; ++d)
    CHECK(severi_degree(d, d * (d - 1) / 2, cache) == oracle::line_configurations(d));
}

TEST_CASE("tables do not depend on traversal order or pruning") {
  MemoCache a, b, c;
  const auto forward = SeveriEngine(a).table(8, 14);
  const auto reverse = SeveriEngine(b, {TraversalOrder::Reverse, true}).table(8, 14);
  const auto unpruned = SeveriEngine(c, {TraversalOrder::Forward, false}).table(8, 14);
  CHECK(forward == reverse);
  CHECK(forward == unpruned);
  CHECK(forward.size() == 8 * 15);
  CHECK(forward.at({6, 4}) == severi_table(6, 4, a).at({6, 4}));
}

TEST_CASE("table reports progress") {
  MemoCache cache;
  int calls = 0;
  const auto t = severi_table(3, 1, cache, [&](int, int) { ++calls; });
  CHECK(calls == 6);
  CHECK(t.at({2, 1}) == 3);
  CHECK(t.at({3, 1}) == 12);
}

TEST_CASE("memo cache is write-once") {
  MemoCache cache;
  const SeveriKey k = key(3, 1, {}, {3});
  cache.insert(k, 12);
  cache.insert(k, 12);
  CHECK(cache.size() == 1);
  CHECK_THROWS_AS(cache.insert(k, 13), std::logic_error);
  CHECK(*cache.find(k) == 12);
  cache.overwrite(k, 13);
  CHECK(*cache.find(k) == 13);
  CHECK_FALSE(cache.find(key(3, 2, {}, {3})).has_value());
}

TEST_CASE("cache files round trip") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> deg(1, 30), delta(0, 400);
  MemoCache cache;
  while (cache.size() < 10000) {
    const int d = deg(rng);
    BigInt value;
    mpz_ui_pow_ui(value.get_mpz_t(), 7, static_cast<unsigned long>(delta(rng)));
    const SeveriKey k = key(d, delta(rng), {}, {d});
    if (!cache.find(k))
      cache.insert(k, value);
  }
  const auto path = temp_file("roundtrip.txt");
  cache.save(path);
  const MemoCache back = MemoCache::load(path);
  CHECK(back.entries() == cache.entries());
  std::filesystem::remove(path);
}

TEST_CASE("cache file errors") {
  const auto empty = temp_file("empty.txt");
  std::ofstream(empty).close();
  CHECK(MemoCache::load(empty).size() == 0);

  const auto corrupt = temp_file("corrupt.txt");
  {
    std::ofstream f(corrupt);
    f << kCacheHeader << "\n3:1:|3=12\n3:1|3=x\n";
  }
  CHECK(code_of([&] { MemoCache::load(corrupt); }) == ErrorCode::FormatVersionMismatch);

  const auto other = temp_file("other.txt");
  {
    std::ofstream f(other);
    f << "# nodalgen severi-cache v0 genus-form\n3:1:|3=12\n";
  }
  CHECK(code_of([&] { MemoCache::load(other); }) == ErrorCode::FormatVersionMismatch);

  CHECK(code_of([] { MemoCache::load(temp_file("missing/none.txt")); }) == ErrorCode::IoFailure);
  MemoCache c;
  c.insert(key(1, 0, {}, {1}), 1);
  CHECK(code_of([&] { c.save(temp_file("missing/none.txt")); }) == ErrorCode::IoFailure);
  for (const auto& p : {empty, corrupt, other})
    std::filesystem::remove(p);
}

TEST_CASE("cached values are reused") {
  MemoCache cache;
  SeveriEngine first(cache);
  const BigInt v = first.degree(7, 9);
  CHECK(first.evaluations() > 0);
  SeveriEngine second(cache);
  CHECK(second.degree(7, 9) == v);
  CHECK(second.evaluations() <= 1);
}

TEST_CASE("engines sharing a cache across threads agree") {
  MemoCache shared;
  std::vector<BigInt> results(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i)
    threads.emplace_back([&, i] {
      SeveriEngine engine(shared, {i % 2 ? TraversalOrder::Reverse : TraversalOrder::Forward, true});
      results[static_cast<std::size_t>(i)] = engine.degree(8, 10 + i % 2);
    });
  for (auto& t : threads)
    t.join();
  MemoCache alone;
  CHECK(results[0] == severi_degree(8, 10, alone));
  CHECK(results[1] == severi_degree(8, 11, alone));
  CHECK(results[2] == results[0]);
  CHECK(results[3] == results[1]);
}
