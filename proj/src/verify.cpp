#include "nodalgen/verify.hpp"

#include "nodalgen/modforms.hpp"
#include "nodalgen/surfaces.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace nodalgen::verify {

Level parse_level(std::string_view name) {
  if (name == "quick")
    return Level::Quick;
  if (name == "full")
    return Level::Full;
  throw Error(ErrorCode::UnknownKind, "unknown verify level '" + std::string(name) + "'");
}

std::string_view level_name(Level level) { return level == Level::Full ? "full" : "quick"; }

std::string_view source_name(Source source) {
  switch (source) {
  case Source::Published: return "published";
  case Source::Derived: return "derived";
  case Source::Trivial: return "trivial";
  }
  return "derived";
}

namespace {

Source parse_source(std::string_view name) {
  if (name == "published")
    return Source::Published;
  if (name == "derived")
    return Source::Derived;
  if (name == "trivial")
    return Source::Trivial;
  throw Error(ErrorCode::ParseError, "unknown check source '" + std::string(name) + "'");
}

std::vector<BigInt> bigints(std::initializer_list<const char*> text) {
  std::vector<BigInt> out;
  for (const char* t : text)
    out.push_back(parse_bigint(t));
  return out;
}

Poly1 scaled(std::int64_t factor, std::initializer_list<std::int64_t> ascending) {
  std::vector<Rational> c;
  for (auto v : ascending)
    c.push_back(Rational(BigInt(std::to_string(v))) * Rational(BigInt(std::to_string(factor))));
  return Poly1(std::move(c));
}

} // namespace

const std::vector<BigInt>& published_b1() {
  static const std::vector<BigInt> values = bigints(
      {"1", "-1", "-5", "39", "-345", "2961", "-24866", "207759", "-1737670", "14584625", "-122937305", "1040906771",
       "-8852158628", "75598131215", "-648168748072", "5577807139921", "-48163964723088", "417210529188188",
       "-3624610235789053", "31575290280786530", "-275758194822813754"});
  return values;
}

const std::vector<BigInt>& published_b2() {
  static const std::vector<BigInt> values = bigints(
      {"1", "5", "2", "35", "-140", "986", "-6643", "48248", "-362700", "2802510", "-22098991", "177116726",
       "-1438544962", "11814206036", "-97940651274", "818498739637", "-6888195294592", "58324130994782",
       "-496519067059432", "4247266246317414", "-36488059346439524"});
  return values;
}

const std::vector<PublishedQ>& published_q() {
  static const std::vector<PublishedQ> values = {
      {8, scaled(-16, {1141616, 425202, 417490, -931146, 282855})},
      {9, scaled(-72, {-1724779, -1488377, -1011772, 268644, 128676})},
      {10, scaled(144, {98802690, 57779307, 7300210, -3710865, -15710500, 4345998})},
  };
  return values;
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

class Suite {
public:
  explicit Suite(const Options& options)
      : options_(options), cache_(options.cache ? *options.cache : own_cache_), engine_(cache_) {}

  Report run() {
    Report report;
    report.level = options_.level;
    auto add = [&](const char* name, Source source, std::string (Suite::*check)()) {
      CheckResult r;
      r.name = name;
      r.source = source;
      const auto start = std::chrono::steady_clock::now();
      try {
        r.detail = (this->*check)();
        r.passed = r.detail.empty();
        if (r.passed)
          r.detail = "ok";
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (options_.on_result)
        options_.on_result(r);
      report.checks.push_back(std::move(r));
    };
    add("b-series-q8", Source::Published, &Suite::b_series_short);
    if (options_.level == Level::Full)
      add("b-series-q20", Source::Published, &Suite::b_series_full);
    add("overdetermination", Source::Published, &Suite::overdetermination);
    add("q-polynomials", Source::Published, &Suite::q_polynomials);
    add("k3-genus-series", Source::Derived, &Suite::k3_series);
    add("abelian-genus-two", Source::Published, &Suite::abelian_genus_two);
    add("universal-polynomials", Source::Derived, &Suite::universal_sanity);
    add("multiplicativity", Source::Published, &Suite::multiplicativity);
    add("severi-classical", Source::Derived, &Suite::severi_classical);
    add("formal-identities", Source::Derived, &Suite::formal_identities);
    add("fit-idempotence", Source::Trivial, &Suite::fit_idempotence);
    return report;
  }

private:
  static constexpr int kShortN = 8;
  static constexpr int kWideN = 12;

  const FitResult& fit_short() {
    if (!fit_short_) {
      const std::vector<int> degrees{5, 6, 7, 8, 9};
      fit_short_ = fit_BC(severi_window(engine_, kShortN, degrees), kShortN, degrees, {false});
    }
    return *fit_short_;
  }

  const BSeriesPair& b_wide() {
    if (!b_wide_)
      b_wide_ = fitted_b_series(engine_, kWideN);
    return *b_wide_;
  }

  static std::string compare_b(const BSeriesPair& b, int n) {
    for (int i = 0; i <= n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (b.B1.coeff(i) != Rational(published_b1()[idx]))
        return "B1 at q^" + std::to_string(i) + ": " + to_string(b.B1.coeff(i));
      if (b.B2.coeff(i) != Rational(published_b2()[idx]))
        return "B2 at q^" + std::to_string(i) + ": " + to_string(b.B2.coeff(i));
    }
    return {};
  }

  std::string b_series_short() {
    if (!fit_short().consistent())
      return "fit from degrees 5..9 is inconsistent";
    return compare_b(fit_short().B, kShortN);
  }

  std::string b_series_full() {
    constexpr int n = 20;
    const std::vector<int> degrees{11, 12};
    const FitResult fit = fit_BC(severi_window(engine_, n, degrees), n, degrees);
    if (auto bad = compare_b(fit.B, n); !bad.empty())
      return bad;
    const std::vector<int> three{11, 12, 13};
    const ThreeDegreeReport c1 = fit3_verify_C1(severi_window(engine_, n, three), n, three);
    if (!c1.ok())
      return "three-degree C1 differs from (1/2) log(DG2/q)";
    return {};
  }

  std::string overdetermination() {
    const FitResult& fit = fit_short();
    if (fit.residuals.empty())
      return "no degree pairs";
    for (const auto& r : fit.residuals)
      if (sgn(r.c2_residual) != 0 || sgn(r.c3_residual) != 0)
        return "pair (" + std::to_string(r.d1) + "," + std::to_string(r.d2) + ") off at x^" + std::to_string(r.delta);
    return {};
  }

  std::string q_polynomials() {
    const auto polys = surfaces::node_polynomials(kWideN, b_wide());
    for (const auto& pq : published_q()) {
      const Poly1 q = surfaces::qmu_extract(pq.mu, polys);
      if (!(q.coefficients() == pq.Q.coefficients()))
        return "Q_" + std::to_string(pq.mu) + " = " + q.to_string("delta");
    }
    const auto short_polys = surfaces::node_polynomials(kShortN, fit_short().B);
    for (int mu = 0; mu <= 8; ++mu) {
      const Poly1 q = surfaces::qmu_extract(mu, polys);
      for (int delta = (mu + 1) / 2; delta <= kShortN; ++delta)
        if (surfaces::p_from_q(mu, delta, q) != short_polys[static_cast<std::size_t>(delta)].p(mu))
          return "p_" + std::to_string(mu) + "(" + std::to_string(delta) + ") disagrees with P_delta";
    }
    return {};
  }

  std::string k3_series() {
    constexpr int count = 30;
    // prod (1 - q^k)^{-1} by adding parts one size at a time
    std::vector<BigInt> partitions(count, BigInt(0));
    partitions[0] = 1;
    for (int part = 1; part < count; ++part)
      for (int n = part; n < count; ++n)
        partitions[static_cast<std::size_t>(n)] += partitions[static_cast<std::size_t>(n - part)];
    std::vector<BigInt> expected(count, BigInt(0));
    expected[0] = 1;
    for (int copy = 0; copy < 24; ++copy) {
      std::vector<BigInt> next(count, BigInt(0));
      for (int i = 0; i < count; ++i)
        for (int j = 0; i + j < count; ++j)
          next[static_cast<std::size_t>(i + j)] +=
              expected[static_cast<std::size_t>(i)] * partitions[static_cast<std::size_t>(j)];
      expected = std::move(next);
    }
    const RationalSeries s = surfaces::k3_genus_series(0, count - 1).series;
    for (int i = 0; i < count; ++i)
      if (s.coeff(i - 1) != Rational(expected[static_cast<std::size_t>(i)]))
        return "coefficient of q^" + std::to_string(i - 1);
    return {};
  }

  std::string abelian_genus_two() {
    constexpr int top = 50;
    const RationalSeries s = surfaces::abelian_genus_series(0, top + 1).series;
    for (long n = 1; n <= top; ++n) {
      long divisor_sum = 0;
      for (long k = 1; k <= n; ++k)
        if (n % k == 0)
          divisor_sum += k;
      if (s.coeff(static_cast<int>(n)) != Rational(BigInt(n * n * divisor_sum)))
        return "coefficient of q^" + std::to_string(n);
      if (surfaces::abelian_genus2_count(n) != BigInt(n * n * divisor_sum))
        return "abelian_genus2_count(" + std::to_string(n) + ")";
    }
    return {};
  }

  std::string universal_sanity() {
    const std::vector<Poly4> t = tdelta_universal(b_wide(), 10);
    if (!(t[0] == Poly4(Rational(1))))
      return "T_0 = " + t[0].to_string();
    if (!(t[1] == Poly4::parse("3 * x + 2 * y + 1 * t")))
      return "T_1 = " + t[1].to_string();
    for (int delta = 0; delta <= 10; ++delta)
      if (t[static_cast<std::size_t>(delta)].degree() > delta)
        return "deg T_" + std::to_string(delta) + " exceeds " + std::to_string(delta);
    return {};
  }

  std::string multiplicativity() {
    constexpr int n = 10;
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::int64_t> entry(-30, 30);
    auto random_geometry = [&] { return SurfaceGeometry{entry(rng), entry(rng), entry(rng), entry(rng)}; };
    for (int trial = 0; trial < 20; ++trial) {
      const SurfaceGeometry a = random_geometry(), b = random_geometry();
      const auto ta = tdelta_evaluate(a, b_wide(), n);
      const auto tb = tdelta_evaluate(b, b_wide(), n);
      const auto tab = tdelta_evaluate(a + b, b_wide(), n);
      for (int k = 0; k <= n; ++k) {
        Rational prod = 0;
        for (int i = 0; i <= k; ++i)
          prod += ta[static_cast<std::size_t>(i)] * tb[static_cast<std::size_t>(k - i)];
        if (prod != tab[static_cast<std::size_t>(k)])
          return "trial " + std::to_string(trial) + " at x^" + std::to_string(k);
      }
    }
    return {};
  }

  std::string severi_classical() {
    for (int d = 1; d <= 12; ++d)
      if (engine_.degree(d, 0) != 1)
        return "N^{" + std::to_string(d) + ",0}";
    const std::array<std::array<int, 3>, 4> known{{{2, 1, 3}, {3, 1, 12}, {3, 2, 21}, {4, 3, 675}}};
    for (const auto& [d, delta, value] : known)
      if (engine_.degree(d, delta) != value)
        return "N^{" + std::to_string(d) + "," + std::to_string(delta) + "}";
    const auto polys = surfaces::node_polynomials(kShortN, fit_short().B);
    for (int delta = 0; delta <= kShortN; ++delta)
      for (int d = 1; d <= 9; ++d)
        if (delta <= 2 * d - 2 &&
            polys[static_cast<std::size_t>(delta)].P.eval(Rational(d)) != Rational(engine_.degree(d, delta)))
          return "P_" + std::to_string(delta) + "(" + std::to_string(d) + ")";
    return {};
  }

  std::string formal_identities() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5), prec(2, 10);
    auto rational = [&] { return make_rational(BigInt(num(rng)), BigInt(den(rng))); };
    auto series = [&](int v, int p, bool unit_lead) {
      std::vector<Rational> c;
      for (int i = v; i < p; ++i)
        c.push_back(rational());
      if (unit_lead)
        c[0] = 1;
      while (sgn(c[0]) == 0)
        c[0] = rational();
      return RationalSeries::from_coefficients(v, std::move(c), p);
    };
    for (int trial = 0; trial < 100; ++trial) {
      const RationalSeries f = series(0, prec(rng), true);
      if (!(exp(log(f)) == f))
        return "exp(log f) != f on trial " + std::to_string(trial);
    }
    for (int trial = 0; trial < 100; ++trial) {
      const int p = prec(rng);
      const RationalSeries f = series(0, p, false);
      const RationalSeries g = series(1, p + 1, false);
      const auto coeffs = expand_in_base(f, g);
      const RationalSeries back = evaluate_in_base(coeffs, g);
      const int common = std::min(back.precision(), f.precision());
      if (common < p || !(back.truncated(common) == f.truncated(common)))
        return "base expansion round trip on trial " + std::to_string(trial);
    }
    if (!surfaces::abelian_egf_check(16, 5))
      return "abelian generating-function identity";
    constexpr int p = 20;
    const RationalSeries e = surfaces::enriques_genus_series(0, p).series;
    const RationalSeries ratio = shifted(modforms::d2g2(p + 1), -1) / shifted(modforms::delta(p + 1), -1);
    if (!(e * e == ratio))
      return "Enriques series squared";
    for (int n = 1; n <= 5; ++n)
      for (int m = n + 1; m <= 5; ++m)
        if (tdelta_evaluate(surfaces::ruled(0, n, m), b_wide(), 10) !=
            tdelta_evaluate(surfaces::ruled(0, m, n), b_wide(), 10))
          return "P1xP1 symmetry for (" + std::to_string(n) + "," + std::to_string(m) + ")";
    return {};
  }

  // Refit from the cached Severi values; the fitted series must reproduce
  // values computed without the cache, and a second fit from its own
  // predictions must return the same series.
  std::string fit_idempotence() {
    const std::vector<int> degrees{5, 6, 7, 8, 9};
    const FitResult& first = fit_short();
    severi::MemoCache scratch;
    severi::SeveriEngine fresh(scratch);
    const severi::SeveriTable reference = severi_window(fresh, kShortN, degrees);
    if (!first.consistent())
      return "cached Severi values give an inconsistent fit";
    if (!fit_reproduction_mismatches(first, reference).empty())
      return "fitted series do not reproduce uncached Severi degrees";
    severi::SeveriTable predicted;
    for (int d : degrees) {
      const auto t = tdelta_evaluate(surfaces::p2(d), first.B, std::min(kShortN, 2 * d - 2));
      for (std::size_t delta = 0; delta < t.size(); ++delta)
        predicted.emplace(std::make_pair(d, static_cast<int>(delta)), t[delta].get_num());
    }
    const FitResult second = fit_BC(predicted, kShortN, degrees);
    if (!(second.B.B1 == first.B.B1) || !(second.B.B2 == first.B.B2))
      return "refit changed the B-series";
    return {};
  }

  Options options_;
  severi::MemoCache own_cache_;
  severi::MemoCache& cache_;
  severi::SeveriEngine engine_;
  std::optional<FitResult> fit_short_;
  std::optional<BSeriesPair> b_wide_;
};

} // namespace

Report run(const Options& options) { return Suite(options).run(); }

io::json to_json(const Report& report) {
  io::json checks = io::json::array();
  for (const auto& c : report.checks) {
    std::ostringstream secs;
    secs.precision(3);
    secs << std::fixed << c.seconds;
    checks.push_back({{"name", c.name},
                      {"source", std::string(source_name(c.source))},
                      {"passed", c.passed},
                      {"seconds", secs.str()},
                      {"detail", c.detail}});
  }
  return {{"level", std::string(level_name(report.level))}, {"all_passed", report.all_passed()}, {"checks", checks}};
}

Report report_from_json(const io::json& doc) {
  try {
    Report report;
    report.level = parse_level(doc.at("level").get<std::string>());
    for (const auto& c : doc.at("checks")) {
      CheckResult r;
      r.name = c.at("name").get<std::string>();
      r.source = parse_source(c.at("source").get<std::string>());
      r.passed = c.at("passed").get<bool>();
      r.seconds = std::stod(c.at("seconds").get<std::string>());
      r.detail = c.at("detail").get<std::string>();
      report.checks.push_back(std::move(r));
    }
    if (doc.at("all_passed").get<bool>() != report.all_passed())
      throw Error(ErrorCode::ParseError, "all_passed flag disagrees with the checks");
    return report;
  } catch (const io::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("verify report: ") + e.what());
  }
}

} // namespace nodalgen::verify
