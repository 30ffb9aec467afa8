#include "nodalgen/universal.hpp"

#include "nodalgen/modforms.hpp"

#include <algorithm>

namespace nodalgen {

namespace {

RationalSeries dg2_over_q(int precision) { return shifted(modforms::dg2(precision + 1), -1); }

RationalSeries delta_d2g2_over_q2(int precision) {
  return shifted(modforms::delta(precision + 1), -1) * shifted(modforms::d2g2(precision + 1), -1);
}

// chi(L) log(DG2/q) + K^2 log B1 + LK log B2 - (chi(O)/2) log(Delta D^2G2/q^2)
RationalSeries log_rhs(const SurfaceGeometry& g, const BSeriesPair& b, int precision) {
  const int p = std::min(precision, b.precision());
  return log_dg2_over_q(p) * g.chi_L() + log(b.B1.truncated(p)) * Rational(g.K2) +
         log(b.B2.truncated(p)) * Rational(g.LK) - log_delta_d2g2_over_q2(p) * (g.chi_O() / 2);
}

void require_b_precision(const BSeriesPair& b, int needed) {
  if (b.precision() < needed)
    throw Error(ErrorCode::OutOfPrecision, "B-series known to q^" + std::to_string(b.precision()) +
                                               ", need precision " + std::to_string(needed));
}

} // namespace

RationalSeries log_dg2_over_q(int precision) { return log(dg2_over_q(precision)); }

RationalSeries log_delta_d2g2_over_q2(int precision) { return log(delta_d2g2_over_q2(precision)); }

RationalSeries conjecture_rhs(const SurfaceGeometry& geom, const BSeriesPair& b, int precision) {
  return exp(log_rhs(geom, b, precision));
}

PolySeries conjecture_rhs_symbolic(const BSeriesPair& b, int precision) {
  const int p = std::min(precision, b.precision());
  const Poly4 x = Poly4::x(), y = Poly4::y(), z = Poly4::z(), t = Poly4::t();
  const Poly4 chi_o = (z + t) * Rational(1, 12);
  const Poly4 chi_l = (x - y) * Rational(1, 2) + chi_o;
  const PolySeries log_sum = lift<Poly4>(log_dg2_over_q(p)) * chi_l + lift<Poly4>(log(b.B1.truncated(p))) * z +
                             lift<Poly4>(log(b.B2.truncated(p))) * y -
                             lift<Poly4>(log_delta_d2g2_over_q2(p)) * (chi_o * Rational(1, 2));
  return exp(log_sum);
}

std::vector<Poly4> tdelta_universal(const BSeriesPair& b, int max_delta) {
  require_b_precision(b, max_delta + 1);
  const int p = max_delta + 1;
  return expand_in_base(conjecture_rhs_symbolic(b, p), modforms::dg2(p + 1));
}

std::vector<Rational> tdelta_evaluate(const SurfaceGeometry& geom, const BSeriesPair& b, int max_delta) {
  require_b_precision(b, max_delta + 1);
  const int p = max_delta + 1;
  return expand_in_base(conjecture_rhs(geom, b, p), modforms::dg2(p + 1));
}

LogParts universal_log_parts(const BSeriesPair& b, int precision) {
  const int p = std::min(precision, b.precision());
  const RationalSeries l1 = log_dg2_over_q(p);
  const RationalSeries l2 = log_delta_d2g2_over_q2(p);
  const RationalSeries lb1 = log(b.B1.truncated(p));
  const RationalSeries lb2 = log(b.B2.truncated(p));
  LogParts parts;
  parts.A1 = l1 * Rational(1, 2);
  parts.A2 = l1 * Rational(-1, 2) + lb2;
  parts.A3 = l1 * Rational(1, 12) + lb1 - l2 * Rational(1, 24);
  parts.A4 = l1 * Rational(1, 12) - l2 * Rational(1, 24);
  return parts;
}

RationalSeries nr_series(const SurfaceGeometry& geom, std::int64_t m, int r, const BSeriesPair& b, int precision) {
  const Rational chi_o = geom.chi_O();
  if (!is_integer(chi_o))
    throw Error(ErrorCode::NonIntegralEulerCharacteristic,
                "chi(O_S) = " + to_string(chi_o) + " leaves a fractional power of q");
  const int shift = r + 1 - static_cast<int>(chi_o.get_num().get_si());
  const int rel = precision - shift;
  if (rel <= 0)
    return RationalSeries::zero(precision);
  const int p = std::min(rel, b.precision());
  RationalSeries unit = log(b.B1.truncated(p)) * Rational(geom.K2) + log(b.B2.truncated(p)) * Rational(m) -
                        log_delta_d2g2_over_q2(p) * (chi_o / 2);
  RationalSeries body = exp(unit) * shifted(modforms::d2g2(p + 1), -1);
  if (r > 0)
    body = body * pow(dg2_over_q(p), static_cast<long>(r));
  return shifted(body, shift);
}

bool FitResult::consistent() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const PairResidual& r) {
    return sgn(r.c2_residual) == 0 && sgn(r.c3_residual) == 0;
  });
}

std::vector<Rational> severi_log_series(const severi::SeveriTable& table, int d, int max_delta) {
  const int top = std::min(max_delta, 2 * d - 2);
  if (top < 0)
    return {};
  std::vector<Rational> coeffs(static_cast<std::size_t>(top + 1));
  for (int delta = 0; delta <= top; ++delta) {
    auto it = table.find({d, delta});
    if (it == table.end())
      throw Error(ErrorCode::InsufficientDegrees,
                  "Severi degree N^{" + std::to_string(d) + "," + std::to_string(delta) + "} not supplied");
    coeffs[static_cast<std::size_t>(delta)] = Rational(it->second);
  }
  const RationalSeries logged = log(RationalSeries::from_coefficients(0, std::move(coeffs), top + 1));
  std::vector<Rational> out(static_cast<std::size_t>(top + 1));
  for (int delta = 0; delta <= top; ++delta)
    out[static_cast<std::size_t>(delta)] = logged.coeff(delta);
  return out;
}

std::vector<Rational> conjectural_C1(int max_delta) {
  const int p = max_delta + 1;
  return expand_in_base(log_dg2_over_q(p) * Rational(1, 2), modforms::dg2(p + 1));
}

namespace {

std::vector<int> admissible(const std::vector<int>& degrees, int delta) {
  std::vector<int> out;
  for (int d : degrees)
    if (delta <= 2 * d - 2)
      out.push_back(d);
  return out;
}

void normalize_degrees(std::vector<int>& degrees) {
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int d : degrees)
    if (d < 1)
      throw Error(ErrorCode::InsufficientDegrees, "degree " + std::to_string(d) + " is not positive");
}

} // namespace

FitResult fit_BC(const severi::SeveriTable& table, int max_delta, std::vector<int> degrees, FitOptions options) {
  normalize_degrees(degrees);
  for (int delta = 0; delta <= max_delta; ++delta)
    if (admissible(degrees, delta).size() < 2)
      throw Error(ErrorCode::InsufficientDegrees,
                  "x^" + std::to_string(delta) + " needs two degrees d with delta <= 2d - 2");

  std::map<int, std::vector<Rational>> logs;
  for (int d : degrees)
    logs[d] = severi_log_series(table, d, max_delta);

  FitResult fit;
  fit.max_delta = max_delta;
  fit.degrees = degrees;
  fit.C1 = conjectural_C1(max_delta);
  fit.C2.assign(static_cast<std::size_t>(max_delta + 1), Rational(0));
  fit.C3.assign(static_cast<std::size_t>(max_delta + 1), Rational(0));

  for (int delta = 0; delta <= max_delta; ++delta) {
    const auto idx = static_cast<std::size_t>(delta);
    const std::vector<int> ds = admissible(degrees, delta);
    // d C2 + C3 = log-coefficient - d^2 C1
    auto reduced = [&](int d) -> Rational { return logs[d][idx] - Rational(d * d) * fit.C1[idx]; };
    bool first = true;
    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        const Rational r1 = reduced(ds[i]);
        const Rational r2 = reduced(ds[j]);
        const Rational c2 = (r1 - r2) / Rational(ds[i] - ds[j]);
        const Rational c3 = r1 - Rational(ds[i]) * c2;
        if (first) {
          fit.C2[idx] = c2;
          fit.C3[idx] = c3;
          first = false;
        }
        fit.residuals.push_back({delta, ds[i], ds[j], c2 - fit.C2[idx], c3 - fit.C3[idx]});
      }
  }

  if (options.strict && !fit.consistent()) {
    for (const auto& r : fit.residuals)
      if (sgn(r.c2_residual) != 0 || sgn(r.c3_residual) != 0)
        throw Error(ErrorCode::InconsistentOverdetermination,
                    "degrees (" + std::to_string(r.d1) + "," + std::to_string(r.d2) + ") disagree at x^" +
                        std::to_string(r.delta));
  }

  const int p = max_delta + 1;
  const RationalSeries base = modforms::dg2(p + 1);
  const std::vector<Rational> l1 = expand_in_base(log_dg2_over_q(p), base);
  const std::vector<Rational> l2 = expand_in_base(log_delta_d2g2_over_q2(p), base);
  std::vector<Rational> log_b1(static_cast<std::size_t>(p)), log_b2(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < static_cast<std::size_t>(p); ++i) {
    log_b2[i] = l1[i] / 2 - fit.C2[i] / 3;
    log_b1[i] = (fit.C3[i] - l1[i] + l2[i] / 2) / 9;
  }
  fit.B.B1 = exp(compose(RationalSeries::from_coefficients(0, log_b1, p), base));
  fit.B.B2 = exp(compose(RationalSeries::from_coefficients(0, log_b2, p), base));
  return fit;
}

bool ThreeDegreeReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const C1Check& c) { return c.fitted_c1 == c.expected_c1; });
}

ThreeDegreeReport fit3_verify_C1(const severi::SeveriTable& table, int max_delta, std::vector<int> degrees) {
  normalize_degrees(degrees);
  if (degrees.size() != 3)
    throw Error(ErrorCode::InsufficientDegrees, "three-degree check needs exactly three distinct degrees");
  for (int delta = 0; delta <= max_delta; ++delta)
    if (admissible(degrees, delta).size() < 3)
      throw Error(ErrorCode::InsufficientDegrees,
                  "x^" + std::to_string(delta) + " needs three degrees d with delta <= 2d - 2");
  std::map<int, std::vector<Rational>> logs;
  for (int d : degrees)
    logs[d] = severi_log_series(table, d, max_delta);
  const std::vector<Rational> expected = conjectural_C1(max_delta);

  ThreeDegreeReport report;
  report.degrees = degrees;
  for (int delta = 0; delta <= max_delta; ++delta) {
    const auto idx = static_cast<std::size_t>(delta);
    std::vector<std::pair<Rational, Rational>> points;
    for (int d : degrees)
      points.emplace_back(Rational(d), logs[d][idx]);
    const Poly1 quad = interpolate(points); // C3 + C2 d + C1 d^2
    report.rows.push_back({delta, quad.coefficient(2), expected[idx], quad.coefficient(1), quad.coefficient(0)});
  }
  return report;
}

std::vector<int> default_fit_degrees(int max_delta) {
  const int d0 = std::max(1, (max_delta + 3) / 2);
  return {d0, d0 + 1};
}

severi::SeveriTable severi_window(severi::SeveriEngine& engine, int max_delta, const std::vector<int>& degrees) {
  severi::SeveriTable table;
  for (int d : degrees)
    for (int delta = 0; delta <= std::min(max_delta, 2 * d - 2); ++delta)
      table.emplace(std::make_pair(d, delta), engine.degree(d, delta));
  return table;
}

std::vector<std::pair<int, int>> fit_reproduction_mismatches(const FitResult& fit, const severi::SeveriTable& table) {
  std::vector<std::pair<int, int>> bad;
  for (int d : fit.degrees) {
    const int top = std::min(fit.max_delta, 2 * d - 2);
    const SurfaceGeometry p2{static_cast<std::int64_t>(d) * d, -3 * static_cast<std::int64_t>(d), 9, 3};
    const std::vector<Rational> t = tdelta_evaluate(p2, fit.B, top);
    for (int delta = 0; delta <= top; ++delta) {
      auto it = table.find({d, delta});
      if (it == table.end() || Rational(it->second) != t[static_cast<std::size_t>(delta)])
        bad.emplace_back(d, delta);
    }
  }
  return bad;
}

BSeriesPair fitted_b_series(severi::SeveriEngine& engine, int max_delta) {
  const std::vector<int> degrees = default_fit_degrees(max_delta);
  return fit_BC(severi_window(engine, max_delta, degrees), max_delta, degrees).B;
}

} // namespace nodalgen
