#include "nodalgen/surfaces.hpp"

#include "nodalgen/modforms.hpp"

namespace nodalgen::surfaces {

SurfaceKind parse_kind(std::string_view name) {
  if (name == "p2")
    return SurfaceKind::P2;
  if (name == "ruled")
    return SurfaceKind::Ruled;
  if (name == "k3")
    return SurfaceKind::K3;
  if (name == "abelian")
    return SurfaceKind::Abelian;
  if (name == "enriques")
    return SurfaceKind::Enriques;
  if (name == "custom")
    return SurfaceKind::Custom;
  throw Error(ErrorCode::UnknownKind, "unknown surface kind '" + std::string(name) + "'");
}

std::string_view kind_name(SurfaceKind kind) {
  switch (kind) {
  case SurfaceKind::P2: return "p2";
  case SurfaceKind::Ruled: return "ruled";
  case SurfaceKind::K3: return "k3";
  case SurfaceKind::Abelian: return "abelian";
  case SurfaceKind::Enriques: return "enriques";
  case SurfaceKind::Custom: return "custom";
  }
  return "custom";
}

SurfaceGeometry p2(std::int64_t d) { return {d * d, -3 * d, 9, 3}; }

SurfaceGeometry ruled(std::int64_t e, std::int64_t n, std::int64_t m) {
  return {2 * n * m - e * m * m, -2 * n + (e - 2) * m, 8, 4};
}

SurfaceGeometry k3(std::int64_t L2) { return {L2, 0, 0, 24}; }
SurfaceGeometry abelian(std::int64_t L2) { return {L2, 0, 0, 0}; }
SurfaceGeometry enriques(std::int64_t L2) { return {L2, 0, 0, 12}; }

SurfaceGeometry geometry_preset(SurfaceKind kind, const PresetParams& params) {
  switch (kind) {
  case SurfaceKind::P2: return p2(params.d);
  case SurfaceKind::Ruled: return ruled(params.e, params.n, params.m);
  case SurfaceKind::K3: return k3(params.L2);
  case SurfaceKind::Abelian: return abelian(params.L2);
  case SurfaceKind::Enriques: return enriques(params.L2);
  case SurfaceKind::Custom: return {params.L2, params.LK, params.K2, params.c2};
  }
  throw Error(ErrorCode::UnknownKind, "unhandled surface kind");
}

int GenusCountSeries::genus_shift() const {
  switch (kind) {
  case SurfaceKind::Abelian: return 2;
  case SurfaceKind::Enriques: return 1;
  default: return 0;
  }
}

namespace {

RationalSeries unit_part(const RationalSeries& s) { return shifted(s, -s.valuation()); }

} // namespace

GenusCountSeries k3_genus_series(int r, int precision) {
  const int rel = precision - (r - 1);
  GenusCountSeries out{SurfaceKind::K3, r, RationalSeries::zero(precision)};
  if (rel <= 0)
    return out;
  const RationalSeries num = pow(modforms::dg2(rel + 1), static_cast<long>(r));
  out.series = (r == 0 ? RationalSeries::constant(Rational(1), rel) : num) / modforms::delta(rel + 1);
  return out;
}

GenusCountSeries abelian_genus_series(int r, int precision) {
  const int rel = precision - (r + 1);
  GenusCountSeries out{SurfaceKind::Abelian, r, RationalSeries::zero(precision)};
  if (rel <= 0)
    return out;
  const RationalSeries d2 = modforms::d2g2(rel + 1);
  out.series = r == 0 ? d2 : pow(modforms::dg2(rel + 1), static_cast<long>(r)) * d2;
  return out;
}

GenusCountSeries enriques_genus_series(int r, int precision) {
  const int rel = precision - r;
  GenusCountSeries out{SurfaceKind::Enriques, r, RationalSeries::zero(precision)};
  if (rel <= 0)
    return out;
  const RationalSeries ratio = unit_part(modforms::d2g2(rel + 1)) / unit_part(modforms::delta(rel + 1));
  const RationalSeries root = pow(ratio, Rational(1, 2));
  out.series = r == 0 ? root : pow(modforms::dg2(rel + 1), static_cast<long>(r)) * root;
  return out;
}

bool abelian_egf_check(int precision, int z_max) {
  // exp(DG2 z) = sum_j DG2^j / j! z^j; applying D and dividing by z moves
  // the z^{r+1} slice to z^r.
  const RationalSeries x = modforms::dg2(precision);
  RationalSeries power = RationalSeries::constant(Rational(1), precision);
  for (int j = 1; j <= z_max + 1; ++j) {
    power = power * x;
    const int r = j - 1;
    const RationalSeries slice = q_derivative(power) * Rational(1, j); // D(x^j/j!) * r!
    const RationalSeries expected = abelian_genus_series(r, precision).series;
    if (!(slice.truncated(precision) == expected.truncated(slice.precision())))
      return false;
  }
  return true;
}

BigInt abelian_genus2_count(long n) {
  if (n < 1)
    throw Error(ErrorCode::UnknownKind, "polarisation type (1, n) needs n >= 1");
  return BigInt(n) * BigInt(n) * modforms::sigma(1, static_cast<unsigned long>(n));
}

std::vector<NodePolynomial> node_polynomials(int max_delta, const BSeriesPair& b) {
  const std::vector<Poly4> t = tdelta_universal(b, max_delta);
  std::vector<NodePolynomial> out;
  for (int delta = 0; delta <= max_delta; ++delta)
    out.push_back({delta, specialize_p2(t[static_cast<std::size_t>(delta)])});
  return out;
}

NodePolynomial node_polynomial(int delta, const BSeriesPair& b) { return node_polynomials(delta, b).back(); }

int qmu_max_delta(int mu) { return 2 * (mu / 2) + 2; }

namespace {

// 3^{delta-[mu/2]} / (mu! (delta-ceil(mu/2))!)
Rational q_scale(int mu, int delta) {
  BigInt three;
  mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned long>(delta - mu / 2));
  return make_rational(three, factorial(static_cast<unsigned long>(mu)) *
                                  factorial(static_cast<unsigned long>(delta - (mu + 1) / 2)));
}

} // namespace

Rational p_from_q(int mu, int delta, const Poly1& q) {
  return q_scale(mu, delta) * q.eval(Rational(delta));
}

Poly1 qmu_extract(int mu, const std::vector<NodePolynomial>& polys) {
  const int h = mu / 2;
  const int held_out = qmu_max_delta(mu);
  if (static_cast<int>(polys.size()) <= held_out)
    throw Error(ErrorCode::OutOfPrecision,
                "Q_" + std::to_string(mu) + " needs node polynomials up to delta = " + std::to_string(held_out));
  auto sample = [&](int delta) -> Rational { return polys[static_cast<std::size_t>(delta)].p(mu) / q_scale(mu, delta); };
  std::vector<std::pair<Rational, Rational>> points;
  for (int delta = h + 1; delta <= 2 * h + 1; ++delta)
    points.emplace_back(Rational(delta), sample(delta));
  Poly1 q = interpolate(points);
  if (q.eval(Rational(held_out)) != sample(held_out))
    throw Error(ErrorCode::NonPolynomialResidual,
                "Q_" + std::to_string(mu) + " misses the held-out value at delta = " + std::to_string(held_out));
  for (const auto& c : q.coefficients())
    if (!is_integer(c))
      throw Error(ErrorCode::NonPolynomialResidual,
                  "Q_" + std::to_string(mu) + " has non-integral coefficient " + to_string(c));
  return q;
}

Poly1 qmu_extract(int mu, const BSeriesPair& b) { return qmu_extract(mu, node_polynomials(qmu_max_delta(mu), b)); }

std::vector<RuledPrediction> ruled_predictions(std::int64_t e, std::int64_t n, std::int64_t m, int max_delta,
                                               const BSeriesPair& b) {
  const std::vector<Rational> t = tdelta_evaluate(ruled(e, n, m), b, max_delta);
  const std::int64_t window = e == 0 ? std::min(2 * m, 2 * n) : std::min(2 * m, n - e * m);
  const bool excluded = n == 1 && m == 0;
  std::vector<RuledPrediction> out;
  for (int delta = 0; delta <= max_delta; ++delta)
    out.push_back({delta, t[static_cast<std::size_t>(delta)], !excluded && delta <= window});
  return out;
}

} // namespace nodalgen::surfaces
