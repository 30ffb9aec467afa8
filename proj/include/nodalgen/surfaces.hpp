#pragma once

// Geometry presets and the specialisations of the curve-counting generating
// function: genus-indexed counts on K3, abelian and Enriques surfaces, plane
// node polynomials and predictions for Hirzebruch surfaces.

#include "nodalgen/universal.hpp"

#include <string_view>

namespace nodalgen::surfaces {

enum class SurfaceKind { P2, Ruled, K3, Abelian, Enriques, Custom };

SurfaceKind parse_kind(std::string_view name);
std::string_view kind_name(SurfaceKind kind);

struct PresetParams {
  std::int64_t d = 1;        // p2: curve degree
  std::int64_t e = 0;        // ruled: E^2 = -e
  std::int64_t n = 1;        // ruled: L = nF + mE
  std::int64_t m = 0;
  std::int64_t L2 = 0;       // k3, abelian, enriques, custom
  std::int64_t LK = 0;       // custom
  std::int64_t K2 = 0;       // custom
  std::int64_t c2 = 0;       // custom
};

SurfaceGeometry geometry_preset(SurfaceKind kind, const PresetParams& params);

SurfaceGeometry p2(std::int64_t d);
// K = -2E - (e + 2)F, E^2 = -e, E.F = 1, F^2 = 0.
SurfaceGeometry ruled(std::int64_t e, std::int64_t n, std::int64_t m);
SurfaceGeometry k3(std::int64_t L2);
SurfaceGeometry abelian(std::int64_t L2);
SurfaceGeometry enriques(std::int64_t L2);

struct GenusCountSeries {
  SurfaceKind kind = SurfaceKind::K3;
  int r = 0;
  // coefficient of q^l is n_r(l)
  RationalSeries series;

  // m_g = n_{g - shift}: the series also lists curves of genus r + shift.
  int genus_shift() const;
  int genus() const { return r + genus_shift(); }
  Rational n(int l) const { return series.coeff(l); }
};

// (DG2)^r / Delta
GenusCountSeries k3_genus_series(int r, int precision);
// (DG2)^r D^2G2
GenusCountSeries abelian_genus_series(int r, int precision);
// (DG2)^r (D^2G2 / Delta)^{1/2}
GenusCountSeries enriques_genus_series(int r, int precision);

// Checks that z^r/r! in (1/z) D exp(DG2 z) matches abelian_genus_series(r)
// for every r <= z_max, to q-precision P.
bool abelian_egf_check(int precision, int z_max);

// n^2 sigma_1(n): genus-2 curves in a (1, n)-polarisation.
BigInt abelian_genus2_count(long n);

struct NodePolynomial {
  int delta = 0;
  Poly1 P; // in the curve degree d, degree 2 delta

  // coefficient of d^{2 delta - mu}
  Rational p(int mu) const { return P.coefficient(2 * delta - mu); }
};

NodePolynomial node_polynomial(int delta, const BSeriesPair& b);
// P_0..P_N from one expansion.
std::vector<NodePolynomial> node_polynomials(int max_delta, const BSeriesPair& b);

// Largest delta whose node polynomial qmu_extract(mu) reads.
int qmu_max_delta(int mu);

// Q_mu(delta) = p_mu(delta) mu! (delta - ceil(mu/2))! / 3^{delta - [mu/2]}, an
// integer polynomial of degree [mu/2]. Interpolated from delta = [mu/2] + 1, ...,
// 2[mu/2] + 1 and checked at one further delta.
Poly1 qmu_extract(int mu, const std::vector<NodePolynomial>& polys);
Poly1 qmu_extract(int mu, const BSeriesPair& b);

// p_mu(delta) rebuilt from Q_mu.
Rational p_from_q(int mu, int delta, const Poly1& q);

struct RuledPrediction {
  int delta = 0;
  Rational value;
  bool valid = false; // inside the window where the count equals the Severi degree
};

std::vector<RuledPrediction> ruled_predictions(std::int64_t e, std::int64_t n, std::int64_t m, int max_delta,
                                               const BSeriesPair& b);

} // namespace nodalgen::surfaces
