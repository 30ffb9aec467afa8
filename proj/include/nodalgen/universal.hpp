#pragma once

// The generating function for nodal-curve counts
//
//   sum_delta t_delta (DG2)^delta
//     = (DG2/q)^{chi(L)} B1^{K^2} B2^{LK} / (Delta D^2G2 / q^2)^{chi(O)/2}
//
// over numeric or symbolic (Poly4) coefficients, its expansion into the
// universal polynomials T_delta, and the fit of B1, B2 from plane Severi
// degrees.

#include "nodalgen/multipoly.hpp"
#include "nodalgen/qseries.hpp"
#include "nodalgen/severi.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace nodalgen {

struct SurfaceGeometry {
  std::int64_t L2 = 0; // L^2
  std::int64_t LK = 0; // L.K_S
  std::int64_t K2 = 0; // K_S^2
  std::int64_t c2 = 0; // c_2(S)

  Rational chi_O() const { return make_rational(BigInt(K2 + c2), 12); }
  Rational chi_L() const { return make_rational(BigInt(L2 - LK), 2) + chi_O(); }
  std::array<Rational, 4> as_values() const {
    return {Rational(L2), Rational(LK), Rational(K2), Rational(c2)};
  }

  friend SurfaceGeometry operator+(const SurfaceGeometry& a, const SurfaceGeometry& b) {
    return {a.L2 + b.L2, a.LK + b.LK, a.K2 + b.K2, a.c2 + b.c2};
  }
  friend bool operator==(const SurfaceGeometry&, const SurfaceGeometry&) = default;
};

struct BSeriesPair {
  RationalSeries B1;
  RationalSeries B2;

  int precision() const { return std::min(B1.precision(), B2.precision()); }
};


// log(DG2/q) and log(Delta D^2G2/q^2) to precision P.
RationalSeries log_dg2_over_q(int precision);
RationalSeries log_delta_d2g2_over_q2(int precision);

RationalSeries conjecture_rhs(const SurfaceGeometry& geom, const BSeriesPair& b, int precision);
// Symbolic right-hand side with chi(L) = (x - y)/2 + (z + t)/12, chi(O) = (z + t)/12.
PolySeries conjecture_rhs_symbolic(const BSeriesPair& b, int precision);

// T_0..T_N; needs b known to precision N + 1.
std::vector<Poly4> tdelta_universal(const BSeriesPair& b, int max_delta);
// t_0..t_N for a concrete geometry via the numeric pipeline.
std::vector<Rational> tdelta_evaluate(const SurfaceGeometry& geom, const BSeriesPair& b, int max_delta);

struct LogParts {
  RationalSeries A1, A2, A3, A4;
};
// log T(S, L) = L^2 A1 + LK A2 + K^2 A3 + c2 A4 with A_i as q-series.
LogParts universal_log_parts(const BSeriesPair& b, int precision);

// sum_l n_r(l, m) q^l = B1^{K^2} B2^m (DG2)^r D^2G2 / (Delta D^2G2)^{chi(O)/2},
// known to absolute precision P. chi(O) must be an integer.
RationalSeries nr_series(const SurfaceGeometry& geom, std::int64_t m, int r, const BSeriesPair& b, int precision);

struct PairResidual {
  int delta = 0;
  int d1 = 0;
  int d2 = 0;
  Rational c2_residual;
  Rational c3_residual;
};

struct FitResult {
  int max_delta = 0;
  std::vector<int> degrees;
  // coefficients of x^0..x^N in the base x = DG2
  std::vector<Rational> C1, C2, C3;
  BSeriesPair B;
  std::vector<PairResidual> residuals;

  bool consistent() const;
};

struct FitOptions {
  // Throw InconsistentOverdetermination when any pair disagrees.
  bool strict = true;
};

// Log of sum_delta N^{d,delta} x^delta, truncated at the validity window
// delta <= min(N, 2d - 2).
std::vector<Rational> severi_log_series(const severi::SeveriTable& table, int d, int max_delta);

// C1 = (1/2) log(DG2/q) expanded in x = DG2.
std::vector<Rational> conjectural_C1(int max_delta);

FitResult fit_BC(const severi::SeveriTable& table, int max_delta, std::vector<int> degrees, FitOptions options = {});

struct C1Check {
  int delta = 0;
  Rational fitted_c1, expected_c1, fitted_c2, fitted_c3;
};

struct ThreeDegreeReport {
  std::vector<int> degrees;
  std::vector<C1Check> rows;

  bool ok() const;
};

// Joint solve for C1, C2, C3 from three degrees, compared with conjectural_C1.
ThreeDegreeReport fit3_verify_C1(const severi::SeveriTable& table, int max_delta, std::vector<int> degrees);

// Smallest two consecutive degrees admissible for every delta <= N.
std::vector<int> default_fit_degrees(int max_delta);

// Severi values for the needed (d, delta) window.
severi::SeveriTable severi_window(severi::SeveriEngine& engine, int max_delta, const std::vector<int>& degrees);

// Rebuilds t_delta(d) on P^2 from the fitted series and lists every
// (d, delta) with delta <= min(N, 2d - 2) where it differs from N^{d,delta}.
std::vector<std::pair<int, int>> fit_reproduction_mismatches(const FitResult& fit, const severi::SeveriTable& table);

// Fits B1, B2 to q^N with default degrees using the given engine.
BSeriesPair fitted_b_series(severi::SeveriEngine& engine, int max_delta);

} // namespace nodalgen
