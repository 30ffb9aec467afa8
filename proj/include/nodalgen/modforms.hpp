#pragma once

// q-expansions of the quasimodular forms entering the curve-counting
// generating functions.

#include "nodalgen/qseries.hpp"

#include <string>
#include <string_view>

namespace nodalgen::modforms {

// sum of k-th powers of the divisors of n (n >= 1)
BigInt sigma(unsigned k, unsigned long n);

// Bernoulli number B_n with B_1 = -1/2.
Rational bernoulli(unsigned n);

// G_k = -B_k/2k + sum_{0<n<P} sigma_{k-1}(n) q^n
RationalSeries eisenstein(int k, int precision);

// q prod_{k>0} (1 - q^k)^24
RationalSeries delta(int precision);

// D G_2 = sum n sigma_1(n) q^n
RationalSeries dg2(int precision);

// D^2 G_2 = sum n^2 sigma_1(n) q^n
RationalSeries d2g2(int precision);

// Catalog lookup by name: G2, G4, G6, Delta, DG2, D2G2. Results are memoized
// per (name, precision); throws UnknownKind for any other name.
const RationalSeries& form(std::string_view name, int precision);

} // namespace nodalgen::modforms
