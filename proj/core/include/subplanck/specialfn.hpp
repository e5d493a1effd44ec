#pragma once

#include "subplanck/types.hpp"

namespace subplanck::specialfn {

// ln(n!).  Exact cumulative table for n <= 200 (better than 12 significant
// digits), lgamma beyond.
double log_factorial(int n);

// A real number carried as sign and log of magnitude, for combinatorial
// weights that overflow double long before the assembled sums do.
struct SignedLog {
  double log_mag = 0.0;
  int sign = 1;  // +1 or -1

  // sign * exp(log_mag); guards against overflow of the materialized value.
  double value() const;
};

// Weight (-1)^n (r!)^2 / (n! ((r-n)!)^2) appearing in every photon-ladder
// sum; reaches ~1e40 around r = 24, hence the SignedLog carrier.
SignedLog gamma_coeff(int n, int r);

// Two-index Hermite polynomial
//   H_{m,n}(x, y) = sum_{k=0}^{min(m,n)} (-1)^k m! n! / (k! (m-k)! (n-k)!)
//                   x^{m-k} y^{n-k},
// so H_{m,0}(x,y) = x^m and H_{m,n}(x,y) = H_{n,m}(y,x).  Direct compensated
// summation while the largest term fits double comfortably, log-magnitude +
// phase accumulation beyond; validated for orders <= 64.
Complex hermite2(int m, int n, Complex x, Complex y);

// z^e for e >= 0 by repeated multiplication (0^0 = 1).  Unlike std::pow's
// polar route this keeps axis-aligned products exactly on the axes, which
// the realness guards downstream depend on.
Complex ipow(Complex z, int e);

// Associated Laguerre L_n^{(k)}(x) via the stable three-term recurrence.
double laguerre_assoc(int n, int k, double x);

// r! * L_r(z) for complex z via the same recurrence.  Useful identity:
//   sum_{n=0}^{r} (-1)^n gamma_coeff(n,r) z^{r-n} = r! * L_r(-z),
// whose right-hand side has all-positive recurrence flow for z >= 0 and is
// the cancellation-free route to the photon-subtraction sums.
Complex laguerre_scaled(int r, Complex z);

}  // namespace subplanck::specialfn
