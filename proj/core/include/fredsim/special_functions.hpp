#pragma once

#include <vector>

namespace fredsim {

// log(n!) from a lazily built table, Stirling series past the table end.
double log_factorial(int n);

// Associated Laguerre L_n^{(alpha)}(x) carried as mantissa * exp(log_scale)
// so that large indices do not overflow.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;
  double value() const;
};

ScaledValue assoc_laguerre_scaled(int n, int alpha, double x);
double assoc_laguerre(int n, int alpha, double x);

// Normalized Hermite functions psi_m(x) = (sqrt(pi) 2^m m!)^{-1/2} H_m(x) e^{-x^2/2}
// for m = 0..nmax.
std::vector<double> hermite_functions(int nmax, double x);

// Physicists' Hermite polynomial, direct recurrence (small m only).
double hermite_polynomial(int m, double x);

// Poisson weights e^{-mu} mu^n / n!, n = 0..nmax.
std::vector<double> poisson_weights(double mu, int nmax);

// 1 - sum_{n<n_keep} of the Poisson weights, computed without cancellation.
double poisson_tail(double mu, int n_keep);

}  // namespace fredsim
