#include "fredsim/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fredsim/error.hpp"

namespace fredsim {

namespace {

constexpr int kTableSize = 4096;
constexpr double kRescaleAbove = 1e150;

const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (int k = 1; k < kTableSize; ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) raise(ErrorKind::invalid_argument, "log_factorial: negative argument");
  if (n < kTableSize) return log_factorial_table()[static_cast<std::size_t>(n)];
  const double x = static_cast<double>(n) + 1.0;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

double ScaledValue::value() const {
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp(log_scale);
}

ScaledValue assoc_laguerre_scaled(int n, int alpha, double x) {
  if (n < 0) raise(ErrorKind::invalid_argument, "assoc_laguerre: negative degree");
  ScaledValue out;
  if (n == 0) {
    out.mantissa = 1.0;
    return out;
  }
  const double a = static_cast<double>(alpha);
  double prev = 1.0;
  double curr = 1.0 + a - x;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double next = ((2.0 * kk + 1.0 + a - x) * curr - (kk + a) * prev) / (kk + 1.0);
    prev = curr;
    curr = next;
    const double mag = std::abs(curr);
    if (mag > kRescaleAbove) {
      prev /= mag;
      curr /= mag;
      log_scale += std::log(mag);
    }
  }
  out.mantissa = curr;
  out.log_scale = log_scale;
  return out;
}

double assoc_laguerre(int n, int alpha, double x) {
  return assoc_laguerre_scaled(n, alpha, x).value();
}

std::vector<double> hermite_functions(int nmax, double x) {
  if (nmax < 0) raise(ErrorKind::invalid_argument, "hermite_functions: negative order");
  std::vector<double> psi(static_cast<std::size_t>(nmax) + 1, 0.0);
  // Run the recurrence on unit-scale numbers and carry the Gaussian envelope in
  // log form; at large |x| the envelope alone underflows before the polynomial
  // part has grown.
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double curr = 1.0;
  psi[0] = std::exp(log_scale);
  for (int m = 0; m < nmax; ++m) {
    const double mm = static_cast<double>(m);
    const double next = std::sqrt(2.0 / (mm + 1.0)) * x * curr - std::sqrt(mm / (mm + 1.0)) * prev;
    prev = curr;
    curr = next;
    const double mag = std::abs(curr);
    if (mag > kRescaleAbove) {
      prev /= mag;
      curr /= mag;
      log_scale += std::log(mag);
    }
    psi[static_cast<std::size_t>(m) + 1] = curr == 0.0 ? 0.0 : curr * std::exp(log_scale);
  }
  return psi;
}

double hermite_polynomial(int m, double x) {
  if (m < 0) raise(ErrorKind::invalid_argument, "hermite_polynomial: negative order");
  if (m == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * x;
  for (int k = 1; k < m; ++k) {
    const double next = 2.0 * x * curr - 2.0 * static_cast<double>(k) * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

std::vector<double> poisson_weights(double mu, int nmax) {
  if (mu < 0.0) raise(ErrorKind::invalid_argument, "poisson_weights: negative mean");
  std::vector<double> w(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (mu == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const double log_mu = std::log(mu);
  for (int n = 0; n <= nmax; ++n) {
    w[static_cast<std::size_t>(n)] = std::exp(-mu + n * log_mu - log_factorial(n));
  }
  return w;
}

double poisson_tail(double mu, int n_keep) {
  if (mu < 0.0) raise(ErrorKind::invalid_argument, "poisson_tail: negative mean");
  if (n_keep <= 0) return 1.0;
  if (mu == 0.0) return 0.0;
  const double log_mu = std::log(mu);
  double sum = 0.0;
  for (int n = n_keep;; ++n) {
    const double term = std::exp(-mu + n * log_mu - log_factorial(n));
    sum += term;
    if (n > mu && term <= 1e-18 * sum) break;
    if (n > n_keep + 100000) break;
    if (term == 0.0 && n > mu) break;
  }
  return sum;
}

}  // namespace fredsim
