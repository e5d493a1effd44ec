#include "subplanck/specialfn.hpp"

#include <array>
#include <cmath>

namespace subplanck::specialfn {

namespace {

constexpr int kTableSize = 201;
constexpr double kPi = 3.14159265358979323846;
// Largest exponent for which exp() is comfortably finite; direct summation
// is used only when every term magnitude stays below this.
constexpr double kDirectLogLimit = 690.0;

const std::array<double, kTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kTableSize> t{};
    long double acc = 0.0L;
    for (int n = 1; n < kTableSize; ++n) {
      acc += std::log(static_cast<long double>(n));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

// Kahan-compensated complex accumulator (componentwise compensation).
struct KahanSum {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};

  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Log-magnitude of x^e with the 0^0 = 1 convention kept finite.
double pow_log_mag(double log_abs, int e) {
  return e == 0 ? 0.0 : e * log_abs;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  if (n < kTableSize) return log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double SignedLog::value() const {
  const double v = std::exp(log_mag);
  if (!std::isfinite(v))
    throw numeric_guard_error("SignedLog::value: magnitude overflows double");
  return sign > 0 ? v : -v;
}

SignedLog gamma_coeff(int n, int r) {
  if (r < 0 || n < 0 || n > r)
    throw std::invalid_argument("gamma_coeff: need 0 <= n <= r");
  const double log_mag =
      2.0 * log_factorial(r) - log_factorial(n) - 2.0 * log_factorial(r - n);
  return SignedLog{log_mag, n % 2 == 0 ? +1 : -1};
}

Complex hermite2(int m, int n, Complex x, Complex y) {
  if (m < 0 || n < 0) throw std::invalid_argument("hermite2: negative order");
  const int kmax = std::min(m, n);

  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double lx = ax > 0.0 ? std::log(ax) : 0.0;
  const double ly = ay > 0.0 ? std::log(ay) : 0.0;

  // Peak term magnitude over k decides the summation route.  With a zero
  // argument only the k = m (or k = n) term can survive a positive power,
  // which the direct route handles exactly.
  double peak = -1.0;
  for (int k = 0; k <= kmax; ++k) {
    if (ax == 0.0 && m - k > 0) continue;
    if (ay == 0.0 && n - k > 0) continue;
    const double lc = log_factorial(m) + log_factorial(n) - log_factorial(k) -
                      log_factorial(m - k) - log_factorial(n - k);
    const double lt = lc + pow_log_mag(lx, m - k) + pow_log_mag(ly, n - k);
    peak = std::max(peak, lt);
  }
  if (peak < 0.0) peak = 0.0;

  if (peak < kDirectLogLimit) {
    // Direct path: coefficient recurrence c_{k+1} = -c_k (m-k)(n-k)/(k+1)
    // stays exact in double until ~1e15 and correctly rounded beyond.
    std::array<Complex, 65 + 1> xp{}, yp{};
    const int px = std::min(m, 64 + 1);
    const int py = std::min(n, 64 + 1);
    xp[0] = 1.0;
    for (int t = 1; t <= px; ++t) xp[t] = xp[t - 1] * x;
    yp[0] = 1.0;
    for (int t = 1; t <= py; ++t) yp[t] = yp[t - 1] * y;
    if (m > 65 || n > 65) {
      // Orders beyond the validated bound fall back to on-the-fly powers.
      KahanSum acc;
      double c = 1.0;
      for (int k = 0; k <= kmax; ++k) {
        acc.add(c * std::pow(x, m - k) * std::pow(y, n - k));
        c *= -static_cast<double>((m - k) * (n - k)) / (k + 1);
      }
      return acc.sum;
    }
    KahanSum acc;
    double c = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      acc.add(c * xp[m - k] * yp[n - k]);
      c *= -static_cast<double>((m - k) * (n - k)) / (k + 1);
    }
    return acc.sum;
  }

  // Log path: accumulate exp(log-magnitude - peak) * e^{i phase}, then
  // rescale once.  Keeps intermediate terms bounded by 1.
  const double phx = std::arg(x);
  const double phy = std::arg(y);
  KahanSum acc;
  for (int k = 0; k <= kmax; ++k) {
    if (ax == 0.0 && m - k > 0) continue;
    if (ay == 0.0 && n - k > 0) continue;
    const double lc = log_factorial(m) + log_factorial(n) - log_factorial(k) -
                      log_factorial(m - k) - log_factorial(n - k);
    const double lt = lc + pow_log_mag(lx, m - k) + pow_log_mag(ly, n - k);
    const double phase =
        (m - k) * phx + (n - k) * phy + (k % 2 == 1 ? kPi : 0.0);
    acc.add(std::polar(std::exp(lt - peak), phase));
  }
  if (peak > kDirectLogLimit)
    throw numeric_guard_error("hermite2: result magnitude overflows double");
  return std::exp(peak) * acc.sum;
}

Complex ipow(Complex z, int e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  Complex acc{1.0, 0.0};
  Complex base = z;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

double laguerre_assoc(int n, int k, double x) {
  if (n < 0 || k < 0)
    throw std::invalid_argument("laguerre_assoc: negative index");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2 * j + 1 + k - x) * cur - (j + k) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex laguerre_scaled(int r, Complex z) {
  if (r < 0) throw std::invalid_argument("laguerre_scaled: negative order");
  if (r == 0) return 1.0;
  Complex prev = 1.0;
  Complex cur = 1.0 - z;
  for (int j = 1; j < r; ++j) {
    const Complex next =
        ((static_cast<double>(2 * j + 1) - z) * cur -
         static_cast<double>(j) * prev) /
        static_cast<double>(j + 1);
    prev = cur;
    cur = next;
  }
  return std::exp(log_factorial(r)) * cur;
}

}  // namespace subplanck::specialfn
