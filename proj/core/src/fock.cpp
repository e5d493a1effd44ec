#include "subplanck/fock.hpp"

#include <algorithm>
#include <cmath>

#include "subplanck/specialfn.hpp"

namespace subplanck::fock {

namespace {

using specialfn::log_factorial;

void check_tail(const FockVector& v, const char* who) {
  const double n2 = norm_sq(v);
  if (n2 <= 0.0)
    throw numeric_guard_error(std::string(who) + ": zero vector");
  if (tail_mass(v) > kTailTol)
    throw numeric_guard_error(std::string(who) +
                              ": tail mass above tolerance (cutoff too small)");
}

double max_alpha_sq(const states::CoherentSuperposition& s) {
  double m = 0.0;
  for (const auto& t : s.terms) m = std::max(m, std::norm(t.alpha));
  return m;
}

}  // namespace

double norm_sq(const FockVector& v) {
  double acc = 0.0;
  for (const Complex& a : v.amps) acc += std::norm(a);
  return acc;
}

Complex inner(const FockVector& bra, const FockVector& ket) {
  const std::size_t n = std::min(bra.amps.size(), ket.amps.size());
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    acc += std::conj(bra.amps[i]) * ket.amps[i];
  return acc;
}

double tail_mass(const FockVector& v) {
  const int n = v.cutoff();
  const double total = norm_sq(v);
  if (total == 0.0) return 0.0;
  double tail = 0.0;
  for (int i = std::max(0, n - kTailSlots); i < n; ++i)
    tail += std::norm(v.amps[i]);
  return tail / total;
}

int auto_cutoff(double max_alpha_sq, int r, int q) {
  if (max_alpha_sq < 0.0 || r < 0 || q < 0)
    throw std::invalid_argument("auto_cutoff: negative parameter");
  const double n = max_alpha_sq + r + q +
                   12.0 * std::sqrt(max_alpha_sq + r + 1.0);
  const int cutoff = std::max(16, static_cast<int>(std::ceil(n)));
  if (cutoff > kCutoffCap)
    throw numeric_guard_error("auto_cutoff: exceeds hard cap 4096");
  return cutoff;
}

FockVector coherent_fock(Complex alpha, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coherent_fock: cutoff < 1");
  FockVector v;
  v.amps.resize(cutoff);
  const double a2 = std::norm(alpha);
  if (a2 == 0.0) {
    v.amps[0] = 1.0;
    return v;
  }
  const double la = 0.5 * std::log(a2);
  const double ph = std::arg(alpha);
  for (int n = 0; n < cutoff; ++n)
    v.amps[n] = std::polar(
        std::exp(-0.5 * a2 + n * la - 0.5 * log_factorial(n)), n * ph);
  check_tail(v, "coherent_fock");
  return v;
}

FockVector superposition_fock(const states::CoherentSuperposition& s,
                              int cutoff) {
  if (s.terms.empty())
    throw std::invalid_argument("superposition_fock: empty superposition");
  FockVector v;
  v.amps.assign(cutoff, Complex{0.0, 0.0});
  for (const auto& t : s.terms) {
    const FockVector c = coherent_fock(t.alpha, cutoff);
    for (int n = 0; n < cutoff; ++n) v.amps[n] += t.coeff * c.amps[n];
  }
  check_tail(v, "superposition_fock");
  return v;
}

FockVector apply_create(const FockVector& v, int k) {
  if (k < 0) throw std::invalid_argument("apply_create: negative k");
  FockVector w = v;
  for (int step = 0; step < k; ++step) {
    const int n = w.cutoff();
    FockVector next;
    next.amps.assign(n, Complex{0.0, 0.0});
    for (int m = 0; m + 1 < n; ++m)
      next.amps[m + 1] = std::sqrt(static_cast<double>(m + 1)) * w.amps[m];
    w = std::move(next);
  }
  if (k > 0) check_tail(w, "apply_create");
  return w;
}

FockVector apply_annihilate(const FockVector& v, int k) {
  if (k < 0) throw std::invalid_argument("apply_annihilate: negative k");
  FockVector w = v;
  for (int step = 0; step < k; ++step) {
    const int n = w.cutoff();
    FockVector next;
    next.amps.assign(n, Complex{0.0, 0.0});
    for (int m = 0; m + 1 < n; ++m)
      next.amps[m] = std::sqrt(static_cast<double>(m + 1)) * w.amps[m + 1];
    w = std::move(next);
  }
  return w;
}

FockVector displace_fock(const FockVector& v, Complex delta) {
  const int n = v.cutoff();
  if (n < 1) throw std::invalid_argument("displace_fock: empty vector");
  if (delta == Complex{0.0, 0.0}) return v;

  FockVector w;
  w.amps.assign(n, Complex{0.0, 0.0});

  const double x = std::norm(delta);            // |delta|^2
  const double ld = 0.5 * std::log(x);          // log|delta|
  const Complex unit = delta / std::abs(delta);

  // Lower triangle incl. diagonal: row m = col + d,
  //   D_{col+d, col} = sqrt(col!/(col+d)!) delta^d e^{-x/2} L_col^{(d)}(x).
  // Upper triangle: col = row + d,
  //   D_{row, row+d} = sqrt(row!/(row+d)!) (-conj(delta))^d e^{-x/2} L_row^{(d)}(x).
  // Both share the amplitude profile along a diagonal, which is walked with
  // the associated-Laguerre three-term recurrence; only the phase differs.
  for (int half = 0; half < 2; ++half) {
    Complex phase{1.0, 0.0};
    const Complex step = half == 0 ? unit : -std::conj(unit);
    const int d_lo = half == 0 ? 0 : 1;  // diagonal handled once
    for (int d = 0; d < n; ++d) {
      if (d >= d_lo) {
        // amp_j = exp(0.5 (ln j! - ln (j+d)!) + d ln|delta| - x/2)
        double log_amp = 0.5 * (0.0 - log_factorial(d)) + d * ld - 0.5 * x;
        double lag_prev = 1.0;           // L_0^{(d)}
        double lag_cur = 1.0 + d - x;    // L_1^{(d)}
        for (int j = 0; j + d < n; ++j) {
          const double lag = j == 0 ? lag_prev : lag_cur;
          if (j >= 1) {
            const double lag_next =
                ((2 * j + 1 + d - x) * lag_cur - (j + d) * lag_prev) / (j + 1);
            lag_prev = lag_cur;
            lag_cur = lag_next;
          }
          const Complex elem = phase * (std::exp(log_amp) * lag);
          if (half == 0)
            w.amps[j + d] += elem * v.amps[j];      // row j+d, col j
          else
            w.amps[j] += elem * v.amps[j + d];      // row j, col j+d
          log_amp += 0.5 * (std::log(static_cast<double>(j + 1)) -
                            std::log(static_cast<double>(j + 1 + d)));
        }
      }
      phase *= step;
    }
  }
  check_tail(w, "displace_fock");
  return w;
}

double wigner_fock(const FockVector& v, Complex beta) {
  const int n = v.cutoff();
  if (std::abs(beta) > 0.5 * std::sqrt(static_cast<double>(n)))
    throw std::invalid_argument(
        "wigner_fock: |beta| outside the kernel accuracy region");
  const double total = norm_sq(v);
  if (total <= 0.0) throw std::invalid_argument("wigner_fock: zero vector");
  const FockVector w = displace_fock(v, -beta);
  double parity = 0.0;
  for (int m = 0; m < n; ++m)
    parity += (m % 2 == 0 ? 1.0 : -1.0) * std::norm(w.amps[m]);
  return parity / total;
}

double sensitivity_fock(const FockVector& v, Complex delta) {
  const double total = norm_sq(v);
  if (total <= 0.0)
    throw std::invalid_argument("sensitivity_fock: zero vector");
  const FockVector w = displace_fock(v, delta);
  return std::norm(inner(v, w)) / (total * total);
}

FockVector build_state(const states::StateSpec& spec) {
  states::validate(spec);
  const states::CoherentSuperposition base = states::build_base(spec);

  int cutoff = auto_cutoff(max_alpha_sq(base), spec.r, spec.q);
  for (;;) {
    try {
      FockVector v = superposition_fock(base, cutoff);
      if (spec.mode == states::Mode::sa) {
        v = apply_create(v, spec.r);
        v = apply_annihilate(v, spec.q);
      } else if (spec.mode == states::Mode::as) {
        v = apply_annihilate(v, spec.q);
        v = apply_create(v, spec.r);
      }
      const double n2 = norm_sq(v);
      if (n2 < 1e-300)
        throw numeric_guard_error(
            "build_state: recipe annihilates the state");
      if (tail_mass(v) > kTailTol)
        throw numeric_guard_error("build_state: tail mass above tolerance");
      const double scale = 1.0 / std::sqrt(n2);
      for (Complex& a : v.amps) a *= scale;
      return v;
    } catch (const numeric_guard_error&) {
      if (cutoff >= kCutoffCap) throw;
      cutoff = std::min(kCutoffCap, cutoff * 2);
    }
  }
}

FockVector build_state_padded(const states::StateSpec& spec,
                              double max_abs_displacement) {
  if (!(max_abs_displacement >= 0.0) || !std::isfinite(max_abs_displacement))
    throw std::invalid_argument(
        "build_state_padded: displacement bound must be finite and >= 0");
  FockVector v = build_state(spec);

  // Support of D(delta)|v>: amplitude sqrt(n) grows to amax + |delta|, so
  // size the basis as if the state had been built at that amplitude.
  const double amax = std::sqrt(max_alpha_sq(states::build_base(spec)));
  const double reach = amax + max_abs_displacement;
  int target = auto_cutoff(reach * reach, spec.r, spec.q);

  // wigner_fock additionally demands |beta| <= sqrt(N)/2.
  const double floor_n = 4.0 * max_abs_displacement * max_abs_displacement;
  target = std::max(target, static_cast<int>(std::ceil(floor_n)) + kTailSlots);
  if (target > kCutoffCap)
    throw std::invalid_argument(
        "build_state_padded: displacement bound exceeds the basis cap");
  if (static_cast<int>(v.amps.size()) < target) v.amps.resize(target);
  return v;
}

}  // namespace subplanck::fock
