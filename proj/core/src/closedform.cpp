#include "subplanck/closedform.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "subplanck/fock.hpp"
#include "subplanck/specialfn.hpp"

namespace subplanck::closedform {

namespace {

using specialfn::gamma_coeff;
using specialfn::hermite2;
using specialfn::ipow;
using specialfn::log_factorial;
using states::Mode;

constexpr Complex kI{0.0, 1.0};
constexpr double kImagTol = 1e-10;
constexpr int kMaxAmps = 4;
constexpr int kPow = states::kMaxOrder + 1;

// L_r(z) by the three-term recurrence; the r! factor is hoisted by callers.
Complex laguerre_plain(int r, Complex z) {
  if (r == 0) return 1.0;
  Complex prev = 1.0;
  Complex cur = 1.0 - z;
  for (int j = 1; j < r; ++j) {
    const Complex next = ((static_cast<double>(2 * j + 1) - z) * cur -
                          static_cast<double>(j) * prev) /
                         static_cast<double>(j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double guarded_real(Complex w, const char* what) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw numeric_guard_error(std::string(what) + ": non-finite value");
  if (std::abs(w.imag()) > kImagTol * std::max(1.0, std::abs(w.real())))
    throw numeric_guard_error(std::string(what) +
                              ": imaginary residue above tolerance");
  return w.real();
}

void fill_powers(Complex base, int top, Complex* out) {
  out[0] = 1.0;
  for (int t = 1; t <= top; ++t) out[t] = out[t - 1] * base;
}

}  // namespace

Complex wigner_cross(Complex alpha_i, Complex alpha_j, Complex beta) {
  const double g = -0.5 * (std::norm(alpha_i) + std::norm(alpha_j));
  const Complex arg = g - alpha_i * std::conj(alpha_j) -
                      2.0 * (std::norm(beta) - std::conj(alpha_j) * beta -
                             alpha_i * std::conj(beta));
  return std::exp(arg);
}

Complex overlap_cross(Complex alpha_i, Complex alpha_j, Complex delta) {
  const double g = -0.5 * (std::norm(alpha_i) + std::norm(alpha_j));
  const Complex arg = g + std::conj(alpha_i) * alpha_j +
                      std::conj(alpha_i) * delta -
                      alpha_j * std::conj(delta) - 0.5 * std::norm(delta);
  return std::exp(arg);
}

PointEvaluator::PointEvaluator(const states::StateSpec& spec,
                               Quantity quantity)
    : quantity_(quantity), mode_(spec.mode), r_(spec.r), q_(spec.q) {
  states::validate(spec);
  if (spec.family == states::Family::coherent && spec.mode == Mode::as &&
      spec.q > 0 && spec.alpha == Complex{0.0, 0.0})
    throw std::invalid_argument(
        "null state: photon subtraction from the vacuum");
  const states::CoherentSuperposition base = states::build_base(spec);
  for (const auto& t : base.terms) {
    coeffs_.push_back(t.coeff);
    alphas_.push_back(t.alpha);
  }
  k_ = static_cast<int>(alphas_.size());
  norm_ = spec.mode == Mode::none
              ? states::norm_superposition(base)
              : states::deform(base, {spec.mode, spec.r, spec.q}).norm_const;
  prepare();
}

PointEvaluator::PointEvaluator(const states::DeformedState& state,
                               Quantity quantity)
    : quantity_(quantity),
      mode_(state.recipe.mode),
      r_(state.recipe.r),
      q_(state.recipe.q),
      norm_(state.norm_const) {
  for (const auto& t : state.base.terms) {
    coeffs_.push_back(t.coeff);
    alphas_.push_back(t.alpha);
  }
  k_ = static_cast<int>(alphas_.size());
  if (!(norm_ > 0.0) || !std::isfinite(norm_))
    throw std::invalid_argument("evaluator: norm constant must be positive");
  prepare();
}

void PointEvaluator::prepare() {
  if (k_ < 1 || k_ > kMaxAmps)
    throw std::invalid_argument(
        "evaluator: between 1 and 4 coherent components supported");
  if (r_ < 0 || q_ < 0 || r_ > states::kMaxOrder || q_ > states::kMaxOrder)
    throw std::invalid_argument("evaluator: orders must lie in [0, 64]");
  if (mode_ == Mode::none && (r_ != 0 || q_ != 0))
    throw std::invalid_argument("evaluator: mode none requires r = q = 0");

  // Point-independent pair weights.  Wigner pairs carry c_i conj(c_j) and
  // the cross-Wigner prefactor exp(-a_i conj(a_j)); overlap pairs carry
  // conj(c_i) c_j and exp(+conj(a_i) a_j).  The photon-subtraction
  // eigenvalue powers are constant too and fold in here.
  pair_w_.assign(static_cast<std::size_t>(k_) * k_, Complex{});
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) {
      const Complex ai = alphas_[i];
      const Complex aj = alphas_[j];
      const double g = -0.5 * (std::norm(ai) + std::norm(aj));
      Complex w;
      if (quantity_ == Quantity::wigner)
        w = coeffs_[i] * std::conj(coeffs_[j]) *
            std::exp(g - ai * std::conj(aj));
      else
        w = std::conj(coeffs_[i]) * coeffs_[j] *
            std::exp(g + std::conj(ai) * aj);
      if (mode_ == Mode::as) {
        const Complex prod = quantity_ == Quantity::wigner
                                 ? ai * std::conj(aj)
                                 : std::conj(ai) * aj;
        w *= ipow(prod, q_);
      }
      pair_w_[static_cast<std::size_t>(i) * k_ + j] = w;
    }

  if (mode_ != Mode::none) {
    gamma_signed_.resize(r_ + 1);
    gamma_abs_.resize(r_ + 1);
    for (int n = 0; n <= r_; ++n) {
      gamma_signed_[n] = gamma_coeff(n, r_).value();
      gamma_abs_[n] = std::abs(gamma_signed_[n]);
    }
    rfact_ = std::exp(log_factorial(r_));
  }

  if (mode_ == Mode::sa) {
    // hcoef_[m][k] = (-1)^k m! q! / (k! (m-k)! (q-k)!), the H_{m,q}
    // expansion coefficients, via the exact ratio recurrence.
    hcoef_.resize(r_ + 1);
    for (int m = 0; m <= r_; ++m) {
      const int kmax = std::min(m, q_);
      hcoef_[m].resize(kmax + 1);
      double c = 1.0;
      for (int k = 0; k <= kmax; ++k) {
        hcoef_[m][k] = c;
        c *= -static_cast<double>((m - k) * (q_ - k)) / (k + 1);
      }
    }
    ya_.assign(k_, {});
    yb_.assign(k_, {});
    for (int mu = 0; mu < k_; ++mu) {
      ya_[mu].resize(q_ + 1);
      yb_[mu].resize(q_ + 1);
      fill_powers(kI * alphas_[mu], q_, ya_[mu].data());
      fill_powers(-kI * std::conj(alphas_[mu]), q_, yb_[mu].data());
    }
  }

  if (quantity_ == Quantity::sensitivity) {
    const Complex raw0 = raw_overlap({0.0, 0.0});
    const double mag_sq = std::norm(raw0);
    if (!(mag_sq > 0.0) || !std::isfinite(mag_sq))
      throw numeric_guard_error(
          "sensitivity: degenerate zero-displacement overlap");
    raw0_sq_ = mag_sq;
  }
}

double PointEvaluator::operator()(Complex point) const {
  if (quantity_ == Quantity::wigner) return eval_wigner(point);
  const double s = std::norm(raw_overlap(point)) / raw0_sq_;
  if (!std::isfinite(s))
    throw numeric_guard_error("sensitivity: non-finite value");
  if (s > 1.0 + 1e-9)
    throw numeric_guard_error(
        "sensitivity: value exceeds 1 (normalization bug)");
  return std::min(s, 1.0);
}

double PointEvaluator::eval_wigner(Complex beta) const {
  // Pairwise exponential: exp(2 conj(a_j) b + 2 a_i conj(b) - 2|b|^2)
  // assembled from one complex exp per amplitude.
  const double s = std::exp(-2.0 * std::norm(beta));
  std::array<Complex, kMaxAmps> ebar;
  for (int mu = 0; mu < k_; ++mu)
    ebar[mu] = std::exp(2.0 * std::conj(alphas_[mu]) * beta);

  Complex total{0.0, 0.0};
  if (mode_ == Mode::none) {
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        total += pair_w_[static_cast<std::size_t>(i) * k_ + j] *
                 (s * ebar[j] * std::conj(ebar[i]));
  } else if (mode_ == Mode::sa) {
    // u[mu][t] = (i conj(Omega_mu))^t, v[mu][t] = (-i Omega_mu)^t with
    // Omega_mu = 2 beta - alpha_mu; the pair sum is
    //   sum_n gamma(n) H_{r-n,q}(u_j, i a_i) H_{r-n,q}(v_i, -i conj(a_j)).
    std::array<Complex, kMaxAmps * kPow> ubuf, vbuf;
    for (int mu = 0; mu < k_; ++mu) {
      const Complex om = 2.0 * beta - alphas_[mu];
      fill_powers(kI * std::conj(om), r_, &ubuf[mu * kPow]);
      fill_powers(-kI * om, r_, &vbuf[mu * kPow]);
    }
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) {
        const Complex* uj = &ubuf[j * kPow];
        const Complex* vi = &vbuf[i * kPow];
        const Complex* yai = ya_[i].data();
        const Complex* ybj = yb_[j].data();
        Complex nsum{0.0, 0.0};
        for (int n = 0; n <= r_; ++n) {
          const int m = r_ - n;
          const auto& hc = hcoef_[m];
          const int kmax = static_cast<int>(hc.size()) - 1;
          Complex h1{0.0, 0.0}, h2{0.0, 0.0};
          for (int k = 0; k <= kmax; ++k) {
            h1 += hc[k] * uj[m - k] * yai[q_ - k];
            h2 += hc[k] * vi[m - k] * ybj[q_ - k];
          }
          nsum += gamma_signed_[n] * h1 * h2;
        }
        total += pair_w_[static_cast<std::size_t>(i) * k_ + j] *
                 (s * ebar[j] * std::conj(ebar[i])) * nsum;
      }
  } else {
    // Subtraction-then-addition: the ladder sum collapses to
    //   r! L_r(-z_ij), z_ij = (2b - a_i)(conj(a_j) - 2 conj(b)),
    // and the (a_i conj(a_j))^q eigenvalue powers live in pair_w_.
    std::array<Complex, kMaxAmps> om;
    for (int mu = 0; mu < k_; ++mu) om[mu] = 2.0 * beta - alphas_[mu];
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) {
        const Complex z = -om[i] * std::conj(om[j]);
        total += pair_w_[static_cast<std::size_t>(i) * k_ + j] *
                 (s * ebar[j] * std::conj(ebar[i])) *
                 (rfact_ * laguerre_plain(r_, -z));
      }
    if (r_ % 2 == 1) total = -total;
  }
  return guarded_real(total / norm_, "wigner");
}

Complex PointEvaluator::raw_overlap(Complex delta) const {
  const double s = std::exp(-0.5 * std::norm(delta));
  std::array<Complex, kMaxAmps> e1, e2;
  for (int mu = 0; mu < k_; ++mu) {
    e1[mu] = std::exp(std::conj(alphas_[mu]) * delta);
    e2[mu] = std::exp(-alphas_[mu] * std::conj(delta));
  }

  Complex total{0.0, 0.0};
  if (mode_ == Mode::none) {
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        total += pair_w_[static_cast<std::size_t>(i) * k_ + j] *
                 (e1[i] * e2[j]);
  } else if (mode_ == Mode::sa) {
    // Pair sum: sum_n |gamma(n)| H_{r-n,q}(i (conj(a_i) - conj(d)), i a_j)
    //                          * H_{r-n,q}(-i (a_j + d), -i conj(a_i)).
    std::array<Complex, kMaxAmps * kPow> x1buf, x2buf;
    for (int mu = 0; mu < k_; ++mu) {
      fill_powers(kI * (std::conj(alphas_[mu]) - std::conj(delta)), r_,
                  &x1buf[mu * kPow]);
      fill_powers(-kI * (alphas_[mu] + delta), r_, &x2buf[mu * kPow]);
    }
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) {
        const Complex* x1i = &x1buf[i * kPow];
        const Complex* x2j = &x2buf[j * kPow];
        const Complex* yaj = ya_[j].data();
        const Complex* ybi = yb_[i].data();
        Complex nsum{0.0, 0.0};
        for (int n = 0; n <= r_; ++n) {
          const int m = r_ - n;
          const auto& hc = hcoef_[m];
          const int kmax = static_cast<int>(hc.size()) - 1;
          Complex h1{0.0, 0.0}, h2{0.0, 0.0};
          for (int k = 0; k <= kmax; ++k) {
            h1 += hc[k] * x1i[m - k] * yaj[q_ - k];
            h2 += hc[k] * x2j[m - k] * ybi[q_ - k];
          }
          nsum += gamma_abs_[n] * h1 * h2;
        }
        total += pair_w_[static_cast<std::size_t>(i) * k_ + j] *
                 (e1[i] * e2[j]) * nsum;
      }
  } else {
    for (int i = 0; i < k_; ++i) {
      const Complex a = std::conj(alphas_[i]) - std::conj(delta);
      for (int j = 0; j < k_; ++j) {
        const Complex z = a * (alphas_[j] + delta);
        total += pair_w_[static_cast<std::size_t>(i) * k_ + j] *
                 (e1[i] * e2[j]) * (rfact_ * laguerre_plain(r_, -z));
      }
    }
  }
  return s * total;
}

double wigner_superposition(const states::CoherentSuperposition& s,
                            Complex beta) {
  const states::DeformedState plain{s, {Mode::none, 0, 0},
                                    states::norm_superposition(s)};
  return PointEvaluator(plain, PointEvaluator::Quantity::wigner)(beta);
}

double wigner_sa_coherent(Complex alpha, int r, int q, Complex beta) {
  const auto state = states::deform(states::make_coherent(alpha),
                                    {Mode::sa, r, q});
  return PointEvaluator(state, PointEvaluator::Quantity::wigner)(beta);
}

double wigner_as_coherent(Complex alpha, int r, int q, Complex beta) {
  if (alpha == Complex{0.0, 0.0} && q > 0)
    throw std::invalid_argument(
        "null state: photon subtraction from the vacuum");
  const auto state = states::deform(states::make_coherent(alpha),
                                    {Mode::as, r, q});
  return PointEvaluator(state, PointEvaluator::Quantity::wigner)(beta);
}

double wigner_sa_kitten(const states::DeformedState& state, Complex beta) {
  if (state.base.terms.size() != 4 || state.recipe.mode != Mode::sa)
    throw std::invalid_argument(
        "wigner_sa_kitten: needs a compass base with mode sa");
  return PointEvaluator(state, PointEvaluator::Quantity::wigner)(beta);
}

double wigner_as_kitten(const states::DeformedState& state, Complex beta) {
  if (state.base.terms.size() != 4 || state.recipe.mode != Mode::as)
    throw std::invalid_argument(
        "wigner_as_kitten: needs a compass base with mode as");
  return PointEvaluator(state, PointEvaluator::Quantity::wigner)(beta);
}

double wigner(const states::StateSpec& spec, Complex beta) {
  return PointEvaluator(spec, PointEvaluator::Quantity::wigner)(beta);
}

double sensitivity(const states::StateSpec& spec, Complex delta) {
  return PointEvaluator(spec, PointEvaluator::Quantity::sensitivity)(delta);
}

namespace {

double pnd_sa_term(double a2, int r, int q, int n, double log_norm) {
  if (q + n - r < 0) return 0.0;
  const double combinatorial = 2.0 * log_factorial(q + n) -
                               log_factorial(n) -
                               2.0 * log_factorial(q + n - r);
  const int e = q - r + n;
  if (a2 == 0.0)
    return e == 0 ? std::exp(combinatorial - log_norm) : 0.0;
  return std::exp(combinatorial + e * std::log(a2) - a2 - log_norm);
}

double pnd_as_term(double a2, int r, int q, int n, double log_norm) {
  if (n < r) return 0.0;
  const double combinatorial =
      log_factorial(n) - 2.0 * log_factorial(n - r);
  const int e = q - r + n;
  if (a2 == 0.0)
    return e == 0 ? std::exp(combinatorial - log_norm) : 0.0;
  return std::exp(combinatorial + e * std::log(a2) - a2 - log_norm);
}

}  // namespace

double pnd_sa_coherent(Complex alpha, int r, int q, int n) {
  if (n < 0) throw std::invalid_argument("pnd: n must be >= 0");
  const auto state =
      states::deform(states::make_coherent(alpha), {Mode::sa, r, q});
  return pnd_sa_term(std::norm(alpha), r, q, n, std::log(state.norm_const));
}

double pnd_as_coherent(Complex alpha, int r, int q, int n) {
  if (n < 0) throw std::invalid_argument("pnd: n must be >= 0");
  if (alpha == Complex{0.0, 0.0} && q > 0)
    throw std::invalid_argument(
        "null state: photon subtraction from the vacuum");
  const auto state =
      states::deform(states::make_coherent(alpha), {Mode::as, r, q});
  return pnd_as_term(std::norm(alpha), r, q, n, std::log(state.norm_const));
}

std::vector<double> pnd(const states::StateSpec& spec, int n_max) {
  states::validate(spec);
  if (spec.family != states::Family::coherent)
    throw std::invalid_argument(
        "pnd: closed forms cover the coherent family only");
  if (n_max < 0) throw std::invalid_argument("pnd: n_max must be >= 0");
  if (spec.mode == Mode::as && spec.q > 0 &&
      spec.alpha == Complex{0.0, 0.0})
    throw std::invalid_argument(
        "null state: photon subtraction from the vacuum");

  const Mode mode = spec.mode == Mode::none ? Mode::sa : spec.mode;
  const int r = spec.mode == Mode::none ? 0 : spec.r;
  const int q = spec.mode == Mode::none ? 0 : spec.q;
  const auto state =
      states::deform(states::make_coherent(spec.alpha), {mode, r, q});
  const double log_norm = std::log(state.norm_const);
  const double a2 = std::norm(spec.alpha);

  std::vector<double> out(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    out[n] = mode == Mode::sa ? pnd_sa_term(a2, r, q, n, log_norm)
                              : pnd_as_term(a2, r, q, n, log_norm);
  return out;
}

double fidelity_deformed_vs_base(const states::DeformedState& state) {
  const auto& terms = state.base.terms;
  const int r = state.recipe.r;
  const int q = state.recipe.q;
  if (state.recipe.mode == Mode::none) return 1.0;

  if (terms.size() == 1) {
    // No dedicated closed form for a single component; evaluate in the
    // truncated number basis.
    states::StateSpec deformed;
    deformed.family = states::Family::coherent;
    deformed.alpha = terms[0].alpha;
    deformed.mode = state.recipe.mode;
    deformed.r = r;
    deformed.q = q;
    states::StateSpec plain = deformed;
    plain.mode = Mode::none;
    plain.r = plain.q = 0;
    return std::norm(
        fock::inner(fock::build_state(plain), fock::build_state(deformed)));
  }

  if (terms.size() != 4)
    throw std::invalid_argument("fidelity: unsupported base family");

  const double base_norm = states::norm_superposition(state.base);
  Complex overlap{0.0, 0.0};
  for (const auto& ti : terms)
    for (const auto& tj : terms) {
      const Complex ai = ti.alpha;
      const Complex aj = tj.alpha;
      const double g = -0.5 * (std::norm(ai) + std::norm(aj));
      Complex w = std::conj(ti.coeff) * tj.coeff *
                  std::exp(g + std::conj(ai) * aj);
      if (state.recipe.mode == Mode::sa)
        w *= hermite2(r, q, kI * std::conj(ai), kI * aj);
      else
        w *= ipow(std::conj(ai), r) * ipow(aj, q);
      overlap += w;
    }
  return std::norm(overlap) / (state.norm_const * base_norm);
}

}  // namespace subplanck::closedform
