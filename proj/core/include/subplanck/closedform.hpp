#pragma once

#include <vector>

#include "subplanck/states.hpp"
#include "subplanck/types.hpp"

namespace subplanck::closedform {

// Cross-Wigner of |alpha_i><alpha_j| in the peak-1 convention:
//   G(a_i,a_j) exp[-a_i conj(a_j) - 2(|b|^2 - conj(a_j) b - a_i conj(b))]
// with G(k,l) = exp[-(|k|^2+|l|^2)/2].  Hermitian (i,j) pairing is the
// caller's job.
Complex wigner_cross(Complex alpha_i, Complex alpha_j, Complex beta);

// Displaced cross overlap <alpha_i|D(delta)|alpha_j>:
//   G(a_i,a_j) exp[conj(a_i) a_j + conj(a_i) d - a_j conj(d) - |d|^2/2].
Complex overlap_cross(Complex alpha_i, Complex alpha_j, Complex delta);

// Prepared evaluator for one state and one quantity.  Construction hoists
// every point-independent factor of the closed-form sums (pair weights,
// ladder weights, Hermite coefficient tables, constant-argument power
// tables); each call then costs O(pairs * r * q) with no allocation.
// Immutable after construction and safe to share across threads.
class PointEvaluator {
 public:
  enum class Quantity { wigner, sensitivity };

  PointEvaluator(const states::StateSpec& spec, Quantity quantity);
  PointEvaluator(const states::DeformedState& state, Quantity quantity);

  // beta for wigner, delta for sensitivity (both in the (x+ip)/sqrt(2)
  // mapping).  Wigner values pass a realness-residue guard; sensitivity
  // values are normalized to 1 at zero displacement and guarded against
  // exceeding 1 + 1e-9.
  double operator()(Complex point) const;

  Quantity quantity() const { return quantity_; }

 private:
  void prepare();
  double eval_wigner(Complex beta) const;
  Complex raw_overlap(Complex delta) const;

  Quantity quantity_;
  states::Mode mode_ = states::Mode::none;
  int r_ = 0;
  int q_ = 0;
  int k_ = 0;
  std::vector<Complex> alphas_;
  std::vector<Complex> coeffs_;
  std::vector<Complex> pair_w_;            // k_ x k_, quantity-folded weights
  std::vector<double> gamma_signed_;       // gamma_coeff(n, r), n = 0..r
  std::vector<double> gamma_abs_;          // |gamma_coeff(n, r)|
  std::vector<std::vector<double>> hcoef_;  // hcoef_[m][k] for H_{m, q}
  std::vector<std::vector<Complex>> ya_;   // (i alpha_mu)^t, t <= q
  std::vector<std::vector<Complex>> yb_;   // (-i conj(alpha_mu))^t, t <= q
  double rfact_ = 1.0;                     // r!
  double norm_ = 1.0;                      // Wigner divisor
  double raw0_sq_ = 1.0;                   // |raw_overlap(0)|^2
};

// Closed-form Wigner functions per family (peak-1 convention).
double wigner_superposition(const states::CoherentSuperposition& s,
                            Complex beta);
double wigner_sa_coherent(Complex alpha, int r, int q, Complex beta);
double wigner_as_coherent(Complex alpha, int r, int q, Complex beta);
double wigner_sa_kitten(const states::DeformedState& state, Complex beta);
double wigner_as_kitten(const states::DeformedState& state, Complex beta);

// Family dispatch on a state descriptor (one-shot; for grids construct a
// PointEvaluator once instead).
double wigner(const states::StateSpec& spec, Complex beta);

// Displacement sensitivity |<psi|D(delta)|psi>|^2 with S(0) = 1.
double sensitivity(const states::StateSpec& spec, Complex delta);

// Photon-number distributions of the deformed coherent family, normalized
// to sum to 1.  Zero outside the support (n < r - q for sa, n < r for as).
double pnd_sa_coherent(Complex alpha, int r, int q, int n);
double pnd_as_coherent(Complex alpha, int r, int q, int n);
std::vector<double> pnd(const states::StateSpec& spec, int n_max);

// Squared overlap between the normalized deformed state and its normalized
// base: closed form for the compass family, truncated-basis numerics for
// the coherent family.
double fidelity_deformed_vs_base(const states::DeformedState& state);

}  // namespace subplanck::closedform
