#pragma once

#include <vector>

#include "subplanck/states.hpp"
#include "subplanck/types.hpp"

namespace subplanck::fock {

// Truncation policy: a vector is adequately resolved when the probability
// mass in its last kTailSlots amplitudes is at most kTailTol of its norm.
inline constexpr int kTailSlots = 8;
inline constexpr double kTailTol = 1e-12;
inline constexpr int kCutoffCap = 4096;

// Truncated number-basis ket; amps[n] multiplies |n>.  Nothing here assumes
// normalization -- norms are tracked explicitly by callers.
struct FockVector {
  std::vector<Complex> amps;

  int cutoff() const { return static_cast<int>(amps.size()); }
};

double norm_sq(const FockVector& v);

// <bra|ket>, conjugate-linear in bra; shorter vector is zero-padded.
Complex inner(const FockVector& bra, const FockVector& ket);

// Probability share of the last kTailSlots amplitudes relative to the norm.
double tail_mass(const FockVector& v);

// Basis size from the support heuristic
//   N >= max|a_i|^2 + r + q + 12 sqrt(max|a_i|^2 + r + 1);
// builders then double N until the tail invariant passes (hard cap 4096).
int auto_cutoff(double max_alpha_sq, int r, int q);

// a_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), assembled in log domain.
FockVector coherent_fock(Complex alpha, int cutoff);
FockVector superposition_fock(const states::CoherentSuperposition& s,
                              int cutoff);

// Ladder operators applied k times, same cutoff, unnormalized result.
// apply_create raises the tail-mass guard when the shifted-out amplitudes
// carry non-negligible mass.
FockVector apply_create(const FockVector& v, int k = 1);
FockVector apply_annihilate(const FockVector& v, int k = 1);

// D(delta) v with D built from the closed-form Laguerre matrix elements,
// streamed diagonal by diagonal (no N x N matrix is materialized).
FockVector displace_fock(const FockVector& v, Complex delta);

// Wigner value in the peak-1 convention (vacuum at the origin gives 1),
// evaluated as the parity expectation of the displaced state.  Requires
// |beta| <= sqrt(cutoff)/2, the kernel's accuracy region.
double wigner_fock(const FockVector& v, Complex beta);

// |<v|D(delta)|v>|^2 / <v|v>^2.
double sensitivity_fock(const FockVector& v, Complex delta);

// Full pipeline for a state descriptor: build the base superposition, apply
// the ladder recipe, normalize; the cutoff starts at auto_cutoff and doubles
// until the tail invariant holds.
FockVector build_state(const states::StateSpec& spec);

// build_state with extra zero-padding so the vector can be displaced by up
// to |delta| = max_abs_displacement without tripping the tail guard (and
// satisfies the wigner_fock accuracy precondition at that radius).
FockVector build_state_padded(const states::StateSpec& spec,
                              double max_abs_displacement);

}  // namespace subplanck::fock
