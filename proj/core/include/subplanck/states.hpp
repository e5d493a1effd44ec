#pragma once

#include <string>
#include <vector>

#include "subplanck/types.hpp"

namespace subplanck::states {

enum class Family { coherent, cat, compass };
enum class Mode { none, sa, as };

// Highest photon addition/subtraction order the closed forms are validated
// for (Hermite evaluation bound).
inline constexpr int kMaxOrder = 64;

// One coherent component: coeff * |alpha>.
struct Term {
  Complex coeff;
  Complex alpha;
};

// Unnormalized superposition of coherent states; the families used here are
// coherent (1 term), horizontal cat at +-c0/sqrt(2) (2 terms) and compass at
// {+-c0/sqrt(2), +-i c0/sqrt(2)} (4 terms).
struct CoherentSuperposition {
  std::vector<Term> terms;
};

// Photon ladder recipe.  Mode sa applies r additions then q subtractions
// (the operator reads a^q adag^r left to right); mode as is the reverse
// order, adag^r a^q.
struct OperatorRecipe {
  Mode mode = Mode::none;
  int r = 0;
  int q = 0;
};

// A base superposition with a ladder recipe applied and the closed-form
// squared norm <base| op^dag op |base> of the raw deformed vector.
struct DeformedState {
  CoherentSuperposition base;
  OperatorRecipe recipe;
  double norm_const = 0.0;
};

CoherentSuperposition make_coherent(Complex alpha);
CoherentSuperposition make_cat(double c0);
CoherentSuperposition make_compass(double c0);

// Squared norm of the raw superposition via pairwise coherent overlaps
// sum_ij conj(c_i) c_j exp(-(|a_i|^2+|a_j|^2)/2) exp(conj(a_i) a_j).
double norm_superposition(const CoherentSuperposition& s);
double norm_compass(double c0);

// Computes the family-specific closed-form normalization constant.  Bases
// must be a single coherent term or the four-term compass set; two-term cat
// bases are rejected (no closed forms for them).
DeformedState deform(const CoherentSuperposition& base,
                     const OperatorRecipe& recipe);

// External parameter set for a (possibly deformed) state of one supported
// family; the JSON-facing descriptor used by the CLI and test fixtures.
struct StateSpec {
  Family family = Family::coherent;
  Complex alpha{0.0, 0.0};  // coherent family only
  double c0 = 0.0;          // cat/compass families only
  Mode mode = Mode::none;
  int r = 0;
  int q = 0;
};

// Throws std::invalid_argument on out-of-range orders, non-positive c0,
// or a deformation mode on the cat family.
void validate(const StateSpec& spec);

CoherentSuperposition build_base(const StateSpec& spec);

// JSON document {"family": "coherent"|"cat"|"compass", "alpha": [re, im] or
// "c0": value, "mode": "sa"|"as"|"none", "r": int, "q": int}.
std::string to_json(const StateSpec& spec);
StateSpec spec_from_json(const std::string& text);

const char* family_name(Family f);
const char* mode_name(Mode m);
Family family_from_name(const std::string& name);
Mode mode_from_name(const std::string& name);

}  // namespace subplanck::states
