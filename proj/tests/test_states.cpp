// Unit tests for the state model: superposition constructors, closed-form
// normalization constants of raw and ladder-deformed states, the external
// JSON descriptor, and the validation guards.
//
// Deformed-norm reference values were frozen from an independent truncated
// Fock-space referee (build the superposition amplitudes, apply the ladder
// operators as explicit sqrt(n) shifts, take the squared norm; cutoff grown
// until the tail is negligible).  Generating script: mpmath/numpy one-liners
// quoted next to each constant.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <subplanck/states.hpp>
#include <subplanck/types.hpp>

#include <cmath>
#include <stdexcept>

using subplanck::Complex;
using subplanck::numeric_guard_error;
namespace st = subplanck::states;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("family constructors place components on the expected geometry") {
  const auto coh = st::make_coherent(Complex{0.3, -0.4});
  REQUIRE(coh.terms.size() == 1);
  CHECK(coh.terms[0].alpha == Complex{0.3, -0.4});
  CHECK(coh.terms[0].coeff == Complex{1.0, 0.0});

  const auto cat = st::make_cat(5.0);
  REQUIRE(cat.terms.size() == 2);
  CHECK(cat.terms[0].alpha.real() == doctest::Approx(5.0 * kInvSqrt2));
  CHECK(cat.terms[1].alpha.real() == doctest::Approx(-5.0 * kInvSqrt2));
  CHECK(cat.terms[0].alpha.imag() == 0.0);

  const auto comp = st::make_compass(2.0);
  REQUIRE(comp.terms.size() == 4);
  // +-c0/sqrt(2) on the real axis, +-i c0/sqrt(2) on the imaginary axis.
  CHECK(comp.terms[0].alpha == Complex{2.0 * kInvSqrt2, 0.0});
  CHECK(comp.terms[1].alpha == Complex{-2.0 * kInvSqrt2, 0.0});
  CHECK(comp.terms[2].alpha.imag() == doctest::Approx(2.0 * kInvSqrt2));
  CHECK(comp.terms[3].alpha.imag() == doctest::Approx(-2.0 * kInvSqrt2));

  CHECK_THROWS_AS(st::make_cat(0.0), std::invalid_argument);
  CHECK_THROWS_AS(st::make_compass(-1.0), std::invalid_argument);
}

TEST_CASE("raw superposition norms match the pairwise-overlap closed forms") {
  // Coherent states are unit vectors.
  CHECK(st::norm_superposition(st::make_coherent(Complex{1.2, 0.7})) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // Even cat: 2 (1 + e^{-c0^2}); at c0 = 5 the cross term is e^{-25}.
  const double cat5 = st::norm_superposition(st::make_cat(5.0));
  CHECK(cat5 == doctest::Approx(2.0 * (1.0 + std::exp(-25.0))).epsilon(1e-14));

  // Compass: 4 [1 + e^{-c0^2} + 2 e^{-c0^2/2} cos(c0^2/2)].
  for (double c0 : {1.0, 5.0}) {
    const double direct = st::norm_superposition(st::make_compass(c0));
    CHECK(direct == doctest::Approx(st::norm_compass(c0)).epsilon(1e-13));
  }
  // Fock referee: N(c0=1) = 9.729763606411138, N(c0=5) = 4.0000297476405295.
  CHECK(st::norm_compass(1.0) ==
        doctest::Approx(9.729763606411138).epsilon(1e-13));
  CHECK(st::norm_compass(5.0) ==
        doctest::Approx(4.0000297476405295).epsilon(1e-13));
}

TEST_CASE("deform computes closed-form norms for coherent bases") {
  // Fock referee (numpy ladder shifts, cutoff 600), alpha = 1/sqrt(2):
  //   additions-then-subtractions (r=4, q=2): 2357.015625
  //   subtractions-then-additions (r=4, q=2): 23.015625
  const auto base = st::make_coherent(Complex{kInvSqrt2, 0.0});
  const auto plus = st::deform(base, {st::Mode::sa, 4, 2});
  CHECK(plus.norm_const == doctest::Approx(2357.015625).epsilon(1e-12));
  const auto minus = st::deform(base, {st::Mode::as, 4, 2});
  CHECK(minus.norm_const == doctest::Approx(23.015625).epsilon(1e-12));

  // Undeformed recipe keeps the raw superposition norm.
  const auto none = st::deform(base, {st::Mode::none, 0, 0});
  CHECK(none.norm_const ==
        doctest::Approx(st::norm_superposition(base)).epsilon(1e-14));
}

TEST_CASE("deform computes closed-form norms for compass bases") {
  // Fock referee, compass c0 = 1:
  //   sa(24,12): 5.3520552736401877e42
  //   as(24,20): 3.177733448614056e20
  const auto base = st::make_compass(1.0);
  const auto sa = st::deform(base, {st::Mode::sa, 24, 12});
  CHECK(sa.norm_const == doctest::Approx(5.3520552736401877e42).epsilon(2e-13));
  const auto as = st::deform(base, {st::Mode::as, 24, 20});
  CHECK(as.norm_const == doctest::Approx(3.177733448614056e20).epsilon(2e-13));
}

TEST_CASE("deform rejects cat bases and annihilated states") {
  // No closed forms for two-term cat bases.
  CHECK_THROWS_AS(st::deform(st::make_cat(2.0), {st::Mode::sa, 1, 0}),
                  std::invalid_argument);
  // Subtracting from the vacuum annihilates the state: norm underflows.
  CHECK_THROWS_AS(st::deform(st::make_coherent(Complex{0.0, 0.0}),
                             {st::Mode::as, 0, 2}),
                  numeric_guard_error);
  // Orders beyond the validated Hermite bound are rejected.
  CHECK_THROWS_AS(st::deform(st::make_coherent(Complex{1.0, 0.0}),
                             {st::Mode::sa, st::kMaxOrder + 1, 0}),
                  std::invalid_argument);
}

TEST_CASE("spec validation guards the external parameter surface") {
  st::StateSpec ok;
  ok.family = st::Family::compass;
  ok.c0 = 1.0;
  ok.mode = st::Mode::sa;
  ok.r = 24;
  ok.q = 12;
  CHECK_NOTHROW(st::validate(ok));

  st::StateSpec cat_deformed = ok;
  cat_deformed.family = st::Family::cat;
  CHECK_THROWS_AS(st::validate(cat_deformed), std::invalid_argument);

  st::StateSpec bad_c0 = ok;
  bad_c0.c0 = 0.0;
  CHECK_THROWS_AS(st::validate(bad_c0), std::invalid_argument);

  st::StateSpec bad_order = ok;
  bad_order.q = -1;
  CHECK_THROWS_AS(st::validate(bad_order), std::invalid_argument);
  bad_order.q = st::kMaxOrder + 1;
  CHECK_THROWS_AS(st::validate(bad_order), std::invalid_argument);
}

TEST_CASE("JSON descriptor round-trips every field") {
  st::StateSpec spec;
  spec.family = st::Family::coherent;
  spec.alpha = Complex{0.25, -1.5};
  spec.mode = st::Mode::as;
  spec.r = 3;
  spec.q = 1;

  const auto back = st::spec_from_json(st::to_json(spec));
  CHECK(back.family == spec.family);
  CHECK(back.alpha == spec.alpha);
  CHECK(back.mode == spec.mode);
  CHECK(back.r == spec.r);
  CHECK(back.q == spec.q);

  st::StateSpec comp;
  comp.family = st::Family::compass;
  comp.c0 = 8.0;
  const auto back2 = st::spec_from_json(st::to_json(comp));
  CHECK(back2.family == st::Family::compass);
  CHECK(back2.c0 == 8.0);
  CHECK(back2.mode == st::Mode::none);
}

TEST_CASE("JSON parsing is strict about shape and names") {
  CHECK_THROWS_AS(st::spec_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(st::spec_from_json("{}"), std::invalid_argument);
  // Unknown family / mode names.
  CHECK_THROWS_AS(st::spec_from_json(R"({"family":"squeezed"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      st::spec_from_json(R"({"family":"compass","c0":1,"mode":"up"})"),
      std::invalid_argument);
  // alpha must be a two-element numeric array.
  CHECK_THROWS_AS(st::spec_from_json(R"({"family":"coherent","alpha":[1]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      st::spec_from_json(R"({"family":"coherent","alpha":"1+2i"})"),
      std::invalid_argument);
  // c0 belongs to cat/compass, alpha to coherent; mixing is rejected.
  CHECK_THROWS_AS(st::spec_from_json(R"({"family":"coherent","c0":2})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(st::spec_from_json(R"({"family":"cat","alpha":[1,0]})"),
                  std::invalid_argument);
}

TEST_CASE("name tables map both ways") {
  CHECK(st::family_from_name("compass") == st::Family::compass);
  CHECK(st::mode_from_name("as") == st::Mode::as);
  CHECK(std::string(st::family_name(st::Family::cat)) == "cat");
  CHECK(std::string(st::mode_name(st::Mode::none)) == "none");
  CHECK_THROWS_AS(st::family_from_name("kitten"), std::invalid_argument);
  CHECK_THROWS_AS(st::mode_from_name(""), std::invalid_argument);
}
