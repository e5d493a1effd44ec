#include "subplanck/states.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "subplanck/specialfn.hpp"

namespace subplanck::states {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
// Relative bound on the imaginary residue of quantities that must be real;
// anything larger signals a transcription bug, not roundoff.
constexpr double kImagTol = 1e-10;

double require_real(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw numeric_guard_error(std::string(what) + ": non-finite value");
  if (std::abs(z.imag()) > kImagTol * std::max(1.0, std::abs(z.real())))
    throw numeric_guard_error(std::string(what) +
                              ": imaginary residue above tolerance");
  return z.real();
}

// Pairwise weight conj(c_i) c_j G(a_i, a_j) exp(conj(a_i) a_j) common to all
// norm sums.
Complex pair_weight(const Term& ti, const Term& tj) {
  const Complex ai = ti.alpha;
  const Complex aj = tj.alpha;
  const double g = -0.5 * (std::norm(ai) + std::norm(aj));
  return std::conj(ti.coeff) * tj.coeff * std::exp(g + std::conj(ai) * aj);
}

// Photon-addition norm sum for one (i, j) amplitude pair:
//   sum_n gamma(n, r) H_{r-n,q}(i a_j, i conj(a_i)) H_{r-n,q}(i conj(a_i), i a_j)
// with the overall (-1)^{r+q} applied by the caller.
Complex sa_pair_norm_sum(Complex ai, Complex aj, int r, int q) {
  const Complex I{0.0, 1.0};
  Complex sum{0.0, 0.0};
  for (int n = 0; n <= r; ++n) {
    const double g = specialfn::gamma_coeff(n, r).value();
    sum += g * specialfn::hermite2(r - n, q, I * aj, I * std::conj(ai)) *
           specialfn::hermite2(r - n, q, I * std::conj(ai), I * aj);
  }
  return sum;
}

double norm_deformed(const CoherentSuperposition& base,
                     const OperatorRecipe& recipe) {
  const int r = recipe.r;
  const int q = recipe.q;
  Complex total{0.0, 0.0};
  if (recipe.mode == Mode::sa) {
    for (const Term& ti : base.terms)
      for (const Term& tj : base.terms)
        total += pair_weight(ti, tj) *
                 sa_pair_norm_sum(ti.alpha, tj.alpha, r, q);
    total *= (r + q) % 2 == 0 ? 1.0 : -1.0;
  } else {
    // Subtraction-then-addition: the n-sum collapses to the scaled Laguerre
    // polynomial r! L_r(-conj(a_i) a_j) with an eigenvalue factor
    // (conj(a_i) a_j)^q per pair.
    for (const Term& ti : base.terms)
      for (const Term& tj : base.terms) {
        const Complex z = std::conj(ti.alpha) * tj.alpha;
        total += pair_weight(ti, tj) * specialfn::ipow(z, q) *
                 specialfn::laguerre_scaled(r, -z);
      }
  }
  return require_real(total, "deform norm");
}

}  // namespace

CoherentSuperposition make_coherent(Complex alpha) {
  return CoherentSuperposition{{Term{1.0, alpha}}};
}

CoherentSuperposition make_cat(double c0) {
  if (!(c0 > 0.0))
    throw std::invalid_argument("make_cat: c0 must be positive");
  const double a = c0 * kSqrtHalf;
  return CoherentSuperposition{{Term{1.0, {a, 0.0}}, Term{1.0, {-a, 0.0}}}};
}

CoherentSuperposition make_compass(double c0) {
  if (!(c0 > 0.0))
    throw std::invalid_argument("make_compass: c0 must be positive");
  const double a = c0 * kSqrtHalf;
  return CoherentSuperposition{{Term{1.0, {a, 0.0}},
                                Term{1.0, {-a, 0.0}},
                                Term{1.0, {0.0, a}},
                                Term{1.0, {0.0, -a}}}};
}

double norm_superposition(const CoherentSuperposition& s) {
  if (s.terms.empty())
    throw std::invalid_argument("norm_superposition: empty superposition");
  Complex total{0.0, 0.0};
  for (const Term& ti : s.terms)
    for (const Term& tj : s.terms) total += pair_weight(ti, tj);
  const double n = require_real(total, "superposition norm");
  if (n <= 0.0)
    throw numeric_guard_error("norm_superposition: non-positive norm");
  return n;
}

double norm_compass(double c0) { return norm_superposition(make_compass(c0)); }

DeformedState deform(const CoherentSuperposition& base,
                     const OperatorRecipe& recipe) {
  const std::size_t k = base.terms.size();
  if (k != 1 && k != 4)
    throw std::invalid_argument(
        "deform: base must be a single coherent term or the four-term "
        "compass set (cat bases have no closed-form deformation)");
  if (recipe.r < 0 || recipe.q < 0 || recipe.r > kMaxOrder ||
      recipe.q > kMaxOrder)
    throw std::invalid_argument("deform: orders must lie in [0, 64]");
  if (recipe.mode == Mode::none && (recipe.r != 0 || recipe.q != 0))
    throw std::invalid_argument("deform: mode none requires r = q = 0");

  double norm = recipe.mode == Mode::none ? norm_superposition(base)
                                          : norm_deformed(base, recipe);
  if (!std::isfinite(norm))
    throw numeric_guard_error("deform: norm constant overflows double");
  if (norm < 1e-300)
    throw numeric_guard_error(
        "deform: norm constant vanishes (recipe annihilates the state)");
  return DeformedState{base, recipe, norm};
}

void validate(const StateSpec& spec) {
  if (spec.r < 0 || spec.q < 0 || spec.r > kMaxOrder || spec.q > kMaxOrder)
    throw std::invalid_argument("state: orders must lie in [0, 64]");
  if (spec.mode == Mode::none && (spec.r != 0 || spec.q != 0))
    throw std::invalid_argument("state: mode none requires r = q = 0");
  switch (spec.family) {
    case Family::coherent:
      if (!std::isfinite(spec.alpha.real()) ||
          !std::isfinite(spec.alpha.imag()))
        throw std::invalid_argument("state: alpha must be finite");
      break;
    case Family::cat:
      if (spec.mode != Mode::none)
        throw std::invalid_argument(
            "state: cat family supports no deformation mode");
      [[fallthrough]];
    case Family::compass:
      if (!(spec.c0 > 0.0) || !std::isfinite(spec.c0))
        throw std::invalid_argument("state: c0 must be positive and finite");
      break;
  }
}

CoherentSuperposition build_base(const StateSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::coherent:
      return make_coherent(spec.alpha);
    case Family::cat:
      return make_cat(spec.c0);
    case Family::compass:
      return make_compass(spec.c0);
  }
  throw std::invalid_argument("state: unknown family");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::coherent:
      return "coherent";
    case Family::cat:
      return "cat";
    case Family::compass:
      return "compass";
  }
  return "?";
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::none:
      return "none";
    case Mode::sa:
      return "sa";
    case Mode::as:
      return "as";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "coherent") return Family::coherent;
  if (name == "cat") return Family::cat;
  if (name == "compass") return Family::compass;
  throw std::invalid_argument("unknown family \"" + name + "\"");
}

Mode mode_from_name(const std::string& name) {
  if (name == "none") return Mode::none;
  if (name == "sa") return Mode::sa;
  if (name == "as") return Mode::as;
  throw std::invalid_argument("unknown mode \"" + name + "\"");
}

std::string to_json(const StateSpec& spec) {
  nlohmann::ordered_json j;
  j["family"] = family_name(spec.family);
  if (spec.family == Family::coherent)
    j["alpha"] = {spec.alpha.real(), spec.alpha.imag()};
  else
    j["c0"] = spec.c0;
  j["mode"] = mode_name(spec.mode);
  j["r"] = spec.r;
  j["q"] = spec.q;
  return j.dump();
}

StateSpec spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("state JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("state JSON: not an object");

  StateSpec spec;
  if (!j.contains("family") || !j["family"].is_string())
    throw std::invalid_argument("state JSON: missing string field \"family\"");
  spec.family = family_from_name(j["family"].get<std::string>());

  if (spec.family == Family::coherent) {
    if (!j.contains("alpha") || !j["alpha"].is_array() ||
        j["alpha"].size() != 2 || !j["alpha"][0].is_number() ||
        !j["alpha"][1].is_number())
      throw std::invalid_argument(
          "state JSON: coherent family needs \"alpha\": [re, im]");
    spec.alpha = Complex{j["alpha"][0].get<double>(),
                         j["alpha"][1].get<double>()};
  } else {
    if (!j.contains("c0") || !j["c0"].is_number())
      throw std::invalid_argument(
          "state JSON: cat/compass family needs numeric \"c0\"");
    spec.c0 = j["c0"].get<double>();
  }

  if (j.contains("mode")) {
    if (!j["mode"].is_string())
      throw std::invalid_argument("state JSON: \"mode\" must be a string");
    spec.mode = mode_from_name(j["mode"].get<std::string>());
  }
  for (const char* key : {"r", "q"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_number_integer() || j[key].get<int>() < 0)
      throw std::invalid_argument(std::string("state JSON: \"") + key +
                                  "\" must be a nonnegative integer");
  }
  if (j.contains("r")) spec.r = j["r"].get<int>();
  if (j.contains("q")) spec.q = j["q"].get<int>();

  validate(spec);
  return spec;
}

}  // namespace subplanck::states
