#pragma once

#include <array>
#include <vector>

#include "subplanck/closedform.hpp"
#include "subplanck/states.hpp"
#include "subplanck/types.hpp"

namespace subplanck::analysis {

// Phase-space window and sampling density.  Coordinates are the real pair
// (x, p); evaluators are called at the complex point (x + i p)/sqrt(2).
struct GridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  double p_min = -4.0;
  double p_max = 4.0;
  int nx = 201;
  int np = 201;
};

// Sampled scalar field over a GridSpec window.  Row-major with x as the
// slow index: values[ix * spec.np + ip].
struct PhaseGrid {
  GridSpec spec;
  std::vector<double> values;

  double x_at(int ix) const {
    return spec.nx < 2 ? spec.x_min
                       : spec.x_min + (spec.x_max - spec.x_min) * ix /
                             (spec.nx - 1);
  }
  double p_at(int ip) const {
    return spec.np < 2 ? spec.p_min
                       : spec.p_min + (spec.p_max - spec.p_min) * ip /
                             (spec.np - 1);
  }
  double at(int ix, int ip) const {
    return values[static_cast<std::size_t>(ix) * spec.np + ip];
  }
};

// Structure metrics need enough samples to resolve interference fringes;
// coarser requests are rejected rather than silently producing nonsense.
constexpr int kMinGridSide = 33;

// Sentinel radius for a ray that never reaches zero inside the scan range.
constexpr double kNoZero = -1.0;

// Evaluate a point function over the window, split across worker threads.
// Guard failures are rethrown with the offending (x, p) attached.
PhaseGrid eval_grid(const closedform::PointEvaluator& f,
                    const GridSpec& spec);

// A contour chain in (x, p) coordinates.  Closed loops are oriented
// counter-clockwise; chains that run off the grid boundary stay open.
struct Polyline {
  std::vector<std::array<double, 2>> pts;
  bool closed = false;
};

// Level-set extraction by marching squares with linear interpolation along
// cell edges.  Saddle cells are disambiguated by the cell-average rule:
// a cell mean above the level connects the high corners.
std::vector<Polyline> extract_contours(const PhaseGrid& grid, double level);

// Geometry of the interference tile around the origin.
struct FeatureReport {
  double area = 0.0;           // enclosed area of the tile contour
  double x_extent = 0.0;       // bounding-box width along x
  double p_extent = 0.0;       // bounding-box width along p
  double isotropy = 0.0;       // min/max first-crossing radius over angles
  double planck_ratio = 0.0;   // area / (pi * ln(1/threshold_frac))
  double threshold_used = 0.0; // absolute |W| level the contour was cut at
  double threshold_frac = 0.0; // requested fraction of max |W|
};

// Cut |grid| at threshold_frac * max|grid| and measure the smallest closed
// contour that encloses the origin.  Throws numeric_guard_error when no
// closed contour around the origin exists at that level.
FeatureReport central_feature(const PhaseGrid& grid, double threshold_frac);

// First modulus |delta| along each of n_angles rays delta = |delta| e^{i
// theta}, theta = 2*pi*k/n_angles, at which the sensitivity drops to zero,
// i.e. falls to <= 1e-4 of its value at the origin.  Scans outward in
// ~1e-3 steps and refines the crossing by bisection to 1e-4.  Rays that
// never reach zero report kNoZero.  Requires a sensitivity evaluator and
// n_angles >= 16.
std::vector<double> zero_profile(const closedform::PointEvaluator& sens,
                                 int n_angles, double r_max);

// Isotropy of the central feature for each state, cut at threshold_frac.
std::vector<double> isotropy_trend(const std::vector<states::StateSpec>& specs,
                                   const GridSpec& window,
                                   double threshold_frac);

// Same, with an automatic window: deformed states are measured on the
// fine [-1,1]^2 grid where their tiles live, plain ones on [-4,4]^2.
std::vector<double> isotropy_trend(
    const std::vector<states::StateSpec>& specs);

namespace detail {
// Marching-squares core on a raw row-major field, exposed for direct
// testing of the saddle rule and stitching.
std::vector<Polyline> marching_squares(const GridSpec& spec,
                                       const std::vector<double>& values,
                                       double level);
}  // namespace detail

}  // namespace subplanck::analysis
