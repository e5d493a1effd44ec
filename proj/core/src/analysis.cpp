#include "subplanck/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <unordered_map>

#include "subplanck/parallel.hpp"

namespace subplanck::analysis {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Zero-sensitivity detection: a ray point counts as a zero once S falls to
// this fraction of S(0) = 1.
constexpr double kZeroTol = 1e-4;
constexpr double kScanStep = 1e-3;
constexpr double kRefineTol = 1e-4;

Complex to_point(double x, double p) {
  return Complex{x * kInvSqrt2, p * kInvSqrt2};
}

void check_window(const GridSpec& spec) {
  if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) ||
      !std::isfinite(spec.p_min) || !std::isfinite(spec.p_max))
    throw std::invalid_argument("grid: window bounds must be finite");
  if (!(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min))
    throw std::invalid_argument("grid: window must have positive extent");
}

// --- marching squares -----------------------------------------------------

// Every contour vertex sits on a unique grid edge, so edges double as
// stitch keys.  orient 0 = horizontal (node ix,ip to ix+1,ip),
// orient 1 = vertical (node ix,ip to ix,ip+1).
long long edge_key(int orient, int ix, int ip) {
  return (static_cast<long long>(orient) << 42) |
         (static_cast<long long>(ix) << 21) | ip;
}

struct Segment {
  long long a;
  long long b;
};

double shoelace(const std::vector<std::array<double, 2>>& pts) {
  double twice = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % n];
    twice += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * twice;
}

}  // namespace

namespace detail {

std::vector<Polyline> marching_squares(const GridSpec& spec,
                                       const std::vector<double>& values,
                                       double level) {
  const int nx = spec.nx;
  const int np = spec.np;
  if (nx < 2 || np < 2)
    throw std::invalid_argument("contours: need at least a 2x2 grid");
  if (values.size() != static_cast<std::size_t>(nx) * np)
    throw std::invalid_argument("contours: value count does not match grid");
  if (nx >= (1 << 21) || np >= (1 << 21))
    throw std::invalid_argument("contours: grid side exceeds 2^21");

  auto at = [&](int ix, int ip) {
    return values[static_cast<std::size_t>(ix) * np + ip];
  };
  auto x_at = [&](int ix) {
    return spec.x_min + (spec.x_max - spec.x_min) * ix / (nx - 1);
  };
  auto p_at = [&](int ip) {
    return spec.p_min + (spec.p_max - spec.p_min) * ip / (np - 1);
  };

  std::vector<Segment> segments;
  std::unordered_map<long long, std::array<double, 2>> crossing;
  crossing.reserve(1024);

  // Interpolated crossing along one edge; cached so both cells sharing the
  // edge agree bit-for-bit.
  auto cross_h = [&](int ix, int ip) {
    const long long key = edge_key(0, ix, ip);
    if (!crossing.count(key)) {
      const double va = at(ix, ip);
      const double vb = at(ix + 1, ip);
      const double t = (level - va) / (vb - va);
      crossing[key] = {x_at(ix) + t * (x_at(ix + 1) - x_at(ix)), p_at(ip)};
    }
    return key;
  };
  auto cross_v = [&](int ix, int ip) {
    const long long key = edge_key(1, ix, ip);
    if (!crossing.count(key)) {
      const double va = at(ix, ip);
      const double vb = at(ix, ip + 1);
      const double t = (level - va) / (vb - va);
      crossing[key] = {x_at(ix), p_at(ip) + t * (p_at(ip + 1) - p_at(ip))};
    }
    return key;
  };

  for (int ix = 0; ix + 1 < nx; ++ix)
    for (int ip = 0; ip + 1 < np; ++ip) {
      const double v00 = at(ix, ip);
      const double v10 = at(ix + 1, ip);
      const double v11 = at(ix + 1, ip + 1);
      const double v01 = at(ix, ip + 1);
      const int code = (v00 > level ? 1 : 0) | (v10 > level ? 2 : 0) |
                       (v11 > level ? 4 : 0) | (v01 > level ? 8 : 0);
      if (code == 0 || code == 15) continue;

      auto emit = [&](long long a, long long b) {
        segments.push_back({a, b});
      };
      const auto bottom = [&] { return cross_h(ix, ip); };
      const auto top = [&] { return cross_h(ix, ip + 1); };
      const auto left = [&] { return cross_v(ix, ip); };
      const auto right = [&] { return cross_v(ix + 1, ip); };

      switch (code) {
        case 1:  emit(left(), bottom()); break;
        case 2:  emit(bottom(), right()); break;
        case 3:  emit(left(), right()); break;
        case 4:  emit(right(), top()); break;
        case 6:  emit(bottom(), top()); break;
        case 7:  emit(left(), top()); break;
        case 8:  emit(top(), left()); break;
        case 9:  emit(bottom(), top()); break;
        case 11: emit(right(), top()); break;
        case 12: emit(right(), left()); break;
        case 13: emit(bottom(), right()); break;
        case 14: emit(left(), bottom()); break;
        case 5: {
          // High corners on the 00/11 diagonal.  Cell mean above the level
          // joins them through the centre (contours hug the low corners);
          // otherwise they stay separate islands.
          const double mean = 0.25 * (v00 + v10 + v11 + v01);
          if (mean > level) {
            emit(bottom(), right());
            emit(left(), top());
          } else {
            emit(left(), bottom());
            emit(right(), top());
          }
          break;
        }
        case 10: {
          // High corners on the 10/01 diagonal, mirrored rule.
          const double mean = 0.25 * (v00 + v10 + v11 + v01);
          if (mean > level) {
            emit(left(), bottom());
            emit(right(), top());
          } else {
            emit(bottom(), right());
            emit(left(), top());
          }
          break;
        }
        default: break;
      }
    }

  // Stitch segments into chains.  Interior grid edges carry exactly two
  // incident segments, boundary edges one, so chains are unambiguous.
  std::unordered_map<long long, std::array<int, 2>> incident;
  incident.reserve(segments.size() * 2);
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    for (const long long key : {segments[s].a, segments[s].b}) {
      auto& slots = incident.try_emplace(key, std::array<int, 2>{-1, -1})
                        .first->second;
      if (slots[0] < 0)
        slots[0] = s;
      else if (slots[1] < 0)
        slots[1] = s;
      // A third incident segment cannot occur on a rectilinear grid.
    }
  }

  std::vector<char> used(segments.size(), 0);
  std::vector<Polyline> out;

  auto next_segment = [&](long long key, int exclude) {
    const auto it = incident.find(key);
    if (it == incident.end()) return -1;
    for (const int s : it->second)
      if (s >= 0 && s != exclude && !used[s]) return s;
    return -1;
  };

  for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
    if (used[s0]) continue;
    used[s0] = 1;
    std::deque<long long> chain{segments[s0].a, segments[s0].b};
    bool closed = false;

    // Grow the tail.
    for (;;) {
      const int s = next_segment(chain.back(), -1);
      if (s < 0) break;
      used[s] = 1;
      const long long nxt =
          segments[s].a == chain.back() ? segments[s].b : segments[s].a;
      if (nxt == chain.front()) {
        closed = true;
        break;
      }
      chain.push_back(nxt);
    }
    // Grow the head if still open.
    if (!closed)
      for (;;) {
        const int s = next_segment(chain.front(), -1);
        if (s < 0) break;
        used[s] = 1;
        const long long nxt =
            segments[s].a == chain.front() ? segments[s].b : segments[s].a;
        chain.push_front(nxt);
      }

    Polyline line;
    line.closed = closed;
    line.pts.reserve(chain.size());
    for (const long long key : chain) line.pts.push_back(crossing.at(key));
    if (closed && shoelace(line.pts) < 0.0)
      std::reverse(line.pts.begin(), line.pts.end());
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace detail

PhaseGrid eval_grid(const closedform::PointEvaluator& f,
                    const GridSpec& spec) {
  check_window(spec);
  if (spec.nx < kMinGridSide || spec.np < kMinGridSide)
    throw std::invalid_argument(
        "grid: need at least 33 samples per axis to resolve structure");

  PhaseGrid grid{spec, std::vector<double>(
                           static_cast<std::size_t>(spec.nx) * spec.np)};
  parallel::parallel_for(spec.nx, [&](std::size_t ix) {
    const double x = grid.x_at(static_cast<int>(ix));
    for (int ip = 0; ip < spec.np; ++ip) {
      const double p = grid.p_at(ip);
      try {
        grid.values[ix * spec.np + ip] = f(to_point(x, p));
      } catch (const numeric_guard_error& e) {
        char where[96];
        std::snprintf(where, sizeof where, " at (x=%.6g, p=%.6g)", x, p);
        throw numeric_guard_error(std::string(e.what()) + where);
      }
    }
  });
  return grid;
}

std::vector<Polyline> extract_contours(const PhaseGrid& grid, double level) {
  if (!std::isfinite(level))
    throw std::invalid_argument("contours: level must be finite");
  return detail::marching_squares(grid.spec, grid.values, level);
}

FeatureReport central_feature(const PhaseGrid& grid, double threshold_frac) {
  if (!(threshold_frac > 0.0) || !(threshold_frac < 1.0))
    throw std::invalid_argument(
        "central_feature: threshold fraction must lie in (0, 1)");

  std::vector<double> mag(grid.values.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    mag[i] = std::abs(grid.values[i]);
    peak = std::max(peak, mag[i]);
  }
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw numeric_guard_error("central_feature: field has no finite peak");

  const double level = threshold_frac * peak;
  const auto contours = detail::marching_squares(grid.spec, mag, level);

  // Even-odd test: does the closed polygon wind around the origin?
  auto contains_origin = [](const std::vector<std::array<double, 2>>& pts) {
    bool inside = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % n];
      if ((a[1] > 0.0) != (b[1] > 0.0)) {
        const double x = a[0] - a[1] * (b[0] - a[0]) / (b[1] - a[1]);
        if (x > 0.0) inside = !inside;
      }
    }
    return inside;
  };

  const Polyline* tile = nullptr;
  double tile_area = std::numeric_limits<double>::infinity();
  for (const auto& c : contours) {
    if (!c.closed || c.pts.size() < 3 || !contains_origin(c.pts)) continue;
    const double area = shoelace(c.pts);
    if (area < tile_area) {
      tile_area = area;
      tile = &c;
    }
  }
  if (tile == nullptr)
    throw numeric_guard_error("central_feature: no closed central contour");

  FeatureReport report;
  report.area = tile_area;
  report.threshold_used = level;
  report.threshold_frac = threshold_frac;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double p_lo = x_lo, p_hi = -x_lo;
  for (const auto& pt : tile->pts) {
    x_lo = std::min(x_lo, pt[0]);
    x_hi = std::max(x_hi, pt[0]);
    p_lo = std::min(p_lo, pt[1]);
    p_hi = std::max(p_hi, pt[1]);
  }
  report.x_extent = x_hi - x_lo;
  report.p_extent = p_hi - p_lo;

  // Radial reach of the tile boundary: first crossing of each of 360 rays.
  auto first_crossing = [&](double ct, double st) {
    double best = std::numeric_limits<double>::infinity();
    const auto& pts = tile->pts;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % n];
      const double ex = b[0] - a[0];
      const double ey = b[1] - a[1];
      const double det = ex * st - ey * ct;
      if (std::abs(det) < 1e-300) continue;
      const double t = (a[1] * ct - a[0] * st) / det;
      if (t < 0.0 || t > 1.0) continue;
      const double s = std::abs(ct) > std::abs(st)
                           ? (a[0] + t * ex) / ct
                           : (a[1] + t * ey) / st;
      if (s > 0.0) best = std::min(best, s);
    }
    return best;
  };

  double r_min = std::numeric_limits<double>::infinity();
  double r_max = 0.0;
  for (int k = 0; k < 360; ++k) {
    const double th = 2.0 * M_PI * k / 360.0;
    const double r = first_crossing(std::cos(th), std::sin(th));
    if (!std::isfinite(r))
      throw numeric_guard_error(
          "central_feature: tile boundary misses a ray from the origin");
    r_min = std::min(r_min, r);
    r_max = std::max(r_max, r);
  }
  report.isotropy = r_min / r_max;
  report.planck_ratio = tile_area / (M_PI * std::log(1.0 / threshold_frac));
  return report;
}

std::vector<double> zero_profile(const closedform::PointEvaluator& sens,
                                 int n_angles, double r_max) {
  if (sens.quantity() != closedform::PointEvaluator::Quantity::sensitivity)
    throw std::invalid_argument("zero_profile: needs a sensitivity evaluator");
  if (n_angles < 16)
    throw std::invalid_argument("zero_profile: need at least 16 angles");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("zero_profile: r_max must be positive");

  std::vector<double> radii(n_angles, kNoZero);
  parallel::parallel_for(n_angles, [&](std::size_t k) {
    const double th = 2.0 * M_PI * static_cast<double>(k) / n_angles;
    const double ct = std::cos(th);
    const double st = std::sin(th);
    // Rays live in the complex displacement plane: delta = r e^{i theta},
    // so the returned radius is the modulus |delta| itself.
    auto value = [&](double r) { return sens(Complex{r * ct, r * st}); };

    double lo = 0.0;
    double hi = kNoZero;
    for (double r = kScanStep; r <= r_max + 0.5 * kScanStep; r += kScanStep) {
      if (value(r) <= kZeroTol) {
        hi = r;
        break;
      }
      lo = r;
    }
    if (hi == kNoZero) return;  // never reached zero inside the scan range

    while (hi - lo > kRefineTol) {
      const double mid = 0.5 * (lo + hi);
      (value(mid) <= kZeroTol ? hi : lo) = mid;
    }
    radii[k] = 0.5 * (lo + hi);
  });
  return radii;
}

std::vector<double> isotropy_trend(const std::vector<states::StateSpec>& specs,
                                   const GridSpec& window,
                                   double threshold_frac) {
  std::vector<double> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    const closedform::PointEvaluator w(
        spec, closedform::PointEvaluator::Quantity::wigner);
    out.push_back(central_feature(eval_grid(w, window), threshold_frac)
                      .isotropy);
  }
  return out;
}

std::vector<double> isotropy_trend(
    const std::vector<states::StateSpec>& specs) {
  std::vector<double> out;
  out.reserve(specs.size());
  const GridSpec fine{-1.0, 1.0, -1.0, 1.0, 801, 801};
  const GridSpec wide{-4.0, 4.0, -4.0, 4.0, 401, 401};
  for (const auto& spec : specs) {
    const GridSpec& window =
        spec.mode == states::Mode::none ? wide : fine;
    const closedform::PointEvaluator w(
        spec, closedform::PointEvaluator::Quantity::wigner);
    out.push_back(central_feature(eval_grid(w, window), 1e-2).isotropy);
  }
  return out;
}

}  // namespace subplanck::analysis
