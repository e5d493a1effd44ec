#pragma once

#include <string>

#include "subplanck/analysis.hpp"

namespace subplanck::cli {

enum class Palette { diverging, sequential };

struct RenderInfo {
  Palette palette;
  double v_min;
  double v_max;
};

// Encode the grid as an 8-bit RGB PNG.  Column = x index, top row = p_max.
// The diverging palette is symmetric about zero (negative regions visibly
// blue); the sequential palette maps [0, max].  Returns the colorbar limits
// for the manifest.  Throws std::invalid_argument on non-finite values and
// std::runtime_error on I/O failure.
RenderInfo render_png(const analysis::PhaseGrid& grid, Palette palette,
                      const std::string& path);

// Same encoding, but leaves the bytes in `out` instead of touching disk
// (used when a run only re-checks checksums against an existing manifest).
RenderInfo encode_png(const analysis::PhaseGrid& grid, Palette palette,
                      std::string& out);

const char* palette_name(Palette p);

}  // namespace subplanck::cli
