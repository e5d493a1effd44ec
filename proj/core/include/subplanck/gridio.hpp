#pragma once

#include <string>
#include <vector>

#include "subplanck/analysis.hpp"

namespace subplanck::gridio {

// Shortest exact decimal for a double (printf %.17g); used everywhere a
// number lands in a text artifact so outputs are byte-reproducible.
std::string format_double(double v);

// CSV with header row "x,p,value", x varying slowest.
std::string grid_to_csv(const analysis::PhaseGrid& grid);

// Compact binary grid: 4-byte magic "PGRD", an 808-byte JSON header padded
// with spaces carrying {x_min,x_max,p_min,p_max,nx,np}, then nx*np
// little-endian float64 values, row-major with x slowest.
std::string grid_to_pgrd(const analysis::PhaseGrid& grid);

// Inverse of grid_to_pgrd.  Throws std::invalid_argument on bad magic,
// malformed header, or a payload that does not match nx*np.
analysis::PhaseGrid grid_from_pgrd(const std::string& bytes);

// JSON exports for the analysis products.
std::string feature_to_json(const analysis::FeatureReport& report);
std::string zero_profile_to_json(const std::vector<double>& radii,
                                 double r_max);

// Whole-file helpers; failures surface as std::runtime_error with the path.
void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace subplanck::gridio
