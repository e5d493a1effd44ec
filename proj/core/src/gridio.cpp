#include "subplanck/gridio.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace subplanck::gridio {

namespace {

constexpr std::size_t kHeaderBytes = 808;
constexpr char kMagic[4] = {'P', 'G', 'R', 'D'};

static_assert(std::endian::native == std::endian::little,
              "PGRD writer assumes a little-endian host");
static_assert(sizeof(double) == 8, "PGRD stores IEEE-754 binary64");

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string grid_to_csv(const analysis::PhaseGrid& grid) {
  std::string out = "x,p,value\n";
  out.reserve(out.size() +
              grid.values.size() * 60);  // ~3 full-precision columns
  char line[128];
  for (int ix = 0; ix < grid.spec.nx; ++ix) {
    const double x = grid.x_at(ix);
    for (int ip = 0; ip < grid.spec.np; ++ip) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", x,
                    grid.p_at(ip), grid.at(ix, ip));
      out += line;
    }
  }
  return out;
}

std::string grid_to_pgrd(const analysis::PhaseGrid& grid) {
  nlohmann::ordered_json header;
  header["x_min"] = grid.spec.x_min;
  header["x_max"] = grid.spec.x_max;
  header["p_min"] = grid.spec.p_min;
  header["p_max"] = grid.spec.p_max;
  header["nx"] = grid.spec.nx;
  header["np"] = grid.spec.np;
  std::string head = header.dump();
  if (head.size() > kHeaderBytes)
    throw std::invalid_argument("pgrd: header exceeds the fixed 808 bytes");
  head.resize(kHeaderBytes, ' ');

  std::string out;
  out.reserve(4 + kHeaderBytes + grid.values.size() * sizeof(double));
  out.append(kMagic, 4);
  out += head;
  out.append(reinterpret_cast<const char*>(grid.values.data()),
             grid.values.size() * sizeof(double));
  return out;
}

analysis::PhaseGrid grid_from_pgrd(const std::string& bytes) {
  if (bytes.size() < 4 + kHeaderBytes ||
      std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw std::invalid_argument("pgrd: missing PGRD magic or truncated file");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(4, kHeaderBytes));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pgrd: bad header: ") + e.what());
  }

  analysis::GridSpec spec;
  try {
    spec.x_min = header.at("x_min").get<double>();
    spec.x_max = header.at("x_max").get<double>();
    spec.p_min = header.at("p_min").get<double>();
    spec.p_max = header.at("p_max").get<double>();
    spec.nx = header.at("nx").get<int>();
    spec.np = header.at("np").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pgrd: bad header: ") + e.what());
  }
  if (spec.nx < 1 || spec.np < 1)
    throw std::invalid_argument("pgrd: header reports a degenerate grid");

  const std::size_t count =
      static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.np);
  if (bytes.size() != 4 + kHeaderBytes + count * sizeof(double))
    throw std::invalid_argument("pgrd: payload size does not match nx*np");

  analysis::PhaseGrid grid{spec, std::vector<double>(count)};
  std::memcpy(grid.values.data(), bytes.data() + 4 + kHeaderBytes,
              count * sizeof(double));
  return grid;
}

std::string feature_to_json(const analysis::FeatureReport& report) {
  nlohmann::ordered_json j;
  j["area"] = report.area;
  j["x_extent"] = report.x_extent;
  j["p_extent"] = report.p_extent;
  j["isotropy"] = report.isotropy;
  j["planck_ratio"] = report.planck_ratio;
  j["threshold_used"] = report.threshold_used;
  j["threshold_frac"] = report.threshold_frac;
  return j.dump(2) + "\n";
}

std::string zero_profile_to_json(const std::vector<double>& radii,
                                 double r_max) {
  nlohmann::ordered_json j;
  j["n_angles"] = radii.size();
  j["r_max"] = r_max;
  j["no_zero_sentinel"] = analysis::kNoZero;
  j["radii"] = radii;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in && !in.eof()) throw std::runtime_error("read failed: " + path);
  return buf.str();
}

}  // namespace subplanck::gridio
