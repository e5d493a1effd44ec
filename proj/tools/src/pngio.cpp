#include "pngio.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "subplanck/gridio.hpp"

namespace subplanck::cli {

namespace {

// ColorBrewer RdBu endpoints, interpolated through white at the midpoint.
void diverging_rgb(double t, unsigned char* rgb) {
  constexpr double lo[3] = {33, 102, 172};
  constexpr double mid[3] = {247, 247, 247};
  constexpr double hi[3] = {178, 24, 43};
  const double* a = t < 0.5 ? lo : mid;
  const double* b = t < 0.5 ? mid : hi;
  const double u = t < 0.5 ? t * 2.0 : (t - 0.5) * 2.0;
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<unsigned char>(std::lround(a[c] + u * (b[c] - a[c])));
}

// Compact viridis approximation (5 anchor stops, linear in between).
void sequential_rgb(double t, unsigned char* rgb) {
  constexpr double stops[5][3] = {{68, 1, 84},
                                  {59, 82, 139},
                                  {33, 145, 140},
                                  {94, 201, 98},
                                  {253, 231, 37}};
  const double s = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(s));
  const double u = s - k;
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<unsigned char>(
        std::lround(stops[k][c] + u * (stops[k + 1][c] - stops[k][c])));
}

void push_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

void push_chunk(std::string& out, const char type[4], const std::string& data) {
  push_be32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t crc_from = out.size();
  out.append(type, 4);
  out += data;
  const std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(out.data() + crc_from),
            static_cast<uInt>(4 + data.size())));
  push_be32(out, crc);
}

std::string deflate_bytes(const std::string& raw) {
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string out(bound, '\0');
  const int rc =
      compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 9);
  if (rc != Z_OK) throw std::runtime_error("png: deflate failed");
  out.resize(bound);
  return out;
}

}  // namespace

const char* palette_name(Palette p) {
  return p == Palette::diverging ? "diverging" : "sequential";
}

RenderInfo encode_png(const analysis::PhaseGrid& grid, Palette palette,
                      std::string& out) {
  const int nx = grid.spec.nx;
  const int np = grid.spec.np;
  double lo = 0.0, hi = 0.0;
  for (const double v : grid.values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("png: grid holds non-finite values");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  RenderInfo info{palette, 0.0, 0.0};
  if (palette == Palette::diverging) {
    const double m = std::max(std::max(-lo, hi), 1e-300);
    info.v_min = -m;
    info.v_max = m;
  } else {
    info.v_min = 0.0;
    info.v_max = hi > 0.0 ? hi : 1.0;
  }
  const double span = info.v_max - info.v_min;

  // Filter byte 0 per scanline, rows from p_max down.
  std::string raw;
  raw.reserve(static_cast<std::size_t>(np) * (1 + 3 * nx));
  unsigned char rgb[3];
  for (int row = 0; row < np; ++row) {
    const int ip = np - 1 - row;
    raw.push_back('\0');
    for (int ix = 0; ix < nx; ++ix) {
      const double t = (grid.at(ix, ip) - info.v_min) / span;
      if (palette == Palette::diverging)
        diverging_rgb(std::clamp(t, 0.0, 1.0), rgb);
      else
        sequential_rgb(t, rgb);
      raw.append(reinterpret_cast<const char*>(rgb), 3);
    }
  }

  std::string ihdr;
  push_be32(ihdr, static_cast<std::uint32_t>(nx));
  push_be32(ihdr, static_cast<std::uint32_t>(np));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // truecolor
  ihdr.push_back(0);   // deflate
  ihdr.push_back(0);   // adaptive filtering
  ihdr.push_back(0);   // no interlace

  out.assign("\x89PNG\r\n\x1a\n", 8);
  push_chunk(out, "IHDR", ihdr);
  push_chunk(out, "IDAT", deflate_bytes(raw));
  push_chunk(out, "IEND", "");
  return info;
}

RenderInfo render_png(const analysis::PhaseGrid& grid, Palette palette,
                      const std::string& path) {
  std::string bytes;
  const RenderInfo info = encode_png(grid, palette, bytes);
  gridio::write_file(path, bytes);
  return info;
}

}  // namespace subplanck::cli
