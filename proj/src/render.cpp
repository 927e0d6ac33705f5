#include "cellflow/render.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "cellflow/errors.hpp"

namespace cellflow {

void Image::set_pixel(int x, int y, unsigned char r, unsigned char g, unsigned char b) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const std::size_t at = (static_cast<std::size_t>(y) * width + x) * 3;
  rgb[at] = r;
  rgb[at + 1] = g;
  rgb[at + 2] = b;
}

void Image::draw_line(double x0, double y0, double x1, double y1, unsigned char r,
                      unsigned char g, unsigned char b) {
  const int steps = 1 + static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0))));
  for (int i = 0; i <= steps; ++i) {
    const double s = static_cast<double>(i) / steps;
    set_pixel(static_cast<int>(std::lround(x0 + s * (x1 - x0))),
              static_cast<int>(std::lround(y0 + s * (y1 - y0))), r, g, b);
  }
}

void Image::fill_circle(double cx, double cy, double radius, unsigned char r, unsigned char g,
                        unsigned char b) {
  const int lo_x = static_cast<int>(std::floor(cx - radius));
  const int hi_x = static_cast<int>(std::ceil(cx + radius));
  const int lo_y = static_cast<int>(std::floor(cy - radius));
  const int hi_y = static_cast<int>(std::ceil(cy + radius));
  for (int y = lo_y; y <= hi_y; ++y) {
    for (int x = lo_x; x <= hi_x; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy <= radius * radius) set_pixel(x, y, r, g, b);
    }
  }
}

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

void put_chunk(std::vector<unsigned char>& out, const char type[4],
               const std::vector<unsigned char>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

struct Rgb {
  unsigned char r, g, b;
};

// diverging colormap for normalized vorticity in [-1, 1]
Rgb vorticity_color(double v) {
  v = std::clamp(v, -1.0, 1.0);
  const double w = std::abs(v);
  const Rgb white{245, 245, 245};
  const Rgb blue{57, 76, 190};
  const Rgb red{178, 24, 43};
  const Rgb target = (v < 0.0) ? blue : red;
  auto mix = [&](unsigned char a, unsigned char t) {
    return static_cast<unsigned char>(std::lround(a + w * (static_cast<double>(t) - a)));
  };
  return {mix(white.r, target.r), mix(white.g, target.g), mix(white.b, target.b)};
}

}  // namespace

void write_png(const std::string& path, const Image& image) {
  // filter byte 0 ahead of every scanline
  std::vector<unsigned char> raw;
  raw.reserve(static_cast<std::size_t>(image.height) * (1 + 3 * image.width));
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);
    const auto* row = image.rgb.data() + static_cast<std::size_t>(y) * image.width * 3;
    raw.insert(raw.end(), row, row + static_cast<std::size_t>(image.width) * 3);
  }

  uLongf compressed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> compressed(compressed_size);
  if (compress2(compressed.data(), &compressed_size, raw.data(), static_cast<uLong>(raw.size()),
                6) != Z_OK) {
    throw NumericalError("PNG compression failed");
  }
  compressed.resize(compressed_size);

  std::vector<unsigned char> png = {137, 'P', 'N', 'G', 13, 10, 26, 10};
  std::vector<unsigned char> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(image.width));
  put_u32(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // truecolor
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  put_chunk(png, "IHDR", ihdr);
  put_chunk(png, "IDAT", compressed);
  put_chunk(png, "IEND", {});

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

Image render_trajectories(const TaylorGreenField& field,
                          const std::vector<std::vector<Vec2>>& paths, int width) {
  double min_x = 0.0, max_x = field.L, min_y = 0.0, max_y = field.L;
  for (const auto& path : paths) {
    for (const Vec2& p : path) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double pad = 0.02 * std::max(max_x - min_x, max_y - min_y);
  min_x -= pad;
  max_x += pad;
  min_y -= pad;
  max_y += pad;

  // square pixels: widen the shorter world axis
  const double span = std::max(max_x - min_x, max_y - min_y);
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);
  min_x = cx - span / 2;
  max_x = cx + span / 2;
  min_y = cy - span / 2;
  max_y = cy + span / 2;

  Image img(width, width);
  const double omega_scale = 2.0 * field.U0 * field.k;
  for (int py = 0; py < width; ++py) {
    const double y = max_y - (py + 0.5) * span / width;
    for (int px = 0; px < width; ++px) {
      const double x = min_x + (px + 0.5) * span / width;
      const Rgb c = vorticity_color(field.vorticity(x, y, 0.0) / omega_scale);
      img.set_pixel(px, py, c.r, c.g, c.b);
    }
  }

  auto to_px = [&](const Vec2& p) {
    return std::pair<double, double>{(p.x - min_x) / span * width,
                                     (max_y - p.y) / span * width};
  };

  for (const auto& path : paths) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      const auto [x0, y0] = to_px(path[i - 1]);
      const auto [x1, y1] = to_px(path[i]);
      img.draw_line(x0, y0, x1, y1, 120, 120, 120);
    }
  }
  for (const auto& path : paths) {
    if (path.empty()) continue;
    const auto [x, y] = to_px(path.back());
    img.fill_circle(x, y, std::max(2.0, width / 300.0), 76, 0, 92);
  }
  return img;
}

}  // namespace cellflow
