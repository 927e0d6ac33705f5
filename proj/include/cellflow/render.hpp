#pragma once

#include <string>
#include <vector>

#include "cellflow/flow_field.hpp"

namespace cellflow {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> rgb;  // row-major, top row first

  Image(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 255) {}
  void set_pixel(int x, int y, unsigned char r, unsigned char g, unsigned char b);
  void draw_line(double x0, double y0, double x1, double y1, unsigned char r, unsigned char g,
                 unsigned char b);
  void fill_circle(double cx, double cy, double radius, unsigned char r, unsigned char g,
                   unsigned char b);
};

/** 8-bit RGB PNG via zlib. */
void write_png(const std::string& path, const Image& image);

/**
 * Swimmer trajectories (grey) over the t=0 vorticity colormap (blue-white-red),
 * final positions marked with dark purple dots. The view covers the flow
 * domain expanded to the trajectories' bounding box.
 */
Image render_trajectories(const TaylorGreenField& field,
                          const std::vector<std::vector<Vec2>>& paths, int width = 900);

}  // namespace cellflow
