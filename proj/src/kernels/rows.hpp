#pragma once

// Per-row bodies shared by the serial and OpenMP kernels, so both backends run
// the exact same arithmetic.

#include <algorithm>
#include <cmath>
#include <span>

#include "emocircles/kernels.hpp"

namespace emoc::kernels::rows {

inline int clamp_index(int v, int n) { return std::clamp(v, 0, n - 1); }

inline void convolve_horizontal(const Plane& in, Plane& out, std::span<const float> kernel, int y) {
  const int radius = static_cast<int>(kernel.size() / 2);
  for (int x = 0; x < in.width; ++x) {
    float acc = 0.0f;
    for (int t = -radius; t <= radius; ++t) {
      acc += kernel[static_cast<std::size_t>(t + radius)] * in.at(clamp_index(x + t, in.width), y);
    }
    out.at(x, y) = acc;
  }
}

inline void convolve_vertical(const Plane& in, Plane& out, std::span<const float> kernel, int y) {
  const int radius = static_cast<int>(kernel.size() / 2);
  for (int x = 0; x < in.width; ++x) {
    float acc = 0.0f;
    for (int t = -radius; t <= radius; ++t) {
      acc += kernel[static_cast<std::size_t>(t + radius)] * in.at(x, clamp_index(y + t, in.height));
    }
    out.at(x, y) = acc;
  }
}

inline void sobel(const Plane& in, Gradient& g, int y) {
  const int ym = clamp_index(y - 1, in.height);
  const int yp = clamp_index(y + 1, in.height);
  for (int x = 0; x < in.width; ++x) {
    const int xm = clamp_index(x - 1, in.width);
    const int xp = clamp_index(x + 1, in.width);
    const float gx = (in.at(xp, ym) + 2.0f * in.at(xp, y) + in.at(xp, yp)) -
                     (in.at(xm, ym) + 2.0f * in.at(xm, y) + in.at(xm, yp));
    const float gy = (in.at(xm, yp) + 2.0f * in.at(x, yp) + in.at(xp, yp)) -
                     (in.at(xm, ym) + 2.0f * in.at(x, ym) + in.at(xp, ym));
    g.gx.at(x, y) = gx;
    g.gy.at(x, y) = gy;
    g.magnitude.at(x, y) = std::sqrt(gx * gx + gy * gy);
  }
}

inline float magnitude_or_zero(const Plane& m, int x, int y) {
  if (x < 0 || y < 0 || x >= m.width || y >= m.height) return 0.0f;
  return m.at(x, y);
}

// Keeps a pixel when it is strictly above the neighbor behind it and not below
// the one ahead, so plateaus two pixels wide thin to one.
inline void suppress(const Gradient& g, Plane& out, int y) {
  constexpr float kTan22 = 0.41421356f;  // tan(22.5 deg)
  const Plane& m = g.magnitude;
  for (int x = 0; x < m.width; ++x) {
    const float mag = m.at(x, y);
    if (mag <= 0.0f) {
      out.at(x, y) = 0.0f;
      continue;
    }
    const float gx = g.gx.at(x, y);
    const float gy = g.gy.at(x, y);
    const float ax = std::abs(gx);
    const float ay = std::abs(gy);
    int dx = 0;
    int dy = 0;
    if (ay <= ax * kTan22) {
      dx = 1;
    } else if (ax <= ay * kTan22) {
      dy = 1;
    } else {
      dx = 1;
      dy = (gx > 0.0f) == (gy > 0.0f) ? 1 : -1;
    }
    const float behind = magnitude_or_zero(m, x - dx, y - dy);
    const float ahead = magnitude_or_zero(m, x + dx, y + dy);
    out.at(x, y) = (mag > behind && mag >= ahead) ? mag : 0.0f;
  }
}

}  // namespace emoc::kernels::rows
