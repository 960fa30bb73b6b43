#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "w3j/half_int.hpp"
#include "w3j/recurrence.hpp"
#include "w3j/semiclassics.hpp"
#include "w3j/tridiagonal.hpp"

namespace w3j {

enum class Colormap { grayscale, viridis };

struct RenderConfig {
  double floor = 1e-10;
  double ceiling = 1.0;
  Colormap colormap = Colormap::grayscale;
  bool caustic_overlay = true;
  bool ridge_overlay = true;
  int scale = 1;  // pixels per grid cell

  /// Throws invalid_arguments unless 0 < floor < ceiling <= 1 and scale >= 1.
  void validate() const;
};

/// Labelled values as stored on disk; rows follow `xs`, columns `deltas`.
struct ScreenGrid {
  std::vector<HalfInt> xs;
  std::vector<HalfInt> deltas;
  DenseMatrix values;

  static ScreenGrid from(const UMatrix& u);
};

/// "2.0", "-0.5": half-integers with an explicit fractional digit.
std::string fixed_decimal(HalfInt v);
/// 17 significant digits; exact zeros print as "0".
std::string format_value(double v);

/// Header `x,delta,u` (or `twice_x,twice_delta,u` with doubled_ints), one row per
/// cell, x-major, both labels ascending.
std::string screen_csv(const ScreenGrid& grid, bool doubled_ints = false);
/// Inverse of screen_csv for either header. Throws parse_error.
ScreenGrid parse_screen_csv(std::string_view text);

struct Pixmap {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 = P5, 3 = P6
  std::vector<std::uint8_t> pixels;
};

/// log10|u| clamped to [floor, ceiling] mapped onto [0, 1]; zeros and
/// |u| <= floor map to exactly 0.
double log_level(double u, const RenderConfig& config);

/// x runs left to right, delta bottom to top.
Pixmap render_heatmap(const ScreenGrid& grid, const RenderConfig& config);
std::string encode_pnm(const Pixmap& image);

struct Overlay {
  GeomSpec geom;
};

/// Vector heatmap with solid caustic and dashed ridge curves, drawn with the
/// grid-x -> J3 = x + 1/2 convention.
std::string render_svg(const ScreenGrid& grid, const RenderConfig& config,
                       const std::optional<Overlay>& overlay);

/// Caustic and ridge polylines over the continuous (J3, delta) plane.
std::string caustic_svg(const GeomSpec& geom, const CausticCurve& curve);
/// Header `J3,delta_minus,delta_plus,ridge_delta`.
std::string caustic_csv(const GeomSpec& geom, const CausticCurve& curve);
/// Header `delta,J3`.
std::string ridge_x_csv(const std::vector<RidgePoint>& ridge);

void write_file(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace w3j
