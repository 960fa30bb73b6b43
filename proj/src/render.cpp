#include "w3j/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "w3j/error.hpp"

namespace w3j {

void RenderConfig::validate() const {
  if (!(floor > 0.0 && floor < ceiling && ceiling <= 1.0))
    throw Error(Errc::invalid_arguments, "render range needs 0 < floor < ceiling <= 1");
  if (scale < 1) throw Error(Errc::invalid_arguments, "scale must be >= 1");
}

ScreenGrid ScreenGrid::from(const UMatrix& u) {
  ScreenGrid g;
  const ScreenSpec& spec = u.spec();
  for (std::size_t i = 0; i < spec.x_count(); ++i) g.xs.push_back(spec.x_at(i));
  for (std::size_t j = 0; j < spec.delta_count(); ++j) g.deltas.push_back(spec.delta_at(j));
  g.values = u.values();
  return g;
}

std::string fixed_decimal(HalfInt v) {
  const std::string d = v.decimal();
  return v.is_integer() ? d + ".0" : d;
}

std::string format_value(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string screen_csv(const ScreenGrid& grid, bool doubled_ints) {
  std::string out = doubled_ints ? "twice_x,twice_delta,u\n" : "x,delta,u\n";
  for (std::size_t i = 0; i < grid.xs.size(); ++i)
    for (std::size_t j = 0; j < grid.deltas.size(); ++j) {
      if (doubled_ints)
        out += std::to_string(grid.xs[i].twice()) + "," + std::to_string(grid.deltas[j].twice());
      else
        out += fixed_decimal(grid.xs[i]) + "," + fixed_decimal(grid.deltas[j]);
      out += "," + format_value(grid.values(i, j)) + "\n";
    }
  return out;
}

namespace {

[[noreturn]] void csv_error(std::size_t line, const std::string& why) {
  throw Error(Errc::parse_error, "CSV line " + std::to_string(line) + ": " + why);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

HalfInt parse_twice(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) csv_error(line, "bad doubled integer");
  return HalfInt::from_twice(v);
}

}  // namespace

ScreenGrid parse_screen_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) csv_error(1, "empty file");
  bool doubled = false;
  if (line == "twice_x,twice_delta,u")
    doubled = true;
  else if (line != "x,delta,u")
    csv_error(1, "unexpected header '" + line + "'");

  std::map<std::pair<HalfInt, HalfInt>, double> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) csv_error(lineno, "expected 3 fields");
    HalfInt x, d;
    try {
      x = doubled ? parse_twice(fields[0], lineno) : parse_half_int(fields[0]);
      d = doubled ? parse_twice(fields[1], lineno) : parse_half_int(fields[1]);
    } catch (const Error& e) {
      csv_error(lineno, e.what());
    }
    double u = 0.0;
    auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), u);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size())
      csv_error(lineno, "bad value");
    if (!cells.emplace(std::pair{x, d}, u).second) csv_error(lineno, "duplicate cell");
  }

  ScreenGrid g;
  for (const auto& [key, _] : cells) {
    if (g.xs.empty() || g.xs.back() != key.first) g.xs.push_back(key.first);
    if (std::find(g.deltas.begin(), g.deltas.end(), key.second) == g.deltas.end())
      g.deltas.push_back(key.second);
  }
  std::sort(g.deltas.begin(), g.deltas.end());
  if (cells.size() != g.xs.size() * g.deltas.size()) csv_error(lineno, "grid is not rectangular");
  g.values = DenseMatrix(g.xs.size(), g.deltas.size());
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.deltas.size(); ++j) {
      auto it = cells.find({g.xs[i], g.deltas[j]});
      if (it == cells.end()) csv_error(lineno, "missing cell");
      g.values(i, j) = it->second;
    }
  return g;
}

double log_level(double u, const RenderConfig& config) {
  const double mag = std::abs(u);
  if (mag <= config.floor) return 0.0;
  if (mag >= config.ceiling) return 1.0;
  const double lo = std::log10(config.floor), hi = std::log10(config.ceiling);
  return std::clamp((std::log10(mag) - lo) / (hi - lo), 0.0, 1.0);
}

namespace {

using Rgb = std::array<std::uint8_t, 3>;

// matplotlib viridis at nine evenly spaced stops
constexpr std::array<Rgb, 9> kViridis{{{68, 1, 84},
                                       {71, 44, 122},
                                       {59, 81, 139},
                                       {44, 113, 142},
                                       {33, 144, 141},
                                       {39, 173, 129},
                                       {92, 200, 99},
                                       {170, 220, 50},
                                       {253, 231, 37}}};

std::uint8_t gray_of(double level) { return static_cast<std::uint8_t>(std::lround(level * 255.0)); }

Rgb viridis_of(double level) {
  const double pos = level * (kViridis.size() - 1);
  const std::size_t k = std::min(static_cast<std::size_t>(pos), kViridis.size() - 2);
  const double t = pos - static_cast<double>(k);
  Rgb out;
  for (int c = 0; c < 3; ++c)
    out[c] = static_cast<std::uint8_t>(
        std::lround(kViridis[k][c] + t * (kViridis[k + 1][c] - kViridis[k][c])));
  return out;
}

Rgb color_of(double level, Colormap map) {
  if (map == Colormap::viridis) return viridis_of(level);
  const std::uint8_t g = gray_of(level);
  return {g, g, g};
}

}  // namespace

Pixmap render_heatmap(const ScreenGrid& grid, const RenderConfig& config) {
  config.validate();
  const int nx = static_cast<int>(grid.xs.size());
  const int nd = static_cast<int>(grid.deltas.size());
  Pixmap img;
  img.channels = config.colormap == Colormap::grayscale ? 1 : 3;
  img.width = nx * config.scale;
  img.height = nd * config.scale;
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * img.channels);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      const std::size_t xi = static_cast<std::size_t>(c / config.scale);
      const std::size_t dj = static_cast<std::size_t>(nd - 1 - r / config.scale);
      const double level = log_level(grid.values(xi, dj), config);
      const std::size_t at = (static_cast<std::size_t>(r) * img.width + c) * img.channels;
      if (img.channels == 1) {
        img.pixels[at] = gray_of(level);
      } else {
        const Rgb rgb = color_of(level, config.colormap);
        std::copy(rgb.begin(), rgb.end(), img.pixels.begin() + static_cast<std::ptrdiff_t>(at));
      }
    }
  return img;
}

std::string encode_pnm(const Pixmap& image) {
  std::string out = (image.channels == 1 ? "P5\n" : "P6\n") + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(image.pixels.begin(), image.pixels.end());
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string hex_color(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

struct PlotFrame {
  double u_lo, u_hi, v_lo, v_hi;  // data extents (abscissa, ordinate)
  double width, height;           // pixels

  double px(double u) const { return (u - u_lo) / (u_hi - u_lo) * width; }
  double py(double v) const { return (v_hi - v) / (v_hi - v_lo) * height; }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const PlotFrame& f,
                     const std::string& style) {
  if (pts.size() < 2) return {};
  std::string s = "<polyline fill=\"none\" " + style + " points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) s += ' ';
    s += num(f.px(pts[k].first)) + "," + num(f.py(pts[k].second));
  }
  return s + "\"/>\n";
}

std::string curves(const GeomSpec& geom, const PlotFrame& frame, double shift, bool caustic,
                   bool ridge, double delta_lo, double delta_hi, const std::string& colour) {
  std::string out;
  if (caustic) {
    const CausticCurve curve = sample_caustic(geom);
    // closed loop: lower branch forward, upper branch back
    std::vector<std::pair<double, double>> loop;
    for (const auto& s : curve.samples) loop.emplace_back(s.J3 - shift, s.delta_minus);
    for (auto it = curve.samples.rbegin(); it != curve.samples.rend(); ++it)
      loop.emplace_back(it->J3 - shift, it->delta_plus);
    out += polyline(loop, frame, "stroke=\"" + colour + "\" stroke-width=\"2\"");
  }
  if (ridge) {
    std::vector<std::pair<double, double>> a, b;
    for (const auto& p : sample_ridge_delta(geom)) a.emplace_back(p.u - shift, p.v);
    for (const auto& p : sample_ridge_x(geom, delta_lo, delta_hi)) b.emplace_back(p.v - shift, p.u);
    const std::string dashed = "stroke=\"" + colour + "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"";
    out += polyline(a, frame, dashed);
    out += polyline(b, frame, dashed);
  }
  return out;
}

}  // namespace

std::string render_svg(const ScreenGrid& grid, const RenderConfig& config,
                       const std::optional<Overlay>& overlay) {
  config.validate();
  constexpr double cell = 16.0;
  const std::size_t nx = grid.xs.size(), nd = grid.deltas.size();
  const double w = cell * nx, h = cell * nd;
  // cell centres sit on grid labels; extents run half a cell beyond them
  const PlotFrame frame{grid.xs.front().value() - 0.5, grid.xs.back().value() + 0.5,
                        grid.deltas.front().value() - 0.5, grid.deltas.back().value() + 0.5, w, h};

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" +
                    num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  out += "<defs><clipPath id=\"screen\"><rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\"/></clipPath></defs>\n";
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nd; ++j) {
      const Rgb c = color_of(log_level(grid.values(i, j), config), config.colormap);
      out += "<rect x=\"" + num(cell * i) + "\" y=\"" + num(cell * (nd - 1 - j)) + "\" width=\"" +
             num(cell) + "\" height=\"" + num(cell) + "\" fill=\"" + hex_color(c) + "\"/>\n";
    }
  if (overlay) {
    out += "<g clip-path=\"url(#screen)\">\n";
    out += curves(overlay->geom, frame, 0.5, config.caustic_overlay, config.ridge_overlay,
                  frame.v_lo, frame.v_hi, "#ff3030");
    out += "</g>\n";
  }
  return out + "</svg>\n";
}

std::string caustic_svg(const GeomSpec& geom, const CausticCurve& curve) {
  const double extent = geom.j1() + geom.j2();
  const PlotFrame frame{0.0, extent, -extent / 2.0 - 0.5, extent / 2.0 + 0.5, 400.0, 400.0};
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
      "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
  std::vector<std::pair<double, double>> loop;
  for (const auto& s : curve.samples) loop.emplace_back(s.J3, s.delta_minus);
  for (auto it = curve.samples.rbegin(); it != curve.samples.rend(); ++it)
    loop.emplace_back(it->J3, it->delta_plus);
  out += polyline(loop, frame, "stroke=\"#000000\" stroke-width=\"2\"");
  out += curves(geom, frame, 0.0, false, true, frame.v_lo, frame.v_hi, "#000000");
  if (auto cusp = cusp_point(geom))
    out += "<circle cx=\"" + num(frame.px(cusp->J3)) + "\" cy=\"" + num(frame.py(cusp->delta)) +
           "\" r=\"4\" fill=\"#d00000\"/>\n";
  return out + "</svg>\n";
}

std::string caustic_csv(const GeomSpec& geom, const CausticCurve& curve) {
  std::string out = "J3,delta_minus,delta_plus,ridge_delta\n";
  for (const auto& s : curve.samples)
    out += format_value(s.J3) + "," + format_value(s.delta_minus) + "," +
           format_value(s.delta_plus) + "," + format_value(ridge_delta(geom, s.J3)) + "\n";
  return out;
}

std::string ridge_x_csv(const std::vector<RidgePoint>& ridge) {
  std::string out = "delta,J3\n";
  for (const auto& p : ridge) out += format_value(p.u) + "," + format_value(p.v) + "\n";
  return out;
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::io_error, "cannot open " + path + " for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!f) throw Error(Errc::io_error, "short write to " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace w3j
