#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "w3j/error.hpp"
#include "w3j/recurrence.hpp"
#include "w3j/render.hpp"

using namespace w3j;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

ScreenGrid grid_for(HalfInt a, HalfInt b, HalfInt s) {
  return ScreenGrid::from(solve_screen(ScreenSpec::make(a, b, s)));
}

}  // namespace

TEST_CASE("value formatting") {
  CHECK(fixed_decimal(2) == "2.0");
  CHECK(fixed_decimal(h(-1)) == "-0.5");
  CHECK(format_value(0.0) == "0");
  CHECK(format_value(-0.0) == "0");
  CHECK(std::stod(format_value(0.1)) == 0.1);
}

TEST_CASE("screen CSV layout") {
  const ScreenGrid g = grid_for(1, 3, 0);
  const std::string csv = screen_csv(g);
  CHECK(csv.rfind("x,delta,u\n2.0,-1.0,", 0) == 0);
  CHECK(csv.find("\n3.0,0.0,0\n") != std::string::npos);
  const std::string twice = screen_csv(g, true);
  CHECK(twice.rfind("twice_x,twice_delta,u\n4,-2,", 0) == 0);
}

TEST_CASE("CSV round trip is lossless (property)") {
  for (const auto& [a, b, s] : {std::tuple{h(1), h(3), h(0)}, std::tuple{h(3), h(7), h(1)},
                                std::tuple{h(8), h(12), h(4)}, std::tuple{h(0), h(4), h(0)}}) {
    const ScreenGrid g = grid_for(a, b, s);
    for (bool doubled : {false, true}) {
      const ScreenGrid back = parse_screen_csv(screen_csv(g, doubled));
      CHECK(back.xs == g.xs);
      CHECK(back.deltas == g.deltas);
      for (std::size_t i = 0; i < g.xs.size(); ++i)
        for (std::size_t j = 0; j < g.deltas.size(); ++j) CHECK(back.values(i, j) == g.values(i, j));
      const RenderConfig cfg;
      CHECK(render_heatmap(back, cfg).pixels == render_heatmap(g, cfg).pixels);
    }
  }
}

TEST_CASE("CSV parse errors") {
  CHECK_THROWS_AS(parse_screen_csv(""), Error);
  CHECK_THROWS_AS(parse_screen_csv("a,b,c\n"), Error);
  CHECK_THROWS_AS(parse_screen_csv("x,delta,u\n1.0,0.0\n"), Error);
  CHECK_THROWS_AS(parse_screen_csv("x,delta,u\n1.0,0.0,zz\n"), Error);
  CHECK_THROWS_AS(parse_screen_csv("x,delta,u\n1.0,0.0,1\n1.0,0.0,1\n"), Error);
  CHECK_THROWS_AS(parse_screen_csv("x,delta,u\n1.0,0.0,1\n2.0,1.0,1\n"), Error);
  CHECK_THROWS_AS(parse_screen_csv("twice_x,twice_delta,u\n1.5,0,1\n"), Error);
  try {
    parse_screen_csv("x,delta,u\n1.0,0.25,1\n");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
}

TEST_CASE("log levels clamp to the configured window") {
  RenderConfig cfg;
  CHECK(log_level(0.0, cfg) == 0.0);
  CHECK(log_level(1e-12, cfg) == 0.0);
  CHECK(log_level(-1.0, cfg) == 1.0);
  CHECK(log_level(1e-5, cfg) == doctest::Approx(0.5));
  cfg.floor = 1e-4;
  cfg.ceiling = 1e-2;
  CHECK(log_level(1e-3, cfg) == doctest::Approx(0.5));
  CHECK(log_level(0.5, cfg) == 1.0);
}

TEST_CASE("render config validation") {
  RenderConfig cfg;
  cfg.floor = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.ceiling = 2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.scale = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  RenderConfig{}.validate();
}

TEST_CASE("heatmap orientation and encoding") {
  const ScreenGrid g = grid_for(1, 3, 0);
  RenderConfig cfg;
  cfg.scale = 2;
  const Pixmap img = render_heatmap(g, cfg);
  CHECK(img.width == 6);
  CHECK(img.height == 6);
  CHECK(img.channels == 1);
  // (x=3, delta=0) is an exact zero: middle column, middle row
  CHECK(img.pixels[2 * 6 + 2] == 0);
  // (x=4, delta=-1) is bottom right
  const int level = static_cast<int>(img.pixels[5 * 6 + 5]);
  CHECK(level == static_cast<int>(std::lround(255 * log_level(g.values(2, 0), cfg))));

  const std::string pgm = encode_pnm(img);
  CHECK(pgm.rfind("P5\n6 6\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n6 6\n255\n").size() + 36);

  cfg.colormap = Colormap::viridis;
  const Pixmap color = render_heatmap(g, cfg);
  CHECK(color.channels == 3);
  CHECK(encode_pnm(color).rfind("P6\n", 0) == 0);
}

TEST_CASE("rendering is deterministic") {
  const ScreenGrid g = grid_for(h(5), h(9), h(1));
  const RenderConfig cfg;
  CHECK(encode_pnm(render_heatmap(g, cfg)) == encode_pnm(render_heatmap(g, cfg)));
  const Overlay ov{GeomSpec::from_momenta(h(5), h(9), h(1))};
  CHECK(render_svg(g, cfg, ov) == render_svg(g, cfg, ov));
}

TEST_CASE("svg and caustic outputs") {
  const ScreenGrid g = grid_for(1, 3, 0);
  const std::string svg = render_svg(g, RenderConfig{}, Overlay{GeomSpec::from_momenta(1, 3, 0)});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  const GeomSpec geom{h(3), h(7), 1};
  const CausticCurve curve = sample_caustic(geom);
  const std::string csv = caustic_csv(geom, curve);
  CHECK(csv.rfind("J3,delta_minus,delta_plus,ridge_delta\n", 0) == 0);
  CHECK(caustic_svg(geom, curve).find("circle") != std::string::npos);
  CHECK(ridge_x_csv(sample_ridge_x(geom, -1, 1)).rfind("delta,J3\n", 0) == 0);
}

TEST_CASE("file helpers") {
  const auto path = (std::filesystem::temp_directory_path() / "w3j_render_test.txt").string();
  write_file(path, "abc\n");
  CHECK(read_file(path) == "abc\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file(path), Error);
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x/y", "z"), Error);
}
