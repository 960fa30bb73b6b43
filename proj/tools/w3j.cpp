// w3j: exact and recurrence-based Wigner 3j symbols on square screens.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "w3j/error.hpp"
#include "w3j/exact.hpp"
#include "w3j/half_int.hpp"
#include "w3j/recurrence.hpp"
#include "w3j/render.hpp"
#include "w3j/semiclassics.hpp"
#include "w3j/symmetry.hpp"
#include "w3j/verify.hpp"

namespace {

using namespace w3j;

enum Exit { ok = 0, verification_failed = 1, parse_failed = 2, strict_violation = 3, io_failed = 4,
            numeric_failed = 5 };

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error:
    case Errc::parity_violation:
    case Errc::infeasible_spec:
    case Errc::invalid_arguments: return parse_failed;
    case Errc::io_error: return io_failed;
    default: return numeric_failed;
  }
}

std::string approx(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

std::string value_line(const ExactValue& v) {
  const std::string exact = v.exact_str();
  if (exact.find("sqrt") == std::string::npos) return exact;
  return exact + " ≈ " + approx(v.to_double());
}

struct EvalArgs {
  std::vector<std::string> tokens;
  bool strict = false;
  bool cg = false;
};

int cmd_eval(const EvalArgs& in) {
  if (in.tokens.size() != 6) throw Error(Errc::parse_error, "eval takes six entries: a b x alpha beta gamma");
  std::vector<HalfInt> v;
  for (const auto& t : in.tokens) v.push_back(parse_half_int(t));
  const ThreeJArgs args{v[0], v[1], v[2], v[3], v[4], v[5]};

  const bool valid = args.structurally_valid() && selection_rules(args);
  if (!valid) {
    if (in.strict) {
      std::cerr << "error: " << args.str() << " violates the selection rules\n";
      return strict_violation;
    }
    std::cout << "0\n";
    std::cerr << "note: " << args.str() << " violates the selection rules; value is 0 by convention\n";
    return ok;
  }
  std::cout << value_line(exact_3j(args)) << "\n";
  if (in.cg) std::cout << "cg " << value_line(cg_from_3j(args)) << "\n";
  return ok;
}

struct ScreenArgs {
  std::string a, b, sigma;
  std::vector<std::string> formats{"csv", "pgm"};
  std::string output;
  double floor = 1e-10, ceiling = 1.0;
  std::string colormap;
  std::string overlay = "both";
  std::string method = "eigen";
  bool doubled = false;
  bool raw = false;
  int scale = 1;
};

int cmd_screen(const ScreenArgs& in) {
  const HalfInt a = parse_half_int(in.a), b = parse_half_int(in.b), s = parse_half_int(in.sigma);
  ScreenSpec spec = ScreenSpec::make(a, b, s);
  if (!in.raw) {
    const CanonicalScreen canon = canonicalize(a, b, s);
    spec = canon.spec;
    if (canon.transform.is_identity())
      std::cout << "screen " << spec.str() << " is canonical\n";
    else
      std::cout << "canonicalized to " << spec.str() << " via " << canon.transform.describe() << "\n";
  }
  std::cout << "size " << spec.x_count() << "x" << spec.delta_count() << "\n";

  static const std::map<std::string, SolveMethod> methods{
      {"eigen", SolveMethod::delta_eigen}, {"x-eigen", SolveMethod::x_eigen},
      {"recursion", SolveMethod::recursion}};
  const UMatrix u = solve_screen(spec, {methods.at(in.method), DeltaCoefficientForm::plus_one});
  const ScreenGrid grid = ScreenGrid::from(u);

  RenderConfig config;
  config.floor = in.floor;
  config.ceiling = in.ceiling;
  config.scale = in.scale;
  config.caustic_overlay = in.overlay == "caustic" || in.overlay == "both";
  config.ridge_overlay = in.overlay == "ridge" || in.overlay == "both";
  config.validate();

  const std::string prefix = in.output.empty()
                                 ? "screen_" + spec.a().decimal() + "_" + spec.b().decimal() + "_" +
                                       spec.sigma().decimal()
                                 : in.output;
  auto emit = [](const std::string& path, const std::string& body) {
    write_file(path, body);
    std::cout << "wrote " << path << "\n";
  };
  for (const std::string& fmt : in.formats) {
    if (fmt == "csv") {
      emit(prefix + ".csv", screen_csv(grid, in.doubled));
    } else if (fmt == "pgm") {
      RenderConfig c = config;
      c.colormap = Colormap::grayscale;
      emit(prefix + ".pgm", encode_pnm(render_heatmap(grid, c)));
    } else if (fmt == "ppm") {
      RenderConfig c = config;
      c.colormap = in.colormap == "grayscale" ? Colormap::grayscale : Colormap::viridis;
      Pixmap img = render_heatmap(grid, c);
      if (img.channels == 1) {  // P6 always carries three channels
        std::vector<std::uint8_t> rgb;
        for (auto g : img.pixels) rgb.insert(rgb.end(), {g, g, g});
        img.pixels = std::move(rgb);
        img.channels = 3;
      }
      emit(prefix + ".ppm", encode_pnm(img));
    } else if (fmt == "svg") {
      RenderConfig c = config;
      c.colormap = in.colormap == "viridis" ? Colormap::viridis : Colormap::grayscale;
      std::optional<Overlay> overlay;
      if (c.caustic_overlay || c.ridge_overlay)
        overlay = Overlay{GeomSpec::from_momenta(spec.a(), spec.b(), spec.sigma())};
      emit(prefix + ".svg", render_svg(grid, c, overlay));
    }
  }
  return ok;
}

struct CausticArgs {
  std::string J1, J2;
  std::vector<std::string> sigmas;
  std::string format = "csv";
  std::string output;
};

int cmd_caustics(const CausticArgs& in) {
  const HalfInt J1 = parse_half_int(in.J1), J2 = parse_half_int(in.J2);
  const HalfInt half = HalfInt::from_twice(1);
  if (J1 < half || J2 < half)
    throw Error(Errc::parse_error, "J values are j + 1/2 and must be at least 1/2");
  if (!(J1 + J2).is_integer())
    throw Error(Errc::parse_error, "J1 + J2 must be an integer so that sigma lies on the lattice");

  std::vector<HalfInt> sigmas;
  if (in.sigmas.empty() || (in.sigmas.size() == 1 && in.sigmas[0] == "all")) {
    const std::int64_t limit = (J1 + J2).twice() / 2;  // |2 sigma| <= J1 + J2
    for (std::int64_t t = -limit; t <= limit; ++t) sigmas.push_back(HalfInt::from_twice(t));
  } else {
    for (const auto& t : in.sigmas) sigmas.push_back(parse_half_int(t));
  }

  const std::string prefix =
      in.output.empty() ? "caustic_" + J1.decimal() + "_" + J2.decimal() : in.output;
  std::string index = "sigma,cusp,samples\n";
  for (HalfInt s : sigmas) {
    const GeomSpec geom{J1, J2, s};
    const CausticCurve curve = sample_caustic(geom);
    const std::string stem = prefix + "_s" + s.decimal();
    if (in.format == "svg") {
      write_file(stem + ".svg", caustic_svg(geom, curve));
    } else {
      write_file(stem + ".csv", caustic_csv(geom, curve));
      const double reach = (geom.j1() + geom.j2()) / 2.0;
      write_file(stem + "_ridge_x.csv", ridge_x_csv(sample_ridge_x(geom, -reach, reach)));
    }
    index += fixed_decimal(s) + "," + (curve.cusp_flag ? "1" : "0") + "," +
             std::to_string(curve.samples.size()) + "\n";
    std::cout << "sigma=" << s.str() << " cusp=" << (curve.cusp_flag ? "yes" : "no")
              << " samples=" << curve.samples.size() << "\n";
  }
  write_file(prefix + "_index.csv", index);
  std::cout << "wrote " << prefix << "_index.csv\n";
  return ok;
}

struct VerifyArgs {
  std::string max_a = "4", max_b = "4";
  double tolerance = 1e-12;
  std::string variant = "plus-one";
  bool allow_large = false;
};

int cmd_verify(const VerifyArgs& in) {
  VerifyOptions opt;
  opt.max_a = parse_half_int(in.max_a);
  opt.max_b = parse_half_int(in.max_b);
  opt.tolerance = in.tolerance;
  opt.form = in.variant == "minus-one" ? DeltaCoefficientForm::minus_one : DeltaCoefficientForm::plus_one;
  if (opt.max_a < HalfInt(0) || opt.max_b < HalfInt(0))
    throw Error(Errc::parse_error, "bounds must be nonnegative");
  if (!in.allow_large && opt.max_a + opt.max_b > HalfInt(64))
    throw Error(Errc::parse_error, "a+b above 64 is slow for the exact oracle; pass --allow-large");

  bool all = true;
  for (const SuiteResult& r : run_verification(opt)) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s max_error=%-12.3e tol=%-10.1e %s", r.name.c_str(),
                  r.max_error, r.tolerance, r.passed ? "PASS" : "FAIL");
    std::cout << line;
    if (!r.passed && !r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
    all = all && r.passed;
  }
  return all ? ok : verification_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner 3j symbols on Regge-canonical square screens"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "exact value of one 3j symbol (a b x alpha beta gamma)");
  e->add_option("entries", eval.tokens, "six entries: integers, n/2 or .5 decimals")->required();
  e->add_flag("--strict", eval.strict, "exit 3 when the selection rules fail");
  e->add_flag("--cg", eval.cg, "also print the Clebsch-Gordan coefficient");

  ScreenArgs screen;
  auto* s = app.add_subcommand("screen", "solve one (a, b, sigma) screen and write files");
  s->add_option("a", screen.a)->required();
  s->add_option("b", screen.b)->required();
  s->add_option("sigma", screen.sigma)->required();
  s->add_option("--format", screen.formats, "csv, pgm, ppm, svg (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "pgm", "ppm", "svg"}));
  s->add_option("-o,--output", screen.output, "output path prefix");
  s->add_option("--floor", screen.floor, "lower end of the log scale");
  s->add_option("--ceiling", screen.ceiling, "upper end of the log scale");
  s->add_option("--colormap", screen.colormap)->check(CLI::IsMember({"grayscale", "viridis"}));
  s->add_option("--overlay", screen.overlay)->check(CLI::IsMember({"caustic", "ridge", "both", "none"}));
  s->add_option("--method", screen.method)->check(CLI::IsMember({"eigen", "x-eigen", "recursion"}));
  s->add_flag("--doubled-ints", screen.doubled, "CSV labels as doubled integers");
  s->add_flag("--raw", screen.raw, "solve the given triple without canonicalizing");
  s->add_option("--scale", screen.scale, "pixels per cell")->check(CLI::PositiveNumber);

  CausticArgs caustics;
  auto* c = app.add_subcommand("caustics", "caustic and ridge curves for J1, J2 over sigma values");
  c->add_option("J1", caustics.J1)->required();
  c->add_option("J2", caustics.J2)->required();
  c->add_option("--sigma", caustics.sigmas, "sigma values, or 'all' (default)")->delimiter(',');
  c->add_option("--format", caustics.format)->check(CLI::IsMember({"csv", "svg"}));
  c->add_option("-o,--output", caustics.output, "output path prefix");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run the invariant suites against the exact oracle");
  v->add_option("max_a", verify.max_a);
  v->add_option("max_b", verify.max_b);
  v->add_option("tolerance", verify.tolerance);
  v->add_option("--p-variant", verify.variant, "coefficient form used for p(delta)")
      ->check(CLI::IsMember({"plus-one", "minus-one"}));
  v->add_flag("--allow-large", verify.allow_large);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : parse_failed;
  }

  try {
    if (*e) return cmd_eval(eval);
    if (*s) return cmd_screen(screen);
    if (*c) return cmd_caustics(caustics);
    if (*v) return cmd_verify(verify);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_for(err);
  }
  return ok;
}
