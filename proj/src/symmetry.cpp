#include "w3j/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "w3j/error.hpp"

namespace w3j {

namespace {

int bit_of(HalfInt exponent) { return phase_bit(exponent); }

HalfInt half_sum(std::int64_t twice_sum_of_doubles) {
  if (twice_sum_of_doubles % 2 != 0)
    throw Error(Errc::parity_violation, "Regge entry off the half-integer lattice");
  return HalfInt::from_twice(twice_sum_of_doubles / 2);
}

}  // namespace

SymmetryRecord identity_record(const ThreeJArgs& args) { return {args, args, 0}; }

SymmetryRecord compose(const SymmetryRecord& first, const SymmetryRecord& then) {
  if (first.target != then.source)
    throw Error(Errc::invalid_arguments, "records do not chain: " + first.target.str() +
                                             " vs " + then.source.str());
  return {first.source, then.target, (first.phase + then.phase) & 1};
}

SigmaDelta sigma_delta(HalfInt alpha, HalfInt beta) {
  const std::int64_t sum = alpha.twice() + beta.twice();
  const std::int64_t diff = alpha.twice() - beta.twice();
  if (sum % 2 != 0)
    throw Error(Errc::parity_violation,
                "alpha+beta = " + (alpha + beta).str() + " gives off-lattice sigma");
  return {HalfInt::from_twice(sum / 2), HalfInt::from_twice(diff / 2)};
}

std::pair<HalfInt, HalfInt> alpha_beta(SigmaDelta sd) {
  return {sd.sigma + sd.delta, sd.sigma - sd.delta};
}

SymmetryRecord permute_columns(const ThreeJArgs& args, std::array<int, 3> order) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2})
    throw Error(Errc::invalid_arguments, "not a permutation of three columns");

  const std::array<HalfInt, 3> j{args.a, args.b, args.x};
  const std::array<HalfInt, 3> m{args.alpha, args.beta, args.gamma};
  ThreeJArgs target{j[order[0]], j[order[1]], j[order[2]],
                    m[order[0]], m[order[1]], m[order[2]]};

  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      if (order[i] > order[k]) ++inversions;
  const int phase = (inversions % 2) ? bit_of(args.a + args.b + args.x) : 0;
  return {args, target, phase};
}

SymmetryRecord exchange_columns(const ThreeJArgs& args, ColumnPair which) {
  switch (which) {
    case ColumnPair::first_second: return permute_columns(args, {1, 0, 2});
    case ColumnPair::first_third: return permute_columns(args, {2, 1, 0});
    case ColumnPair::second_third: return permute_columns(args, {0, 2, 1});
  }
  throw Error(Errc::invalid_arguments, "unknown column pair");
}

SymmetryRecord negate_projections(const ThreeJArgs& args) {
  ThreeJArgs target = args;
  target.alpha = -args.alpha;
  target.beta = -args.beta;
  target.gamma = -args.gamma;
  return {args, target, bit_of(args.a + args.b + args.x)};
}

SymmetryRecord regge_transform(const ThreeJArgs& args) {
  const std::int64_t ta = args.a.twice(), tb = args.b.twice();
  const std::int64_t tal = args.alpha.twice(), tbe = args.beta.twice();
  ThreeJArgs target{half_sum(ta + tb + tal + tbe), half_sum(ta + tb - tal - tbe), args.x,
                    half_sum(ta - tb + tal - tbe), half_sum(ta - tb - tal + tbe),
                    args.b - args.a};
  return {args, target, 0};
}

SymmetryRecord mirror_transform(const ThreeJArgs& args) {
  ThreeJArgs target = args;
  target.x = -args.x - HalfInt(1);
  // the exponent is taken at the x >= -1/2 member of the pair so the map is an involution
  const HalfInt x = max(args.x, target.x);
  return {args, target, bit_of(args.b - x - args.a)};
}

Orbit orbit(const ThreeJArgs& args, OrbitOptions options) {
  args.validate();
  using Generator = SymmetryRecord (*)(const ThreeJArgs&);
  static constexpr Generator generators[] = {
      [](const ThreeJArgs& s) { return exchange_columns(s, ColumnPair::first_second); },
      [](const ThreeJArgs& s) { return exchange_columns(s, ColumnPair::second_third); },
      negate_projections,
      regge_transform,
  };

  Orbit result;
  std::map<std::array<std::int64_t, 6>, std::size_t> index;
  result.members.push_back(identity_record(args));
  index.emplace(args.key(), 0);

  for (std::size_t head = 0; head < result.members.size(); ++head) {
    const SymmetryRecord current = result.members[head];
    for (Generator g : generators) {
      const SymmetryRecord next = compose(current, g(current.target));
      auto [it, inserted] = index.emplace(next.target.key(), result.members.size());
      if (inserted)
        result.members.push_back(next);
      else if (result.members[it->second].phase != next.phase)
        result.forces_zero = true;
    }
  }

  if (options.include_mirror) {
    const std::size_t n = result.members.size();
    for (std::size_t i = 0; i < n; ++i) {
      const SymmetryRecord& m = result.members[i];
      result.members.push_back(compose(m, mirror_transform(m.target)));
    }
  }
  return result;
}

bool symmetry_forces_zero(const ThreeJArgs& args) { return orbit(args).forces_zero; }

ScreenSpec ScreenSpec::make(HalfInt a, HalfInt b, HalfInt sigma) {
  if (a < HalfInt(0) || b < HalfInt(0))
    throw Error(Errc::infeasible_spec, "negative momentum in (" + a.str() + "," + b.str() + ")");
  if (!(a + b).is_integer())
    throw Error(Errc::infeasible_spec, "a+b = " + (a + b).str() +
                                           " is half-odd; gamma = -2 sigma cannot match x");
  if (2 * sigma.abs() > a + b)
    throw Error(Errc::infeasible_spec,
                "|sigma| = " + sigma.abs().str() + " exceeds (a+b)/2, empty delta range");
  return ScreenSpec(a, b, sigma);
}

std::size_t ScreenSpec::x_count() const {
  return static_cast<std::size_t>((x_max() - x_min()).as_integer() + 1);
}

std::size_t ScreenSpec::delta_count() const {
  return static_cast<std::size_t>((delta_max() - delta_min()).as_integer() + 1);
}

bool ScreenSpec::contains(HalfInt x, HalfInt delta) const {
  return x >= x_min() && x <= x_max() && (x - x_min()).is_integer() && delta >= delta_min() &&
         delta <= delta_max() && (delta - delta_min()).is_integer();
}

std::size_t ScreenSpec::x_index(HalfInt x) const {
  if (x < x_min() || x > x_max() || !(x - x_min()).is_integer())
    throw Error(Errc::out_of_screen, "x = " + x.str() + " not on screen " + str());
  return static_cast<std::size_t>((x - x_min()).as_integer());
}

std::size_t ScreenSpec::delta_index(HalfInt delta) const {
  if (delta < delta_min() || delta > delta_max() || !(delta - delta_min()).is_integer())
    throw Error(Errc::out_of_screen, "delta = " + delta.str() + " not on screen " + str());
  return static_cast<std::size_t>((delta - delta_min()).as_integer());
}

ThreeJArgs ScreenSpec::args_at(HalfInt x, HalfInt delta) const {
  if (!contains(x, delta))
    throw Error(Errc::out_of_screen,
                "(x,delta) = (" + x.str() + "," + delta.str() + ") not on screen " + str());
  return make_args(a_, b_, x, sigma_ + delta, sigma_ - delta, -(2 * sigma_));
}

bool ScreenSpec::is_canonical() const {
  return sigma_ >= HalfInt(0) && a_ <= b_ && 2 * a_ <= a_ + b_ - 2 * sigma_;
}

std::string ScreenSpec::str() const {
  return "(" + a_.str() + "," + b_.str() + "," + sigma_.str() + ")";
}

RangeNumbers range_numbers(HalfInt a, HalfInt b, HalfInt sigma) {
  const std::int64_t ta = a.twice(), tb = b.twice(), ts = sigma.twice();
  // all four are integers whenever a+b is; doubled sums divide evenly
  auto count = [](std::int64_t twice_value) { return twice_value / 2 + 1; };
  RangeNumbers r;
  r.x = {count(2 * ta), count(2 * tb), count(ta + tb + 2 * ts), count(ta + tb - 2 * ts)};
  r.delta = {count(2 * ta), count(ta + tb - 2 * ts), count(ta + tb + 2 * ts), count(2 * tb)};
  return r;
}

SymmetryRecord ScreenTransform::apply(const ThreeJArgs& args) const {
  SymmetryRecord rec = identity_record(args);
  if (regge) rec = compose(rec, regge_transform(rec.target));
  if (swap) rec = compose(rec, exchange_columns(rec.target, ColumnPair::first_second));
  if (negate) rec = compose(rec, negate_projections(rec.target));
  return rec;
}

ScreenSpec ScreenTransform::apply(const ScreenSpec& spec) const {
  HalfInt a = spec.a(), b = spec.b(), s = spec.sigma();
  if (regge) {
    const HalfInt mid = (a + b).halved();
    const HalfInt a2 = mid + s, b2 = mid - s;
    s = HalfInt::from_twice((a - b).twice()).halved();
    a = a2;
    b = b2;
  }
  if (swap) std::swap(a, b);
  if (negate) s = -s;
  return ScreenSpec::make(a, b, s);
}

std::string ScreenTransform::describe() const {
  if (is_identity()) return "identity";
  std::string out;
  auto add = [&out](const char* step) {
    if (!out.empty()) out += " then ";
    out += step;
  };
  if (regge) add("regge");
  if (swap) add("swap(a,b)");
  if (negate) add("negate-projections");
  return out;
}

CanonicalScreen canonicalize(HalfInt a, HalfInt b, HalfInt sigma) {
  const ScreenSpec source = ScreenSpec::make(a, b, sigma);
  std::vector<CanonicalScreen> candidates;
  for (int mask = 0; mask < 8; ++mask) {
    ScreenTransform t{(mask & 4) != 0, (mask & 2) != 0, (mask & 1) != 0};
    candidates.push_back({t.apply(source), t});
  }
  auto rank = [](const CanonicalScreen& c) {
    return std::make_tuple(c.spec.a(), c.spec.b(), c.spec.sigma() < HalfInt(0),
                           c.transform.steps());
  };
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](const auto& l, const auto& r) { return rank(l) < rank(r); });
}

std::pair<CanonicalScreen, SymmetryRecord> canonicalize(const ThreeJArgs& args) {
  args.validate();
  if (!selection_rules(args))
    throw Error(Errc::infeasible_spec, "symbol " + args.str() + " violates selection rules");
  const SigmaDelta sd = sigma_delta(args.alpha, args.beta);
  CanonicalScreen screen = canonicalize(args.a, args.b, sd.sigma);
  SymmetryRecord rec = screen.transform.apply(args);
  return {screen, rec};
}

}  // namespace w3j
