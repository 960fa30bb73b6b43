#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "w3j/exact.hpp"
#include "w3j/half_int.hpp"

namespace w3j {

/// value(source) = (-1)^phase * value(target), phase reduced to {0, 1}.
struct SymmetryRecord {
  ThreeJArgs source;
  ThreeJArgs target;
  int phase = 0;

  bool target_physical() const { return target.physical(); }
};

SymmetryRecord identity_record(const ThreeJArgs& args);
/// Chains `first` (source -> mid) with `then` (mid -> target).
SymmetryRecord compose(const SymmetryRecord& first, const SymmetryRecord& then);

struct SigmaDelta {
  HalfInt sigma;
  HalfInt delta;
  friend bool operator==(const SigmaDelta&, const SigmaDelta&) = default;
};

/// sigma = (alpha+beta)/2, delta = (alpha-beta)/2. Throws parity_violation
/// when alpha+beta is half-odd.
SigmaDelta sigma_delta(HalfInt alpha, HalfInt beta);
/// Inverse map: alpha = sigma+delta, beta = sigma-delta.
std::pair<HalfInt, HalfInt> alpha_beta(SigmaDelta sd);

enum class ColumnPair { first_second, first_third, second_third };

SymmetryRecord exchange_columns(const ThreeJArgs& args, ColumnPair which);
/// Target column i is source column order[i]; odd permutations pick up (-1)^(a+b+x).
SymmetryRecord permute_columns(const ThreeJArgs& args, std::array<int, 3> order);
SymmetryRecord negate_projections(const ThreeJArgs& args);
/// (a b x; s+d s-d g) -> ((a+b)/2+s (a+b)/2-s x; (a-b)/2+d (a-b)/2-d b-a), no phase.
/// x and delta are invariant; the map is an involution.
SymmetryRecord regge_transform(const ThreeJArgs& args);
/// x -> -x-1 with phase (-1)^(b-x-a), x being the larger of the pair; the
/// target of a physical symbol is not physical.
SymmetryRecord mirror_transform(const ThreeJArgs& args);

struct OrbitOptions {
  bool include_mirror = false;
};

struct Orbit {
  /// One record per distinct target; members.front() is the identity.
  std::vector<SymmetryRecord> members;
  /// Some group element maps the symbol to itself with an odd phase.
  bool forces_zero = false;
};

/// Breadth-first closure under column swaps, projection negation and the
/// Regge map. Mirror images of physical members are appended when requested.
Orbit orbit(const ThreeJArgs& args, OrbitOptions options = {});
bool symmetry_forces_zero(const ThreeJArgs& args);

/// One (a, b, sigma) family: U(x, delta) over the x- and delta-ranges.
class ScreenSpec {
 public:
  /// Throws infeasible_spec for negative momenta, half-odd a+b, or |sigma| > (a+b)/2.
  static ScreenSpec make(HalfInt a, HalfInt b, HalfInt sigma);

  HalfInt a() const { return a_; }
  HalfInt b() const { return b_; }
  HalfInt sigma() const { return sigma_; }

  HalfInt x_min() const { return max((a_ - b_).abs(), 2 * sigma_.abs()); }
  HalfInt x_max() const { return a_ + b_; }
  HalfInt delta_min() const { return max(-a_ - sigma_, -b_ + sigma_); }
  HalfInt delta_max() const { return min(a_ - sigma_, b_ + sigma_); }

  std::size_t x_count() const;
  std::size_t delta_count() const;

  HalfInt x_at(std::size_t i) const { return x_min() + HalfInt(static_cast<int>(i)); }
  HalfInt delta_at(std::size_t j) const { return delta_min() + HalfInt(static_cast<int>(j)); }
  bool contains(HalfInt x, HalfInt delta) const;
  /// Throws out_of_screen.
  std::size_t x_index(HalfInt x) const;
  std::size_t delta_index(HalfInt delta) const;

  /// (a b x; sigma+delta sigma-delta -2sigma)
  ThreeJArgs args_at(HalfInt x, HalfInt delta) const;

  /// a is the least of {a, b, (a+b)/2+sigma, (a+b)/2-sigma} and sigma >= 0.
  bool is_canonical() const;

  std::string str() const;

  friend bool operator==(const ScreenSpec&, const ScreenSpec&) = default;

 private:
  ScreenSpec(HalfInt a, HalfInt b, HalfInt sigma) : a_(a), b_(b), sigma_(sigma) {}
  HalfInt a_, b_, sigma_;
};

/// The four numbers bounding each range count, in the order
/// {2a+1, 2b+1, a+b+2sigma+1, a+b-2sigma+1} (x) and
/// {2a+1, a+b-2sigma+1, a+b+2sigma+1, 2b+1} (delta).
struct RangeNumbers {
  std::array<std::int64_t, 4> x;
  std::array<std::int64_t, 4> delta;
};
RangeNumbers range_numbers(HalfInt a, HalfInt b, HalfInt sigma);

/// Symbol-level map taking a screen onto its canonical conjugate:
/// Regge map, then exchange of the first two columns, then negation.
struct ScreenTransform {
  bool regge = false;
  bool swap = false;
  bool negate = false;

  bool is_identity() const { return !regge && !swap && !negate; }
  std::size_t steps() const { return regge + swap + negate; }
  /// Record from a source-screen symbol to its image on the canonical screen.
  SymmetryRecord apply(const ThreeJArgs& args) const;
  /// Effect on a screen triple.
  ScreenSpec apply(const ScreenSpec& spec) const;
  std::string describe() const;
};

struct CanonicalScreen {
  ScreenSpec spec;
  ScreenTransform transform;
};

/// Ties on a are broken by smaller b, then sigma >= 0, then fewer steps.
CanonicalScreen canonicalize(HalfInt a, HalfInt b, HalfInt sigma);
/// Canonical screen of the symbol's family plus the record for this symbol.
std::pair<CanonicalScreen, SymmetryRecord> canonicalize(const ThreeJArgs& args);

}  // namespace w3j
