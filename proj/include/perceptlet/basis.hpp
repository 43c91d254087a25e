#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace perceptlet {

/// Exact dyadic rational num / 2^log2_den, kept normalized (odd numerator
/// unless the value is 0). Grid membership tests stay exact; conversion to
/// floating point happens only at evaluation.
struct Dyadic {
  std::int64_t num = 0;
  int log2_den = 0;

  static Dyadic make(std::int64_t num, int log2_den);

  double value() const;
  std::int64_t den() const { return std::int64_t{1} << log2_den; }
  std::string str() const;  // e.g. "-3/4", "0", "1"

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  bool operator<(const Dyadic& other) const;
};

/// One basis slot in the hierarchy: level 1 carries the boundary bases at
/// centers -1 and +1, level 2 the mid-point base at 0, level i >= 3 the
/// 2^(i-2) bases at the odd multiples of 2^-(i-2).
struct BasisId {
  int level = 1;
  Dyadic center;

  bool operator==(const BasisId&) const = default;
  bool operator<(const BasisId& other) const {
    if (level != other.level) return level < other.level;
    return center < other.center;
  }
};

/// True iff `id` names a slot of the hierarchy described above.
bool is_valid_basis_id(const BasisId& id);

/// Validating constructor; throws std::domain_error on an invalid slot.
BasisId make_basis_id(int level, Dyadic center);

/// The ascending center list of one level: {-1,+1}, {0}, then the odd
/// dyadic midpoints. Throws std::domain_error for level < 1.
std::vector<Dyadic> centers_at_level(int level);

/// A percept-let family. The father function rises 0 -> 1 over [-1,+1] with
/// value 1/2 at 0; the mother is its complement; the daughter is the
/// mid-point bump joined from scaled copies of both parents.
class Perceptlet {
 public:
  enum class Kind { linear, sine, custom };

  static Perceptlet linear() { return Perceptlet(Kind::linear, {}); }
  static Perceptlet sine() { return Perceptlet(Kind::sine, {}); }
  static Perceptlet custom(std::function<double(double)> father);

  Kind kind() const { return kind_; }
  std::string name() const;  // "linear" / "sin" / "custom"

  /// b_x(x). Linear: (1+x)/2. Sine: (1+sin(pi x/2))/2. Throws
  /// std::domain_error for x outside [-1,+1].
  double father(double x) const;

  /// 1 - father(x).
  double mother(double x) const;

  /// father(2x+1) on [-1,0], mother(2x-1) on (0,+1]: peak 1 at 0, zero at
  /// the boundaries.
  double daughter(double x) const;

 private:
  Perceptlet(Kind kind, std::function<double(double)> fn)
      : kind_(kind), fn_(std::move(fn)) {}

  Kind kind_;
  std::function<double(double)> fn_;
};

/// Parses "linear" or "sin"; nullopt for anything else.
std::optional<Perceptlet> perceptlet_from_name(const std::string& name);

/// Value of the basis `id` at x: level 1 -> father/mother by center sign,
/// level 2 -> daughter, level i >= 3 -> daughter(2^(i-2) (x - center)) with
/// arguments outside [-1,+1] clipped to 0. Support of a level-i basis
/// (i >= 3) is [center - 2^(2-i), center + 2^(2-i)].
double eval_basis(const Perceptlet& p, const BasisId& id, double x);

/// The level's bases with nonzero value at x, ascending by center. Never
/// more than two entries: same-level supports overlap only at points where
/// both bases vanish.
std::vector<std::pair<BasisId, double>> active_bases(const Perceptlet& p,
                                                     int level, double x);

/// Per-condition report for the family conditions: a) b(-1)=0, b) b(+1)=1,
/// c) b(0)=1/2, d) non-decreasing. The range flag covers values escaping
/// [0,1]. Condition e (boundary slope symmetry) is informational only.
struct ValidationReport {
  bool cond_a = false;
  bool cond_b = false;
  bool cond_c = false;
  bool cond_d = false;
  bool range_ok = false;
  bool cond_e = false;
  double boundary_slope_mismatch = 0.0;

  bool passed() const { return cond_a && cond_b && cond_c && cond_d && range_ok; }
};

/// Checks conditions a-d within 1e-9; d and the range on a uniform
/// 1001-point grid. Condition e uses symmetric finite differences with
/// step 1e-5 next to each boundary and is reported, not enforced.
ValidationReport validate_perceptlet(const Perceptlet& p);

}  // namespace perceptlet
