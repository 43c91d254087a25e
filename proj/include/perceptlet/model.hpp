#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "perceptlet/basis.hpp"

namespace perceptlet {

/// One training observation: a perception x with the logical value y it
/// should map to.
struct Sample {
  double x = 0.0;
  double y = 0.0;

  /// Validating constructor; throws std::domain_error when x is outside
  /// [-1,+1] or y is outside [0,1].
  static Sample make(double x, double y);
};

/// Weights over the basis hierarchy up to a fixed perception resolution.
/// Level-1 weights are nodal values (expected in [0,1] for in-range data);
/// higher levels hold corrections (expected in [-1,+1] for nodal fits).
/// Missing weights evaluate as 0, so partially-trained and truncated models
/// are well-defined at every level. Mutation is meant for learners;
/// evaluation is pure and concurrency-safe on a frozen model.
class PerceptionModel {
 public:
  /// Throws std::domain_error for pr < 1 and std::invalid_argument when a
  /// custom family fails validate_perceptlet.
  PerceptionModel(Perceptlet perceptlet, int pr);

  const Perceptlet& perceptlet() const { return perceptlet_; }
  int pr() const { return pr_; }

  /// Throws std::domain_error for an invalid id, level > pr, or a
  /// non-finite weight.
  void set_weight(const BasisId& id, double w);
  void remove_weight(const BasisId& id);
  std::optional<double> weight(const BasisId& id) const;
  const std::map<BasisId, double>& weights() const { return weights_; }

  /// f^(k)(x): the sum of weight times basis value over all stored bases of
  /// level <= up_to_level. Not clamped; adversarial weights can push the
  /// result outside [0,1].
  double evaluate(double x, int up_to_level) const;
  double evaluate(double x) const { return evaluate(x, pr_); }

  /// [f^(1)(x), ..., f^(pr)(x)].
  std::vector<double> realize_all_levels(double x) const;

  /// The level-k contribution alone: f^(k)(x) - f^(k-1)(x). Requires
  /// 2 <= k <= pr.
  double level_difference(double x, int k) const;

 private:
  double level_contribution(double x, int level) const;

  Perceptlet perceptlet_;
  int pr_;
  std::map<BasisId, double> weights_;
};

struct TruncationResult {
  PerceptionModel model;
  int removed_count = 0;
  /// Upper bound on the evaluation change at any x: the sum of removed
  /// weight magnitudes (every basis peaks at 1).
  double error_bound = 0.0;
};

/// Copy of the model with every level >= 2 weight of magnitude < epsilon
/// removed. Level-1 weights always survive. epsilon = 0 is the identity.
TruncationResult truncate(const PerceptionModel& model, double epsilon);

/// Number of bases (equivalently grid nodes) through resolution pr:
/// 2 at pr = 1, else 2^(pr-1) + 1.
std::int64_t basis_count(int pr);

/// Inverse of basis_count: 1 + log2(n - 1). Throws std::domain_error when
/// n - 1 is not a power of two.
int resolution_for(std::int64_t n_samples);

/// Optional real-line ingestion: tanh squashes a real quantity onto the
/// perception space. Never applied implicitly.
double to_perception_space(double y_real);

/// atanh; throws std::domain_error at or beyond the open interval's ends.
double from_perception_space(double x);

}  // namespace perceptlet
