#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perceptlet/cbit.hpp"
#include "perceptlet/model.hpp"

namespace perceptlet {

/// Raised when samples violate a dyadic-grid requirement: an off-grid x or
/// an incomplete grid in boundary mode.
struct GridError : std::domain_error {
  explicit GridError(const std::string& what) : std::domain_error(what) {}
};

/// Per-basis recursive least squares state. w_hat estimates the weight, L is
/// the learning indicator 1/sum(b^2), n counts absorbed nonzero-activation
/// samples. An uninitialized basis is represented by the absence of a state
/// (std::optional), never by a default RlsState.
struct RlsState {
  double w_hat = 0.0;
  double L = 0.0;
  long n = 0;
};

/// First nonzero-activation sample: w_hat = y/b, L = 1/b^2. Throws
/// std::domain_error on zero activation.
RlsState rls_init(double activation, double y);

/// One recursion step: L' = L/(1 + b^2 L), gain G = b L', and
/// w' = w + G (y - b w) with the residual taken against the previous
/// estimate. Zero activation returns the state unchanged.
RlsState rls_update(const RlsState& s, double activation, double y);

/// Init-or-update helper that skips zero activations; `state` stays empty
/// until the first nonzero activation arrives.
void rls_observe(std::optional<RlsState>& state, double activation, double y);

/// Closed-form single-basis least squares: sum(b y) / sum(b^2). Throws
/// std::domain_error when every activation is zero.
double batch_weight(const std::vector<std::pair<double, double>>& samples);

enum class FitMode { boundary, neighborhood, online };

struct FitReport {
  FitMode mode = FitMode::boundary;
  int epochs_used = 1;
  double max_residual = 0.0;
  /// Entry k-1: max |y - f^(k)(x)| over the training samples.
  std::vector<double> per_level_residuals;
  std::vector<std::string> warnings;
};

/// True iff the samples arrive grouped by ascending grid level; order
/// within a level is free. Throws GridError for an x off the level-pr grid.
bool is_hierarchical_order(const std::vector<Sample>& samples, int pr);

/// Nodal fit: requires one sample per level-pr grid node (|x - c| <= 1e-9;
/// duplicates: last wins, warned). Level-1 weights take the boundary y's;
/// each higher center takes the residual of the levels below it, so every
/// nodal y is reproduced exactly. epochs_used is 1 for hierarchically
/// ordered input, otherwise the number of passes a level-by-level learner
/// would need (at most pr).
std::pair<PerceptionModel, FitReport> fit_boundary(
    const Perceptlet& family, const std::vector<Sample>& samples, int pr);

/// Scattered fit: level 1 by joint two-parameter least squares (minimum-norm
/// on singular systems), levels >= 2 by per-basis RLS against the residual
/// of the other levels. The ascending level sweep is repeated until the
/// weights settle, so grid-node input converges to the nodal fit; the first
/// sweep alone is the strict frozen cascade. Bases never activated keep
/// weight 0. Throws std::domain_error on an empty sample list.
std::pair<PerceptionModel, FitReport> fit_neighborhood(
    const Perceptlet& family, const std::vector<Sample>& samples, int pr);

/// Incremental learner: every observation runs one ascending cascade pass,
/// updating each level's active bases by RLS against the live residual of
/// the levels below.
class OnlineTrainer {
 public:
  OnlineTrainer(Perceptlet family, int pr);

  /// Throws std::domain_error on an out-of-range sample; state unchanged.
  void observe(const Sample& sample);

  /// Null perception: rejected, returns false, state unchanged.
  bool observe(const Cbit& perception, double y);

  long samples_seen() const { return samples_seen_; }
  const PerceptionModel& model() const { return model_; }

 private:
  PerceptionModel model_;
  std::map<BasisId, RlsState> states_;  // absent key = uninitialized basis
  long samples_seen_ = 0;
};

}  // namespace perceptlet
