#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "perceptlet/learner.hpp"
#include "perceptlet/model.hpp"

namespace perceptlet {

/// A basis excited by an input, with its (nonzero) degree of excitation.
struct Activation {
  BasisId basis;
  double value = 0.0;
};

enum class TrainMode { boundary, neighborhood, online };
enum class InputMapping { none, tanh };

struct AutomatonConfig {
  Perceptlet family = Perceptlet::linear();
  int pr = 1;
  TrainMode mode = TrainMode::boundary;
  /// Applied to raw inputs at both training and realization, so the two
  /// phases see the same coordinates. Never applied implicitly.
  InputMapping mapping = InputMapping::none;
  std::optional<double> truncate_epsilon;
};

/// The configured input mapping: tanh squashes a raw real onto (-1,+1);
/// none passes through.
double map_input(const AutomatonConfig& config, double raw);

/// Decomposition phase: every basis of levels 1..pr excited by x (after the
/// optional input mapping), ascending by level then center. At most two
/// level-1 entries and one entry per level >= 2.
std::vector<Activation> decompose(const AutomatonConfig& config, double x);

struct RealizeResult {
  std::vector<double> levels;  // f^(1)..f^(pr)
  double final_estimate = 0.0;
};

/// Realization phase: replays stored weights, never updates one.
RealizeResult realize(const PerceptionModel& model, double x,
                      const AutomatonConfig& config);

/// Real-time perception cost: pr node delays, one per level of the cascade.
double timing_estimate(const AutomatonConfig& config, double node_delay);

struct TrainResult {
  PerceptionModel model;
  FitReport report;
  int truncated_count = 0;
  double truncation_bound = 0.0;
};

/// Learning phase: maps inputs if configured, dispatches on the configured
/// mode, then applies the optional weight truncation.
TrainResult train(const AutomatonConfig& config,
                  const std::vector<Sample>& samples);

/// Serialization of linear/sin models (custom evaluators cannot be
/// persisted). The document is versioned JSON with exact rational centers.
std::string model_to_json(const PerceptionModel& model);

/// Throws ParseError (see io.hpp) on malformed documents, unknown versions
/// or families, and invalid centers.
PerceptionModel model_from_json(const std::string& text);

void save_model(const PerceptionModel& model,
                const std::filesystem::path& path);
PerceptionModel load_model(const std::filesystem::path& path);

}  // namespace perceptlet
