#include "perceptlet/automaton.hpp"

#include <bit>
#include <cmath>
#include <utility>

#include "json.hpp"
#include "perceptlet/io.hpp"

namespace perceptlet {

namespace {

using nlohmann::json;

void check_config(const AutomatonConfig& config) {
  if (config.pr < 1 || config.pr > 40) {
    throw std::domain_error("perception resolution out of range: " +
                            std::to_string(config.pr));
  }
  if (config.truncate_epsilon && !(*config.truncate_epsilon >= 0.0)) {
    throw std::domain_error("truncation epsilon must be nonnegative");
  }
}

}  // namespace

double map_input(const AutomatonConfig& config, double raw) {
  return config.mapping == InputMapping::tanh ? std::tanh(raw) : raw;
}

std::vector<Activation> decompose(const AutomatonConfig& config, double x) {
  check_config(config);
  const double mapped = map_input(config, x);
  std::vector<Activation> activations;
  for (int level = 1; level <= config.pr; ++level) {
    for (const auto& [id, value] : active_bases(config.family, level, mapped)) {
      activations.push_back(Activation{id, value});
    }
  }
  return activations;
}

RealizeResult realize(const PerceptionModel& model, double x,
                      const AutomatonConfig& config) {
  RealizeResult result;
  result.levels = model.realize_all_levels(map_input(config, x));
  result.final_estimate = result.levels.back();
  return result;
}

double timing_estimate(const AutomatonConfig& config, double node_delay) {
  check_config(config);
  if (!(node_delay > 0.0)) {
    throw std::domain_error("node delay must be positive");
  }
  return config.pr * node_delay;
}

TrainResult train(const AutomatonConfig& config,
                  const std::vector<Sample>& samples) {
  check_config(config);
  std::vector<Sample> mapped = samples;
  if (config.mapping == InputMapping::tanh) {
    for (Sample& s : mapped) s.x = std::tanh(s.x);
  }

  auto fitted = [&]() -> std::pair<PerceptionModel, FitReport> {
    switch (config.mode) {
      case TrainMode::boundary:
        return fit_boundary(config.family, mapped, config.pr);
      case TrainMode::neighborhood:
        return fit_neighborhood(config.family, mapped, config.pr);
      case TrainMode::online:
        break;
    }
    OnlineTrainer trainer(config.family, config.pr);
    for (const Sample& s : mapped) trainer.observe(s);
    FitReport report;
    report.mode = FitMode::online;
    report.epochs_used = 1;
    report.per_level_residuals.assign(static_cast<std::size_t>(config.pr),
                                      0.0);
    for (const Sample& s : mapped) {
      const std::vector<double> est = trainer.model().realize_all_levels(s.x);
      for (std::size_t k = 0; k < est.size(); ++k) {
        report.per_level_residuals[k] =
            std::max(report.per_level_residuals[k], std::abs(s.y - est[k]));
      }
    }
    report.max_residual = report.per_level_residuals.empty()
                              ? 0.0
                              : report.per_level_residuals.back();
    return {trainer.model(), std::move(report)};
  }();

  TrainResult result{std::move(fitted.first), std::move(fitted.second)};
  if (config.truncate_epsilon) {
    TruncationResult t = truncate(result.model, *config.truncate_epsilon);
    result.model = std::move(t.model);
    result.truncated_count = t.removed_count;
    result.truncation_bound = t.error_bound;
  }
  return result;
}

std::string model_to_json(const PerceptionModel& model) {
  if (model.perceptlet().kind() == Perceptlet::Kind::custom) {
    throw std::invalid_argument(
        "custom perceptlet families cannot be serialized");
  }
  json doc;
  doc["version"] = 1;
  doc["perceptlet"] = model.perceptlet().name();
  doc["pr"] = model.pr();
  json weights = json::array();
  for (const auto& [id, w] : model.weights()) {
    weights.push_back(json{{"level", id.level},
                           {"center_num", id.center.num},
                           {"center_den", id.center.den()},
                           {"w", w}});
  }
  doc["weights"] = std::move(weights);
  return doc.dump(2) + "\n";
}

PerceptionModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model document is not valid JSON: ") +
                     e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("model document must be a JSON object");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw ParseError("model document needs an integer 'version'");
  }
  const auto version = doc["version"].get<std::int64_t>();
  if (version != 1) {
    throw ParseError("unsupported model version: " + std::to_string(version));
  }
  if (!doc.contains("perceptlet") || !doc["perceptlet"].is_string()) {
    throw ParseError("model document needs a string 'perceptlet'");
  }
  const auto family_name = doc["perceptlet"].get<std::string>();
  const std::optional<Perceptlet> family = perceptlet_from_name(family_name);
  if (!family) {
    throw ParseError("unknown perceptlet family: " + family_name);
  }
  if (!doc.contains("pr") || !doc["pr"].is_number_integer()) {
    throw ParseError("model document needs an integer 'pr'");
  }
  if (!doc.contains("weights") || !doc["weights"].is_array()) {
    throw ParseError("model document needs a 'weights' array");
  }

  PerceptionModel model = [&] {
    try {
      return PerceptionModel(*family, doc["pr"].get<int>());
    } catch (const std::domain_error& e) {
      throw ParseError(e.what());
    }
  }();

  std::size_t index = 0;
  for (const json& entry : doc["weights"]) {
    const std::string where = "weights[" + std::to_string(index++) + "]";
    if (!entry.is_object() || !entry.contains("level") ||
        !entry["level"].is_number_integer() || !entry.contains("center_num") ||
        !entry["center_num"].is_number_integer() ||
        !entry.contains("center_den") ||
        !entry["center_den"].is_number_integer() || !entry.contains("w") ||
        !entry["w"].is_number()) {
      throw ParseError(where +
                       " needs integer level/center_num/center_den "
                       "and numeric w");
    }
    const auto den = entry["center_den"].get<std::int64_t>();
    if (den < 1 || !std::has_single_bit(static_cast<std::uint64_t>(den))) {
      throw ParseError(where + " has a non-dyadic center denominator: " +
                       std::to_string(den));
    }
    try {
      const Dyadic center =
          Dyadic::make(entry["center_num"].get<std::int64_t>(),
                       std::countr_zero(static_cast<std::uint64_t>(den)));
      model.set_weight(BasisId{entry["level"].get<int>(), center},
                       entry["w"].get<double>());
    } catch (const std::domain_error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return model;
}

void save_model(const PerceptionModel& model,
                const std::filesystem::path& path) {
  write_file_atomic(path, model_to_json(model));
}

PerceptionModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path));
}

}  // namespace perceptlet
