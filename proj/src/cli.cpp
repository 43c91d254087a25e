#include "perceptlet/cli.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "perceptlet/automaton.hpp"
#include "perceptlet/csv.hpp"
#include "perceptlet/io.hpp"

namespace perceptlet::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string input;
  std::string output;
  std::string model_path;
  std::string family = "linear";
  int pr = 0;
  std::string mode = "boundary";
  std::string map_input;
  std::string y_space = "logical";
  std::string map_output;
  std::optional<double> truncate_epsilon;
  int density = 257;
  std::vector<double> xs;
  std::int64_t samples_n = 0;
};

InputMapping mapping_of(const RunConfig& cfg) {
  return cfg.map_input == "tanh" ? InputMapping::tanh : InputMapping::none;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.y_space == "perception" && !cfg.map_output.empty()) {
    throw ParseError("choose either --y-space perception or --map-output "
                     "tanh, not both");
  }
  CsvReadOptions read_options;
  read_options.y_space = !cfg.map_output.empty() ? YSpace::tanh_real
                         : cfg.y_space == "perception" ? YSpace::perception
                                                       : YSpace::logical;
  const std::vector<Sample> samples =
      parse_samples_csv(read_file(cfg.input), read_options);

  AutomatonConfig config;
  config.family = *perceptlet_from_name(cfg.family);
  config.pr = cfg.pr;
  config.mode = cfg.mode == "boundary"       ? TrainMode::boundary
                : cfg.mode == "neighborhood" ? TrainMode::neighborhood
                                             : TrainMode::online;
  config.mapping = mapping_of(cfg);
  config.truncate_epsilon = cfg.truncate_epsilon;

  const TrainResult result = train(config, samples);
  save_model(result.model, cfg.output);

  json report;
  report["mode"] = cfg.mode;
  report["epochs"] = result.report.epochs_used;
  report["max_residual"] = result.report.max_residual;
  report["per_level_max_residual"] = result.report.per_level_residuals;
  report["warnings"] = result.report.warnings;
  if (cfg.truncate_epsilon) {
    report["truncated_count"] = result.truncated_count;
    report["truncation_bound"] = result.truncation_bound;
  }
  out << report.dump() << "\n";
  return 0;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const PerceptionModel model = load_model(cfg.model_path);
  AutomatonConfig config;
  config.family = model.perceptlet();
  config.pr = model.pr();
  config.mapping = mapping_of(cfg);
  for (const double x : cfg.xs) {
    const RealizeResult r = realize(model, x, config);
    out << format_double(x);
    for (const double f : r.levels) out << "," << format_double(f);
    out << "\n";
  }
  return 0;
}

int cmd_series(const RunConfig& cfg) {
  const PerceptionModel model = load_model(cfg.model_path);
  std::string text = "x";
  for (int k = 1; k <= model.pr(); ++k) text += ",f" + std::to_string(k);
  text += "\n";
  for (int j = 0; j < cfg.density; ++j) {
    const double x = -1.0 + 2.0 * j / (cfg.density - 1);
    text += format_double(x);
    for (const double f : model.realize_all_levels(x)) {
      text += ",";
      text += format_double(f);
    }
    text += "\n";
  }
  write_file_atomic(cfg.output, text);
  return 0;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
  bool did_something = false;
  if (cfg.pr != 0) {
    out << basis_count(cfg.pr) << "\n";
    did_something = true;
  }
  if (cfg.samples_n != 0) {
    out << resolution_for(cfg.samples_n) << "\n";
    did_something = true;
  }
  if (!cfg.model_path.empty()) {
    const PerceptionModel model = load_model(cfg.model_path);
    out << "pr " << model.pr() << "\n";
    std::map<int, int> per_level;
    for (const auto& [id, w] : model.weights()) ++per_level[id.level];
    for (int level = 1; level <= model.pr(); ++level) {
      out << "level " << level << " weights " << per_level[level] << "\n";
    }
    if (cfg.truncate_epsilon) {
      const TruncationResult t = truncate(model, *cfg.truncate_epsilon);
      out << "truncate_removed " << t.removed_count << "\n";
      out << "truncate_bound " << format_double(t.error_bound) << "\n";
    }
    did_something = true;
  }
  if (!did_something) {
    throw ParseError("info needs --pr, --samples, or --model");
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"hierarchical percept-let function approximator"};
  app.require_subcommand(1);

  CLI::App* fit = app.add_subcommand("fit", "fit a model from CSV samples");
  fit->add_option("-i,--input", cfg.input,
                  "CSV samples: x in the first column, y in the last")
      ->required();
  fit->add_option("-o,--output", cfg.output, "model JSON destination")
      ->required();
  fit->add_option("--family", cfg.family, "percept-let family")
      ->check(CLI::IsMember({"linear", "sin"}))
      ->capture_default_str();
  fit->add_option("--pr", cfg.pr, "perception resolution")
      ->required()
      ->check(CLI::Range(1, 40));
  fit->add_option("--mode", cfg.mode, "training mode")
      ->check(CLI::IsMember({"boundary", "neighborhood", "online"}))
      ->capture_default_str();
  fit->add_option("--map-input", cfg.map_input,
                  "squash raw x onto (-1,+1) by tanh")
      ->check(CLI::IsMember({"tanh"}));
  fit->add_option("--y-space", cfg.y_space,
                  "interpret y as logical [0,1] or perception [-1,+1]")
      ->check(CLI::IsMember({"logical", "perception"}))
      ->capture_default_str();
  fit->add_option("--map-output", cfg.map_output,
                  "squash unbounded y onto (0,1) by tanh")
      ->check(CLI::IsMember({"tanh"}));
  fit->add_option("--truncate", cfg.truncate_epsilon,
                  "drop corrections with |w| below this")
      ->check(CLI::NonNegativeNumber);

  CLI::App* eval =
      app.add_subcommand("eval", "print per-level estimates at given x");
  eval->add_option("-m,--model", cfg.model_path, "model JSON")->required();
  eval->add_option("-x,--at", cfg.xs, "x values to evaluate")->required();
  eval->add_option("--map-input", cfg.map_input,
                   "squash raw x onto (-1,+1) by tanh")
      ->check(CLI::IsMember({"tanh"}));

  CLI::App* series = app.add_subcommand(
      "series", "sample every level on a uniform grid into a CSV");
  series->add_option("-m,--model", cfg.model_path, "model JSON")->required();
  series->add_option("-o,--output", cfg.output, "CSV destination")->required();
  series->add_option("--density", cfg.density, "grid point count")
      ->check(CLI::Range(2, 1000001))
      ->capture_default_str();

  CLI::App* info =
      app.add_subcommand("info", "complexity formulas and model stats");
  info->add_option("--pr", cfg.pr, "print the basis count at this resolution")
      ->check(CLI::Range(1, 62));
  info->add_option("--samples", cfg.samples_n,
                   "print the resolution for this sample count");
  info->add_option("-m,--model", cfg.model_path, "print model stats");
  info->add_option("--truncate", cfg.truncate_epsilon,
                   "preview truncation at this epsilon")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed()) return cmd_fit(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (series->parsed()) return cmd_series(cfg);
    if (info->parsed()) return cmd_info(cfg, out);
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace perceptlet::cli
