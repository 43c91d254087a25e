#include "perceptlet/learner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace perceptlet {

namespace {

constexpr double kGridTolerance = 1e-9;
constexpr double kSweepTolerance = 1e-13;
constexpr int kMaxSweeps = 500;

int grid_node_level(const Dyadic& c) {
  if (c.log2_den == 0) return c.num == 0 ? 2 : 1;
  return c.log2_den + 2;
}

std::optional<Dyadic> match_grid_node(double x, int pr) {
  const double scaled = std::ldexp(x, pr - 1);
  const auto k = static_cast<std::int64_t>(std::llround(scaled));
  const std::int64_t bound = std::int64_t{1} << (pr - 1);
  if (k < -bound || k > bound) return std::nullopt;
  const Dyadic node = Dyadic::make(k, pr - 1);
  if (std::abs(x - node.value()) > kGridTolerance) return std::nullopt;
  return node;
}

void check_sample(const Sample& s, std::size_t index) {
  try {
    Sample::make(s.x, s.y);
  } catch (const std::domain_error& e) {
    throw std::domain_error("sample " + std::to_string(index) + ": " +
                            e.what());
  }
}

void check_pr(int pr) {
  if (pr < 1 || pr > 40) {
    throw std::domain_error("perception resolution out of range: " +
                            std::to_string(pr));
  }
}

Dyadic node_or_throw(const Sample& s, std::size_t index, int pr) {
  const auto node = match_grid_node(s.x, pr);
  if (!node) {
    throw GridError("sample " + std::to_string(index) + " (x=" +
                    std::to_string(s.x) + ") is off the level-" +
                    std::to_string(pr) + " grid");
  }
  return *node;
}

/// Passes a level-by-level learner needs over the stream: a node is usable
/// only once every lower level has been seen in full.
int simulate_epochs(const std::vector<Dyadic>& sample_nodes, int pr) {
  std::vector<std::size_t> needed(static_cast<std::size_t>(pr) + 1, 0);
  std::vector<std::size_t> have(static_cast<std::size_t>(pr) + 1, 0);
  for (int level = 1; level <= pr; ++level) {
    needed[static_cast<std::size_t>(level)] = centers_at_level(level).size();
  }
  std::set<Dyadic> seen;
  std::vector<bool> absorbed(sample_nodes.size(), false);
  std::size_t remaining = sample_nodes.size();
  int epochs = 0;
  const auto lower_levels_done = [&](int level) {
    for (int l = 1; l < level; ++l) {
      if (have[static_cast<std::size_t>(l)] <
          needed[static_cast<std::size_t>(l)]) {
        return false;
      }
    }
    return true;
  };
  while (remaining > 0) {
    ++epochs;
    bool progressed = false;
    for (std::size_t i = 0; i < sample_nodes.size(); ++i) {
      if (absorbed[i]) continue;
      const int level = grid_node_level(sample_nodes[i]);
      if (!lower_levels_done(level)) continue;
      absorbed[i] = true;
      --remaining;
      progressed = true;
      if (seen.insert(sample_nodes[i]).second) {
        ++have[static_cast<std::size_t>(level)];
      }
    }
    if (!progressed) break;
  }
  return std::max(epochs, 1);
}

std::vector<double> residual_profile(const PerceptionModel& model,
                                     const std::vector<Sample>& samples) {
  std::vector<double> per_level(static_cast<std::size_t>(model.pr()), 0.0);
  for (const Sample& s : samples) {
    const std::vector<double> est = model.realize_all_levels(s.x);
    for (std::size_t k = 0; k < est.size(); ++k) {
      per_level[k] = std::max(per_level[k], std::abs(s.y - est[k]));
    }
  }
  return per_level;
}

void append_range_warnings(const PerceptionModel& model, FitReport& report) {
  constexpr double slack = 1e-12;
  for (const auto& [id, w] : model.weights()) {
    if (id.level == 1) {
      if (w < -slack || w > 1.0 + slack) {
        report.warnings.push_back("level-1 weight at center " +
                                  id.center.str() + " outside [0,1]: " +
                                  std::to_string(w));
      }
    } else if (w < -1.0 - slack || w > 1.0 + slack) {
      report.warnings.push_back("correction weight at level " +
                                std::to_string(id.level) + ", center " +
                                id.center.str() + " outside [-1,+1]: " +
                                std::to_string(w));
    }
  }
}

}  // namespace

RlsState rls_init(double activation, double y) {
  if (activation == 0.0) {
    throw std::domain_error("rls_init needs a nonzero activation");
  }
  RlsState s;
  s.w_hat = y / activation;
  s.L = 1.0 / (activation * activation);
  s.n = 1;
  return s;
}

RlsState rls_update(const RlsState& s, double activation, double y) {
  if (activation == 0.0) return s;
  RlsState next;
  next.L = s.L / (1.0 + activation * activation * s.L);
  const double gain = activation * next.L;
  next.w_hat = s.w_hat + gain * (y - activation * s.w_hat);
  next.n = s.n + 1;
  return next;
}

void rls_observe(std::optional<RlsState>& state, double activation, double y) {
  if (activation == 0.0) return;
  if (state) {
    state = rls_update(*state, activation, y);
  } else {
    state = rls_init(activation, y);
  }
}

double batch_weight(const std::vector<std::pair<double, double>>& samples) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& [b, y] : samples) {
    num += b * y;
    den += b * b;
  }
  if (den == 0.0) {
    throw std::domain_error("batch weight undefined: every activation is zero");
  }
  return num / den;
}

bool is_hierarchical_order(const std::vector<Sample>& samples, int pr) {
  check_pr(pr);
  int prev_level = 1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int level = grid_node_level(node_or_throw(samples[i], i, pr));
    if (level < prev_level) return false;
    prev_level = level;
  }
  return true;
}

std::pair<PerceptionModel, FitReport> fit_boundary(
    const Perceptlet& family, const std::vector<Sample>& samples, int pr) {
  check_pr(pr);
  PerceptionModel model(family, pr);
  FitReport report;
  report.mode = FitMode::boundary;

  std::map<Dyadic, double> value;
  std::vector<Dyadic> sample_nodes;
  sample_nodes.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    check_sample(samples[i], i);
    const Dyadic node = node_or_throw(samples[i], i, pr);
    sample_nodes.push_back(node);
    if (value.count(node) != 0) {
      report.warnings.push_back("duplicate sample at center " + node.str() +
                                ": keeping the last value");
    }
    value[node] = samples[i].y;
  }

  std::string missing;
  for (int level = 1; level <= pr; ++level) {
    for (const Dyadic& c : centers_at_level(level)) {
      if (value.count(c) == 0) {
        missing += missing.empty() ? "" : ", ";
        missing += c.str();
      }
    }
  }
  if (!missing.empty()) {
    throw GridError("boundary fit is missing grid nodes: " + missing);
  }

  report.epochs_used = simulate_epochs(sample_nodes, pr);

  for (int level = 1; level <= pr; ++level) {
    for (const Dyadic& c : centers_at_level(level)) {
      const double below =
          level == 1 ? 0.0 : model.evaluate(c.value(), level - 1);
      model.set_weight(BasisId{level, c}, value.at(c) - below);
    }
  }

  report.per_level_residuals = residual_profile(model, samples);
  report.max_residual = report.per_level_residuals.back();
  append_range_warnings(model, report);
  return {std::move(model), std::move(report)};
}

std::pair<PerceptionModel, FitReport> fit_neighborhood(
    const Perceptlet& family, const std::vector<Sample>& samples, int pr) {
  check_pr(pr);
  if (samples.empty()) {
    throw std::domain_error("neighborhood fit needs at least one sample");
  }
  PerceptionModel model(family, pr);
  FitReport report;
  report.mode = FitMode::neighborhood;

  struct Touch {
    std::size_t sample;
    double activation;
  };
  std::vector<std::map<BasisId, std::vector<Touch>>> table(
      static_cast<std::size_t>(pr) + 1);
  std::vector<std::array<double, 2>> phi(samples.size());
  const BasisId id_neg{1, Dyadic::make(-1, 0)};
  const BasisId id_pos{1, Dyadic::make(1, 0)};
  for (std::size_t s = 0; s < samples.size(); ++s) {
    check_sample(samples[s], s);
    phi[s] = {eval_basis(family, id_neg, samples[s].x),
              eval_basis(family, id_pos, samples[s].x)};
    for (int level = 2; level <= pr; ++level) {
      for (const auto& [id, v] : active_bases(family, level, samples[s].x)) {
        table[static_cast<std::size_t>(level)][id].push_back(Touch{s, v});
      }
    }
  }

  int sweeps = 0;
  double max_dw = 0.0;
  while (sweeps < kMaxSweeps) {
    ++sweeps;
    max_dw = 0.0;

    // Level 1: joint two-parameter least squares against the residual of
    // everything above level 1.
    double g00 = 0.0, g01 = 0.0, g11 = 0.0, b0 = 0.0, b1 = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const double rest =
          pr == 1 ? 0.0
                  : model.evaluate(samples[s].x, pr) -
                        model.evaluate(samples[s].x, 1);
      const double target = samples[s].y - rest;
      g00 += phi[s][0] * phi[s][0];
      g01 += phi[s][0] * phi[s][1];
      g11 += phi[s][1] * phi[s][1];
      b0 += phi[s][0] * target;
      b1 += phi[s][1] * target;
    }
    double w_neg;
    double w_pos;
    const double det = g00 * g11 - g01 * g01;
    const double scale = std::max(g00, g11);
    if (std::abs(det) > 1e-12 * scale * scale) {
      w_neg = (g11 * b0 - g01 * b1) / det;
      w_pos = (g00 * b1 - g01 * b0) / det;
    } else {
      // Minimum-norm solution of the rank-one system (pinv of G = t uu^T).
      const double trace = g00 + g11;
      w_neg = (g00 * b0 + g01 * b1) / (trace * trace);
      w_pos = (g01 * b0 + g11 * b1) / (trace * trace);
    }
    max_dw = std::max(max_dw,
                      std::abs(w_neg - model.weight(id_neg).value_or(0.0)));
    max_dw = std::max(max_dw,
                      std::abs(w_pos - model.weight(id_pos).value_or(0.0)));
    model.set_weight(id_neg, w_neg);
    model.set_weight(id_pos, w_pos);

    // Levels >= 2: one RLS pass per touched basis against the residual of
    // every other basis, which on the first sweep is exactly the frozen
    // lower-level cascade.
    for (int level = 2; level <= pr; ++level) {
      for (const auto& [id, touches] : table[static_cast<std::size_t>(level)]) {
        const double w_old = model.weight(id).value_or(0.0);
        std::optional<RlsState> state;
        for (const Touch& t : touches) {
          const Sample& s = samples[t.sample];
          const double others =
              model.evaluate(s.x, pr) - w_old * t.activation;
          rls_observe(state, t.activation, s.y - others);
        }
        if (state) {
          max_dw = std::max(max_dw, std::abs(state->w_hat - w_old));
          model.set_weight(id, state->w_hat);
        }
      }
    }

    if (max_dw <= kSweepTolerance) break;
  }
  if (max_dw > kSweepTolerance) {
    report.warnings.push_back(
        "neighborhood fit stopped after " + std::to_string(sweeps) +
        " sweeps with max weight change " + std::to_string(max_dw));
  }

  report.epochs_used = pr * sweeps;
  report.per_level_residuals = residual_profile(model, samples);
  report.max_residual = report.per_level_residuals.back();
  append_range_warnings(model, report);
  return {std::move(model), std::move(report)};
}

OnlineTrainer::OnlineTrainer(Perceptlet family, int pr)
    : model_(std::move(family), pr) {}

void OnlineTrainer::observe(const Sample& sample) {
  const Sample checked = Sample::make(sample.x, sample.y);
  for (int level = 1; level <= model_.pr(); ++level) {
    const double below =
        level == 1 ? 0.0 : model_.evaluate(checked.x, level - 1);
    const double target = checked.y - below;
    for (const auto& [id, act] :
         active_bases(model_.perceptlet(), level, checked.x)) {
      const auto it = states_.find(id);
      if (it == states_.end()) {
        states_.emplace(id, rls_init(act, target));
      } else {
        it->second = rls_update(it->second, act, target);
      }
      model_.set_weight(id, states_.at(id).w_hat);
    }
  }
  ++samples_seen_;
}

bool OnlineTrainer::observe(const Cbit& perception, double y) {
  if (perception.is_null()) return false;
  observe(Sample{*perception.perception(), y});
  return true;
}

}  // namespace perceptlet
