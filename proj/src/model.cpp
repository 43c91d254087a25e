#include "perceptlet/model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace perceptlet {

namespace {

void check_x_range(double x) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error("perception value outside [-1,+1]: " +
                            std::to_string(x));
  }
}

}  // namespace

Sample Sample::make(double x, double y) {
  check_x_range(x);
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("logical value outside [0,1]: " +
                            std::to_string(y));
  }
  return Sample{x, y};
}

PerceptionModel::PerceptionModel(Perceptlet perceptlet, int pr)
    : perceptlet_(std::move(perceptlet)), pr_(pr) {
  if (pr < 1 || pr > 40) {
    throw std::domain_error("perception resolution out of range: " +
                            std::to_string(pr));
  }
  if (perceptlet_.kind() == Perceptlet::Kind::custom) {
    const ValidationReport report = validate_perceptlet(perceptlet_);
    if (!report.passed()) {
      std::string failed;
      if (!report.cond_a) failed += " a";
      if (!report.cond_b) failed += " b";
      if (!report.cond_c) failed += " c";
      if (!report.cond_d) failed += " d";
      if (!report.range_ok) failed += " range";
      throw std::invalid_argument("custom perceptlet fails conditions:" +
                                  failed);
    }
  }
}

void PerceptionModel::set_weight(const BasisId& id, double w) {
  if (!is_valid_basis_id(id) || id.level > pr_) {
    throw std::domain_error("basis id not in hierarchy up to pr=" +
                            std::to_string(pr_) + ": level " +
                            std::to_string(id.level) + ", center " +
                            id.center.str());
  }
  if (!std::isfinite(w)) {
    throw std::domain_error("weight must be finite");
  }
  weights_[id] = w;
}

void PerceptionModel::remove_weight(const BasisId& id) { weights_.erase(id); }

std::optional<double> PerceptionModel::weight(const BasisId& id) const {
  const auto it = weights_.find(id);
  if (it == weights_.end()) return std::nullopt;
  return it->second;
}

double PerceptionModel::level_contribution(double x, int level) const {
  double sum = 0.0;
  if (level <= 2) {
    for (const Dyadic& c : centers_at_level(level)) {
      const BasisId id{level, c};
      const auto it = weights_.find(id);
      if (it != weights_.end()) {
        sum += it->second * eval_basis(perceptlet_, id, x);
      }
    }
    return sum;
  }
  // At most one level-i basis (i >= 3) is nonzero at x; probing the two odd
  // scaled-grid neighbors of x covers it without touching the whole level.
  const double t = std::ldexp(x, level - 2);
  const auto floor_t = static_cast<std::int64_t>(std::floor(t));
  const std::int64_t first_odd = (floor_t % 2 != 0) ? floor_t : floor_t - 1;
  const std::int64_t bound = std::int64_t{1} << (level - 2);
  for (std::int64_t m = first_odd; m <= first_odd + 2; m += 2) {
    if (m <= -bound || m >= bound) continue;
    const BasisId id{level, Dyadic::make(m, level - 2)};
    const auto it = weights_.find(id);
    if (it != weights_.end()) {
      sum += it->second * eval_basis(perceptlet_, id, x);
    }
  }
  return sum;
}

double PerceptionModel::evaluate(double x, int up_to_level) const {
  check_x_range(x);
  if (up_to_level < 1 || up_to_level > pr_) {
    throw std::domain_error("level outside 1.." + std::to_string(pr_) + ": " +
                            std::to_string(up_to_level));
  }
  double sum = 0.0;
  for (int level = 1; level <= up_to_level; ++level) {
    sum += level_contribution(x, level);
  }
  return sum;
}

std::vector<double> PerceptionModel::realize_all_levels(double x) const {
  check_x_range(x);
  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(pr_));
  double sum = 0.0;
  for (int level = 1; level <= pr_; ++level) {
    sum += level_contribution(x, level);
    estimates.push_back(sum);
  }
  return estimates;
}

double PerceptionModel::level_difference(double x, int k) const {
  check_x_range(x);
  if (k < 2 || k > pr_) {
    throw std::domain_error("difference level outside 2.." +
                            std::to_string(pr_) + ": " + std::to_string(k));
  }
  return level_contribution(x, k);
}

TruncationResult truncate(const PerceptionModel& model, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw std::domain_error("truncation epsilon must be nonnegative");
  }
  TruncationResult result{PerceptionModel(model.perceptlet(), model.pr())};
  for (const auto& [id, w] : model.weights()) {
    if (id.level >= 2 && std::abs(w) < epsilon) {
      ++result.removed_count;
      result.error_bound += std::abs(w);
    } else {
      result.model.set_weight(id, w);
    }
  }
  return result;
}

std::int64_t basis_count(int pr) {
  if (pr < 1 || pr > 62) {
    throw std::domain_error("perception resolution out of range: " +
                            std::to_string(pr));
  }
  return (std::int64_t{1} << (pr - 1)) + 1;
}

int resolution_for(std::int64_t n_samples) {
  if (n_samples < 2) {
    throw std::domain_error("need at least 2 samples, got " +
                            std::to_string(n_samples));
  }
  const auto m = static_cast<std::uint64_t>(n_samples - 1);
  if (!std::has_single_bit(m)) {
    throw std::domain_error(
        "sample count " + std::to_string(n_samples) +
        " is not 2^(pr-1)+1; pad the grid or use neighborhood mode");
  }
  return 1 + std::countr_zero(m);
}

double to_perception_space(double y_real) { return std::tanh(y_real); }

double from_perception_space(double x) {
  if (!(x > -1.0 && x < 1.0)) {
    throw std::domain_error("inverse mapping needs x in (-1,+1), got " +
                            std::to_string(x));
  }
  return std::atanh(x);
}

}  // namespace perceptlet
