#include "perceptlet/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace perceptlet {

namespace {

constexpr double kCondTolerance = 1e-9;
constexpr int kGridPoints = 1001;

}  // namespace

Dyadic Dyadic::make(std::int64_t num, int log2_den) {
  if (log2_den < 0 || log2_den > 62) {
    throw std::domain_error("dyadic log2 denominator out of range: " +
                            std::to_string(log2_den));
  }
  while (log2_den > 0 && num % 2 == 0) {
    num /= 2;
    --log2_den;
  }
  Dyadic d;
  d.num = num;
  d.log2_den = log2_den;
  return d;
}

double Dyadic::value() const {
  return std::ldexp(static_cast<double>(num), -log2_den);
}

std::string Dyadic::str() const {
  if (log2_den == 0) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den());
}

bool Dyadic::operator<(const Dyadic& other) const {
  const __int128 lhs = static_cast<__int128>(num) << other.log2_den;
  const __int128 rhs = static_cast<__int128>(other.num) << log2_den;
  return lhs < rhs;
}

bool is_valid_basis_id(const BasisId& id) {
  if (id.level < 1) return false;
  if (id.level == 1) {
    return id.center.log2_den == 0 &&
           (id.center.num == -1 || id.center.num == 1);
  }
  if (id.level == 2) return id.center.num == 0 && id.center.log2_den == 0;
  // Normalized dyadics with this denominator have odd numerators, so the
  // denominator check pins the center to the level's odd-multiple grid.
  if (id.center.log2_den != id.level - 2) return false;
  const std::int64_t bound = std::int64_t{1} << (id.level - 2);
  return id.center.num > -bound && id.center.num < bound;
}

BasisId make_basis_id(int level, Dyadic center) {
  BasisId id{level, center};
  if (!is_valid_basis_id(id)) {
    throw std::domain_error("invalid basis id: level " + std::to_string(level) +
                            ", center " + center.str());
  }
  return id;
}

std::vector<Dyadic> centers_at_level(int level) {
  if (level < 1) {
    throw std::domain_error("basis level must be >= 1, got " +
                            std::to_string(level));
  }
  if (level == 1) return {Dyadic::make(-1, 0), Dyadic::make(1, 0)};
  if (level == 2) return {Dyadic::make(0, 0)};
  if (level > 40) {
    throw std::domain_error("basis level too large: " + std::to_string(level));
  }
  const std::int64_t den = std::int64_t{1} << (level - 2);
  std::vector<Dyadic> centers;
  centers.reserve(static_cast<std::size_t>(den));
  for (std::int64_t num = 1 - den; num < den; num += 2) {
    centers.push_back(Dyadic::make(num, level - 2));
  }
  return centers;
}

Perceptlet Perceptlet::custom(std::function<double(double)> father) {
  if (!father) {
    throw std::invalid_argument("custom perceptlet requires an evaluator");
  }
  return Perceptlet(Kind::custom, std::move(father));
}

std::string Perceptlet::name() const {
  switch (kind_) {
    case Kind::linear:
      return "linear";
    case Kind::sine:
      return "sin";
    case Kind::custom:
      return "custom";
  }
  return "unknown";
}

double Perceptlet::father(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error("perceptlet argument outside [-1,+1]: " +
                            std::to_string(x));
  }
  switch (kind_) {
    case Kind::linear:
      return 0.5 * (1.0 + x);
    case Kind::sine:
      return 0.5 * (1.0 + std::sin(std::numbers::pi * 0.5 * x));
    case Kind::custom:
      return fn_(x);
  }
  return 0.0;
}

double Perceptlet::mother(double x) const { return 1.0 - father(x); }

double Perceptlet::daughter(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error("perceptlet argument outside [-1,+1]: " +
                            std::to_string(x));
  }
  if (x <= 0.0) return father(2.0 * x + 1.0);
  return mother(2.0 * x - 1.0);
}

std::optional<Perceptlet> perceptlet_from_name(const std::string& name) {
  if (name == "linear") return Perceptlet::linear();
  if (name == "sin") return Perceptlet::sine();
  return std::nullopt;
}

double eval_basis(const Perceptlet& p, const BasisId& id, double x) {
  if (!is_valid_basis_id(id)) {
    throw std::domain_error("invalid basis id: level " +
                            std::to_string(id.level) + ", center " +
                            id.center.str());
  }
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error("basis argument outside [-1,+1]: " +
                            std::to_string(x));
  }
  if (id.level == 1) {
    return id.center.num > 0 ? p.father(x) : p.mother(x);
  }
  if (id.level == 2) return p.daughter(x);
  const double t = std::ldexp(x - id.center.value(), id.level - 2);
  if (t < -1.0 || t > 1.0) return 0.0;
  return p.daughter(t);
}

std::vector<std::pair<BasisId, double>> active_bases(const Perceptlet& p,
                                                     int level, double x) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error("basis argument outside [-1,+1]: " +
                            std::to_string(x));
  }
  std::vector<std::pair<BasisId, double>> out;
  if (level <= 2) {
    for (const Dyadic& c : centers_at_level(level)) {
      const BasisId id{level, c};
      const double v = eval_basis(p, id, x);
      if (v != 0.0) out.emplace_back(id, v);
    }
    return out;
  }
  if (level > 40) {
    throw std::domain_error("basis level too large: " + std::to_string(level));
  }
  const double t = std::ldexp(x, level - 2);
  const auto floor_t = static_cast<std::int64_t>(std::floor(t));
  const std::int64_t first_odd = (floor_t % 2 != 0) ? floor_t : floor_t - 1;
  const std::int64_t bound = std::int64_t{1} << (level - 2);
  for (std::int64_t m = first_odd; m <= first_odd + 2; m += 2) {
    if (m <= -bound || m >= bound) continue;
    const BasisId id{level, Dyadic::make(m, level - 2)};
    const double v = eval_basis(p, id, x);
    if (v != 0.0) out.emplace_back(id, v);
  }
  return out;
}

ValidationReport validate_perceptlet(const Perceptlet& p) {
  ValidationReport r;
  r.cond_a = std::abs(p.father(-1.0)) <= kCondTolerance;
  r.cond_b = std::abs(p.father(1.0) - 1.0) <= kCondTolerance;
  r.cond_c = std::abs(p.father(0.0) - 0.5) <= kCondTolerance;

  r.cond_d = true;
  r.range_ok = true;
  double prev = p.father(-1.0);
  for (int j = 0; j < kGridPoints; ++j) {
    const double x = -1.0 + 2.0 * j / (kGridPoints - 1);
    const double v = p.father(x);
    if (v < prev - kCondTolerance) r.cond_d = false;
    if (v < -kCondTolerance || v > 1.0 + kCondTolerance) r.range_ok = false;
    prev = v;
  }

  const double h = 1e-5;
  const double slope_pos = (p.father(1.0) - p.father(1.0 - 2.0 * h)) / (2.0 * h);
  const double slope_neg = (p.father(-1.0 + 2.0 * h) - p.father(-1.0)) / (2.0 * h);
  r.boundary_slope_mismatch = std::abs(slope_pos + slope_neg);
  r.cond_e = r.boundary_slope_mismatch <= 1e-4;
  return r;
}

}  // namespace perceptlet
