#include "perceptlet/cbit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace perceptlet {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Cbit Cbit::from_components(double l_pos, double l_neg) {
  if (!(l_pos >= 0.0 && l_pos <= 1.0) || !(l_neg >= 0.0 && l_neg <= 1.0)) {
    throw std::domain_error("cbit components must lie in [0,1], got (" +
                            num(l_pos) + ", " + num(l_neg) + ")");
  }
  const double sum = l_pos + l_neg;
  if (std::abs(sum - 1.0) > kCbitSumTolerance) {
    throw std::domain_error("cbit components must sum to 1, got " + num(sum));
  }
  return Cbit(l_pos / sum, l_neg / sum);
}

Cbit Cbit::from_perception(std::optional<double> x) {
  if (!x) return null();
  if (!(*x >= -1.0 && *x <= 1.0)) {
    throw std::domain_error("perception value " + num(*x) +
                            " outside [-1,+1]");
  }
  return Cbit(0.5 * (1.0 + *x), 0.5 * (1.0 - *x));
}

double Cbit::l_pos() const {
  if (null_) throw std::logic_error("Null cbit carries no components");
  return l_pos_;
}

double Cbit::l_neg() const {
  if (null_) throw std::logic_error("Null cbit carries no components");
  return l_neg_;
}

std::optional<double> Cbit::perception() const {
  if (null_) return std::nullopt;
  return l_pos_ - l_neg_;
}

Cbit complement(const Cbit& c) {
  if (c.is_null()) return Cbit::null();
  return Cbit::from_components(c.l_neg(), c.l_pos());
}

Cbit cbit_or(const Cbit& a, const Cbit& b) {
  if (a.is_null()) return b;
  if (b.is_null()) return a;
  return Cbit::from_components(0.5 * (a.l_pos() + b.l_pos()),
                               0.5 * (a.l_neg() + b.l_neg()));
}

Cbit cbit_and(const Cbit& a, const Cbit& b) {
  if (a.is_null() || b.is_null()) return Cbit::null();
  const double pos = a.l_pos() * b.l_pos() + a.l_neg() * b.l_neg();
  const double neg = a.l_pos() * b.l_neg() + a.l_neg() * b.l_pos();
  return Cbit::from_components(pos, neg);
}

Tensor2 tensor_product(const Cbit& a, const Cbit& b) {
  if (a.is_null() || b.is_null()) {
    throw std::domain_error("tensor product is undefined for a Null operand");
  }
  return Tensor2{a.l_pos() * b.l_pos(), a.l_pos() * b.l_neg(),
                 a.l_neg() * b.l_pos(), a.l_neg() * b.l_neg()};
}

Cbit apply_association(const Association& w, const Cbit& c) {
  if (c.is_null()) return Cbit::null();
  const double l_y = w.w_pos * c.l_pos() + w.w_neg * c.l_neg();
  return Cbit::from_components(l_y, 1.0 - l_y);
}

Association estimate_association(double l_y_at_pos, double l_y_at_neg) {
  if (!(l_y_at_pos >= 0.0 && l_y_at_pos <= 1.0) ||
      !(l_y_at_neg >= 0.0 && l_y_at_neg <= 1.0)) {
    throw std::domain_error("association observations must lie in [0,1], got (" +
                            num(l_y_at_pos) + ", " + num(l_y_at_neg) + ")");
  }
  return Association{l_y_at_pos, l_y_at_neg};
}

SubspaceCoords subspace_coordinates(double x) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error("perception value " + num(x) + " outside [-1,+1]");
  }
  SubspaceCoords out{0.0, 0.0};
  if (x >= 0.0) out.x_prime = 2.0 * x - 1.0;
  if (x <= 0.0) out.x_dblprime = 2.0 * x + 1.0;
  return out;
}

}  // namespace perceptlet
