#pragma once

#include <optional>
#include <utility>

namespace perceptlet {

// Tolerance for the l_pos + l_neg = 1 closure of a non-null cbit. Constructors
// renormalize violations below this bound and reject anything above it.
inline constexpr double kCbitSumTolerance = 1e-12;

/// A perception observable: a pair of belonging degrees to the extremes +1 and
/// -1 that sum to one, or the distinguished Null ("ideal / passive") state.
/// Immutable after construction; all operations below are pure.
class Cbit {
 public:
  static Cbit null() { return Cbit(); }

  /// Builds a cbit from explicit belonging degrees. Components are
  /// renormalized when |l_pos + l_neg - 1| <= kCbitSumTolerance; larger
  /// violations or out-of-range components throw std::domain_error.
  static Cbit from_components(double l_pos, double l_neg);

  /// Maps a perception value x in [-1,+1] to ((1+x)/2, (1-x)/2). Null maps
  /// to Null. Out-of-range x throws std::domain_error naming the value.
  static Cbit from_perception(std::optional<double> x);

  bool is_null() const { return null_; }

  // Component access requires a non-null cbit (throws std::logic_error).
  double l_pos() const;
  double l_neg() const;

  /// The perception value l_pos - l_neg (the cbit norm); Null -> nullopt.
  std::optional<double> perception() const;

  bool operator==(const Cbit&) const = default;

 private:
  Cbit() = default;
  Cbit(double l_pos, double l_neg) : l_pos_(l_pos), l_neg_(l_neg), null_(false) {}

  double l_pos_ = 0.0;
  double l_neg_ = 0.0;
  bool null_ = true;
};

/// Association weights between a dependent and an independent observable:
/// w_pos is the dependent's belonging degree when the input sits at +1,
/// w_neg the degree when it sits at -1. Both in [0,1].
struct Association {
  double w_pos;
  double w_neg;
};

/// The four pairwise products of two non-null cbits, in the basis order
/// (+1,+1), (+1,-1), (-1,+1), (-1,-1). Components sum to one.
struct Tensor2 {
  double pp;
  double pn;
  double np;
  double nn;
};

/// Component swap. Negates the perception value. Null -> Null.
Cbit complement(const Cbit& c);

/// Componentwise average; the perception value of the result is the mean of
/// the operands'. Null is the identity element (a passive participant
/// contributes nothing to the aggregation).
Cbit cbit_or(const Cbit& a, const Cbit& b);

/// (l1*l2 + m1*m2, l1*m2 + m1*l2); the perception value of the result is the
/// product of the operands'. Null is absorbing.
Cbit cbit_and(const Cbit& a, const Cbit& b);

/// Tensor product of two observables. Both operands must be non-null
/// (throws std::domain_error otherwise; no tensor basis exists for Null).
Tensor2 tensor_product(const Cbit& a, const Cbit& b);

/// l_y = w_pos * l_pos + w_neg * l_neg, paired with its complement 1 - l_y.
/// Null input -> Null output.
Cbit apply_association(const Association& w, const Cbit& c);

/// Recovers the association from the dependent's belonging degrees observed
/// at the input extremes +1 and -1. Arguments outside [0,1] throw
/// std::domain_error. apply_association of the result reproduces both
/// observations exactly.
Association estimate_association(double l_y_at_pos, double l_y_at_neg);

/// Coordinates of x in the two half-interval logical subspaces:
/// x' = 2x-1 on [0,+1] (else 0), x'' = 2x+1 on [-1,0] (else 0). Both
/// branches are closed, so x = 0 reports (x' = -1, x'' = +1).
struct SubspaceCoords {
  double x_prime;
  double x_dblprime;
};

SubspaceCoords subspace_coordinates(double x);

}  // namespace perceptlet
