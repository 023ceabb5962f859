#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace trackcop {

/// Piecewise-linear function on [0,1] given by its knots.
///
/// Abscissas are strictly increasing, start at 0 and end at 1. Evaluation
/// returns the stored ordinate at a knot and interpolates linearly between
/// knots. Instances are immutable once constructed.
class PLFunction {
 public:
  /// Throws Error(MalformedKnots) unless the lists have equal length >= 2 and
  /// the abscissas increase strictly from 0 to 1.
  PLFunction(std::vector<double> xs, std::vector<double> ys);

  static PLFunction identity();
  static PLFunction constant(double value);

  /// Samples `f` on the uniform grid i/(n-1), i = 0..n-1.
  template <class F>
  static PLFunction sample(F&& f, std::size_t n);

  /// Samples `f` at the given abscissas (which must form a valid knot list).
  template <class F>
  static PLFunction sample_at(F&& f, std::vector<double> xs);

  /// Throws Error(OutOfDomain) for x outside [0,1].
  double operator()(double x) const;

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }
  std::size_t size() const noexcept { return xs_.size(); }

  /// Same function with the extra abscissas inserted as knots.
  PLFunction refined(std::span<const double> extra) const;

  bool operator==(const PLFunction&) const = default;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Returns x unchanged; throws Error(OutOfDomain) unless 0 <= x <= 1.
double require_unit(double x);

/// Convenience wrapper matching the knot-list constructor.
PLFunction make_pl(std::vector<double> xs, std::vector<double> ys);

/// Uniform abscissas i/(n-1). All uniform samplings in the library use this,
/// so knot sets built from the same n coincide bit for bit.
std::vector<double> uniform_knots(std::size_t n);

/// Sorted union of two sorted abscissa lists, exact duplicates removed.
std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b);

struct VariationTriple {
  double tv = 0.0;
  double vplus = 0.0;
  double vminus = 0.0;
};

/// Exact total, positive and negative variation of f on [a, b].
VariationTriple variation(const PLFunction& f, double a, double b);

/// x -> V+_{0,x}(f): the least increasing function vanishing at 0 whose
/// difference with f is increasing.
PLFunction positive_variation_majorant(const PLFunction& f);

/// x -> V-_{0,x}(f).
PLFunction negative_variation_majorant(const PLFunction& f);

/// True iff every consecutive knot increment is >= -tol.
bool is_increasing(const PLFunction& f, double tol);

/// Index of the first knot whose increment from its predecessor is < -tol.
std::optional<std::size_t> first_decrease(const PLFunction& f, double tol);

enum class CombineOp { add, sub, min };

/// Pointwise combination on the union of both knot sets. `min` also inserts
/// the crossing points of the two graphs so the result stays exact.
PLFunction combine(const PLFunction& f, const PLFunction& g, CombineOp op);

PLFunction scale(const PLFunction& f, double factor);

inline PLFunction operator+(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, CombineOp::add);
}
inline PLFunction operator-(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, CombineOp::sub);
}

/// First pair (i, j), i < j, with values[i] - values[j] > tol, taking i as the
/// latest running maximum before j. Empty when the sequence never drops by
/// more than tol, i.e. when values[j] - values[i] >= -tol for all i <= j.
std::optional<std::pair<std::size_t, std::size_t>> find_drop(std::span<const double> values,
                                                             double tol);

// ---------------------------------------------------------------------------

template <class F>
PLFunction PLFunction::sample(F&& f, std::size_t n) {
  return sample_at(std::forward<F>(f), uniform_knots(n));
}

template <class F>
PLFunction PLFunction::sample_at(F&& f, std::vector<double> xs) {
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(f(x));
  return PLFunction(std::move(xs), std::move(ys));
}

}  // namespace trackcop
