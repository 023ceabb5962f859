#include "trackcop/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trackcop/errors.hpp"

namespace trackcop {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedKnots, why); }

void check_domain(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "coordinate " << x << " outside [0,1]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
}

double lerp_between(double x0, double y0, double x1, double y1, double x) {
  return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
}

}  // namespace

PLFunction::PLFunction(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) malformed("abscissa and ordinate lists differ in length");
  if (xs_.size() < 2) malformed("at least two knots are required");
  if (xs_.front() != 0.0 || xs_.back() != 1.0) malformed("abscissas must start at 0 and end at 1");
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i] > xs_[i - 1])) {
      std::ostringstream os;
      os << "abscissas not strictly increasing at index " << i;
      malformed(os.str());
    }
  }
  for (double y : ys_) {
    if (!std::isfinite(y)) malformed("non-finite ordinate");
  }
}

PLFunction PLFunction::identity() { return PLFunction({0.0, 1.0}, {0.0, 1.0}); }

PLFunction PLFunction::constant(double value) { return PLFunction({0.0, 1.0}, {value, value}); }

double PLFunction::operator()(double x) const {
  check_domain(x);
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  auto k = static_cast<std::size_t>(it - xs_.begin());
  if (k == xs_.size()) return ys_.back();
  if (xs_[k - 1] == x) return ys_[k - 1];
  return lerp_between(xs_[k - 1], ys_[k - 1], xs_[k], ys_[k], x);
}

PLFunction PLFunction::refined(std::span<const double> extra) const {
  std::vector<double> sorted(extra.begin(), extra.end());
  std::sort(sorted.begin(), sorted.end());
  for (double x : sorted) check_domain(x);
  auto xs = merge_knots(xs_, sorted);
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back((*this)(x));
  return PLFunction(std::move(xs), std::move(ys));
}

double require_unit(double x) {
  check_domain(x);
  return x;
}

PLFunction make_pl(std::vector<double> xs, std::vector<double> ys) {
  return PLFunction(std::move(xs), std::move(ys));
}

std::vector<double> uniform_knots(std::size_t n) {
  if (n < 2) malformed("a uniform knot grid needs at least two points");
  std::vector<double> xs(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i) / last;
  return xs;
}

std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VariationTriple variation(const PLFunction& f, double a, double b) {
  check_domain(a);
  check_domain(b);
  if (a > b) throw Error(ErrorCode::OutOfDomain, "variation interval has a > b");
  VariationTriple v;
  if (a == b) return v;

  auto xs = f.xs();
  auto ys = f.ys();
  double prev = f(a);
  auto accumulate = [&](double next) {
    const double inc = next - prev;
    if (inc > 0.0) v.vplus += inc;
    else v.vminus -= inc;
    prev = next;
  };
  auto first = std::upper_bound(xs.begin(), xs.end(), a);
  for (auto it = first; it != xs.end() && *it < b; ++it) {
    accumulate(ys[static_cast<std::size_t>(it - xs.begin())]);
  }
  accumulate(f(b));
  v.tv = v.vplus + v.vminus;
  return v;
}

PLFunction positive_variation_majorant(const PLFunction& f) {
  auto ys = f.ys();
  std::vector<double> out(ys.size(), 0.0);
  for (std::size_t i = 1; i < ys.size(); ++i) {
    out[i] = out[i - 1] + std::max(ys[i] - ys[i - 1], 0.0);
  }
  return PLFunction({f.xs().begin(), f.xs().end()}, std::move(out));
}

PLFunction negative_variation_majorant(const PLFunction& f) {
  auto ys = f.ys();
  std::vector<double> out(ys.size(), 0.0);
  for (std::size_t i = 1; i < ys.size(); ++i) {
    out[i] = out[i - 1] + std::max(ys[i - 1] - ys[i], 0.0);
  }
  return PLFunction({f.xs().begin(), f.xs().end()}, std::move(out));
}

bool is_increasing(const PLFunction& f, double tol) { return !first_decrease(f, tol).has_value(); }

std::optional<std::size_t> first_decrease(const PLFunction& f, double tol) {
  auto ys = f.ys();
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i] - ys[i - 1] < -tol) return i;
  }
  return std::nullopt;
}

PLFunction combine(const PLFunction& f, const PLFunction& g, CombineOp op) {
  auto knots = merge_knots(f.xs(), g.xs());
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(knots.size());
  ys.reserve(knots.size());

  auto apply = [op](double a, double b) {
    switch (op) {
      case CombineOp::add: return a + b;
      case CombineOp::sub: return a - b;
      case CombineOp::min: break;
    }
    return std::min(a, b);
  };

  double prev_x = knots.front();
  double prev_d = f(prev_x) - g(prev_x);
  xs.push_back(prev_x);
  ys.push_back(apply(f(prev_x), g(prev_x)));
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double x = knots[i];
    const double fx = f(x);
    const double gx = g(x);
    const double d = fx - gx;
    if (op == CombineOp::min && ((prev_d < 0.0 && d > 0.0) || (prev_d > 0.0 && d < 0.0))) {
      const double t = prev_x + prev_d / (prev_d - d) * (x - prev_x);
      if (t > prev_x && t < x) {
        xs.push_back(t);
        ys.push_back(std::min(f(t), g(t)));
      }
    }
    xs.push_back(x);
    ys.push_back(apply(fx, gx));
    prev_x = x;
    prev_d = d;
  }
  return PLFunction(std::move(xs), std::move(ys));
}

PLFunction scale(const PLFunction& f, double factor) {
  std::vector<double> ys(f.ys().begin(), f.ys().end());
  for (double& y : ys) y *= factor;
  return PLFunction({f.xs().begin(), f.xs().end()}, std::move(ys));
}

std::optional<std::pair<std::size_t, std::size_t>> find_drop(std::span<const double> values,
                                                             double tol) {
  if (values.empty()) return std::nullopt;
  std::size_t peak = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[peak] - values[j] > tol) return std::pair{peak, j};
    if (values[j] >= values[peak]) peak = j;
  }
  return std::nullopt;
}

}  // namespace trackcop
