#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tailalg/angular.hpp"
#include "tailalg/step_function.hpp"

namespace tailalg {

struct StrictnessReport {
  bool strict_first = false;   // slope at 0 equals 1
  bool strict_second = false;  // slope at 1 equals -1
  double slope_zero = 0.0;
  double slope_one = 0.0;
  bool strict() const { return strict_first && strict_second; }
};

struct ZeroOneClassification {
  bool of_min_form = false;  // L(w1, w2) = min(w1, alpha * w2)
  double alpha = 0.0;
};

// Bivariate tail dependence function: 1-homogeneous, concave, Lipschitz-1,
// bounded by min(w1, w2). Determined by its angular restriction, so
// homogeneity holds by construction.
class TailDependenceFunction {
 public:
  explicit TailDependenceFunction(AngularFunction angular)
      : angular_(std::move(angular)) {}

  static TailDependenceFunction comonotone() {
    return TailDependenceFunction(AngularFunction::comonotone());
  }
  static TailDependenceFunction independence() {
    return TailDependenceFunction(AngularFunction::independence());
  }

  const AngularFunction& angular() const { return angular_; }

  double operator()(double w1, double w2) const;

  // One-sided partial derivative, right by convention; lies in [0, 1].
  double partial(int index, double w1, double w2) const;

  // t -> d/dw1 L(t, w2) as an exact step function; piecewise-linear
  // angular representations only. Jumps sit on the rays t = w2 * k/(1-k)
  // through the interior knots k, and the function vanishes beyond the
  // last ray.
  StepFunction partial1_steps(double w2) const;

  // Jump/kink locations of t -> d/dw1 L(t, w2), as quadrature hints.
  std::vector<double> partial1_kinks(double w2) const;

  TailDependenceFunction transposed() const {
    return TailDependenceFunction(angular_.transposed());
  }

  // lim_{y -> inf} L(x, y) = x * slope_at_zero, and symmetrically.
  double first_margin_limit(double x) const;
  double second_margin_limit(double y) const;

  StrictnessReport strictness(double tol = 1e-9) const;

  // Detects L = min(w1, alpha * w2), i.e. partial1 in {0, 1} a.e.
  ZeroOneClassification classify_zero_one(double tol = 1e-6,
                                          int grid_n = 257) const;

 private:
  AngularFunction angular_;
};

// Relaxation dropping homogeneity: grounded, 2-increasing, bounded by
// min(w1, w2), Lipschitz-1. Either backed by a tail dependence function or
// by a generic evaluator that is constant in each coordinate beyond a
// declared saturation point.
class SubdistributionFunction {
 public:
  static SubdistributionFunction from_tdf(TailDependenceFunction tdf);
  static SubdistributionFunction generic(
      std::function<double(double, double)> eval, double sat_x, double sat_y);

  double operator()(double w1, double w2) const;
  double partial(int index, double w1, double w2) const;

  // lim_{y -> inf} d/dw1 F(x, y); exact for homogeneous backings, the
  // saturated value otherwise.
  double partial1_at_infinity(double x) const;

  bool homogeneous() const { return tdf_.has_value(); }
  bool has_exact_steps() const {
    return tdf_ && tdf_->angular().is_piecewise_linear();
  }
  StepFunction partial1_steps(double w2) const;
  std::vector<double> partial1_kinks(double w2) const;

  const TailDependenceFunction& tdf() const;
  SubdistributionFunction transposed() const;

  double saturation_x() const;
  double saturation_y() const;

 private:
  SubdistributionFunction() = default;

  std::optional<TailDependenceFunction> tdf_;
  std::function<double(double, double)> eval_;
  double sat_x_ = 0.0, sat_y_ = 0.0;
};

}  // namespace tailalg
