#pragma once

#include <string>
#include <vector>

#include "tailalg/numerics.hpp"

namespace tailalg {

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Restriction of a bivariate tail dependence function to the simplex:
// lambda(t) = L(t, 1-t). Concave, Lipschitz-1, 0 at both endpoints,
// bounded by min(t, 1-t). Stored either as a piecewise-linear function
// (knots in [0,1]) or in closed form (clayton family).
class AngularFunction {
 public:
  enum class Family {
    comonotone,       // min(t, 1-t)
    independence,     // 0
    clayton,          // (t^-a + (1-t)^-a)^(-1/a)
    linear_min,       // min(a t, b (1-t))
    plateau,          // min(t, p, 1-t)
    piecewise_linear,
    sampled,          // piecewise-linear after concave projection
  };

  static AngularFunction comonotone();
  static AngularFunction independence();
  static AngularFunction clayton(double alpha);  // alpha in (0, inf]
  static AngularFunction linear_min(double alpha, double beta);
  static AngularFunction plateau(double p);  // p in [0, 1/2]
  static AngularFunction piecewise_linear(std::vector<double> t,
                                          std::vector<double> v);
  // Values on the uniform grid over [0,1] (endpoints included). The input
  // is clipped to [0, min(t,1-t)] and replaced by its least concave
  // majorant, so quadrature-sampled curves re-enter the class.
  static AngularFunction from_samples(const std::vector<double>& values);

  Family family() const { return family_; }
  bool is_piecewise_linear() const { return family_ != Family::clayton; }
  bool is_sampled() const { return family_ == Family::sampled; }

  double operator()(double t) const;
  // One-sided slope; right by convention, left available explicitly.
  double derivative(double t, Side side = Side::right) const;
  double slope_at_zero() const { return derivative(0.0, Side::right); }
  double slope_at_one() const { return derivative(1.0, Side::left); }
  double max_value() const;

  AngularFunction transposed() const;  // t -> lambda(1-t)

  // Knot access; valid only when is_piecewise_linear().
  const std::vector<double>& knots() const;
  const std::vector<double>& knot_values() const;

  // Family parameters (meaningful for the closed-form families).
  double param_alpha() const { return alpha_; }
  double param_beta() const { return beta_; }
  double param_p() const { return p_; }

  // Grid checks of the class invariants: endpoint zeros, bounds,
  // concavity, slope range. `tol` defaults to 1e-9 for exact families and
  // 1e-6 for sampled ones when passed as 0.
  ValidationReport validate(int grid_n = 257, double tol = 0.0) const;

 private:
  AngularFunction() = default;

  Family family_ = Family::independence;
  double alpha_ = 0.0, beta_ = 0.0, p_ = 0.0;
  std::vector<double> t_, v_;  // knots, values (piecewise-linear forms)

  double pl_value(double t) const;
  double pl_derivative(double t, Side side) const;
  double clayton_value(double t) const;
  double clayton_derivative(double t) const;
};

}  // namespace tailalg
