#pragma once

#include "tailalg/step_function.hpp"
#include "tailalg/tdf.hpp"

namespace tailalg {

// Kernel-backed substochastic operator:
//   T_F f(x) = sum_i c_i [d1 F(x, b_i) - d1 F(x, a_i)]
// for step functions f = sum_i c_i 1_{[a_i, b_i)}, the tail piece using
// the saturated derivative d1 F(x, inf).
class SubstochasticOperator {
 public:
  explicit SubstochasticOperator(SubdistributionFunction kernel)
      : kernel_(std::move(kernel)) {}

  const SubdistributionFunction& kernel() const { return kernel_; }

  double operator()(const StepFunction& f, double x) const;

  // T_F f as a step function: exact when the kernel has an exact
  // piecewise-linear representation, otherwise sampled on the merged
  // breakpoint grid with `refine`-fold subdivision.
  StepFunction materialize(const StepFunction& f, int refine = 4) const;

  SubstochasticOperator adjoint() const {
    return SubstochasticOperator(kernel_.transposed());
  }

 private:
  SubdistributionFunction kernel_;
};

double apply_operator(const SubdistributionFunction& kernel,
                      const StepFunction& f, double x);

// F_T(x, y) = int_0^x T 1_{[0,y)}(s) ds, rebuilt by quadrature. The
// saturation parameters bound the generic backing's constancy region.
SubdistributionFunction operator_to_subdistribution(
    const SubstochasticOperator& t, double sat_x = 1e6, double sat_y = 1e6);

struct ComposeCheck {
  double lhs = 0.0;  // operator of the product kernel, applied directly
  double rhs = 0.0;  // composition of the two operators
  double defect = 0.0;
};
ComposeCheck compose_check(const SubdistributionFunction& f,
                           const SubdistributionFunction& g,
                           const StepFunction& vec, double x);

struct AdjointPairing {
  double lhs = 0.0;  // <T_F f, g>
  double rhs = 0.0;  // <f, T_{F^T} g>
};
// Requires g compactly supported; inner products are exact piecewise sums.
AdjointPairing adjoint_pairing(const SubdistributionFunction& kernel,
                               const StepFunction& f, const StepFunction& g);

// T_F and its adjoint both preserve constants and integrals.
bool is_markov_operator(const SubdistributionFunction& kernel, double tol);

// |T_F (f o sigma)(x) - (T_F f)(x / s)| for the dilation sigma(x) = x / s;
// zero exactly when the kernel is positively homogeneous.
double equivariance_defect(const SubdistributionFunction& kernel,
                           const StepFunction& f, double s, double x);

// Exact integral of the product of two step functions; at least one must
// be compactly supported.
double inner_product(const StepFunction& a, const StepFunction& b);

}  // namespace tailalg
