#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tailalg/copula.hpp"
#include "tailalg/tdf.hpp"

namespace tailalg {

class UnsupportedRepresentation : public DomainError {
 public:
  using DomainError::DomainError;
};

// Result of a Markov-type product: a d-variate evaluator plus, when the
// operands were piecewise-linear and the inducing copula evaluates in
// closed form, an exact piecewise-linear angular representation (d = 2).
class ProductResult {
 public:
  enum class Method { exact, quadrature };

  ProductResult(int arity, Method method, bool homogeneous,
                std::function<double(std::span<const double>)> eval,
                std::optional<AngularFunction> angular = std::nullopt);

  int arity() const { return arity_; }
  Method method() const { return method_; }
  bool homogeneous() const { return homogeneous_; }

  double operator()(std::span<const double> w) const;
  double operator()(double w1, double w2) const;

  bool has_exact_angular() const { return angular_.has_value(); }
  const AngularFunction& exact_angular() const;

  // Angular restriction: exact when available, otherwise sampled on a
  // uniform grid and re-projected onto the concave class. Homogeneous
  // bivariate results only.
  AngularFunction angular(int grid_n = 513) const;
  TailDependenceFunction to_tdf(int grid_n = 513) const;

 private:
  int arity_;
  Method method_;
  bool homogeneous_;
  std::function<double(std::span<const double>)> eval_;
  std::optional<AngularFunction> angular_;
};

// (F * G)(w1, w2) = integral over t of d2 F(w1, t) * d1 G(t, w2).
ProductResult star_product(const SubdistributionFunction& f,
                           const SubdistributionFunction& g);
ProductResult star_product(const TailDependenceFunction& l1,
                           const TailDependenceFunction& l2);

// phi_C: w -> integral over t of C(d1 L_1(t, w_1), ..., d1 L_d(t, w_d)).
ProductResult generalized_product(const Copula& c,
                                  std::vector<TailDependenceFunction> factors);

// The C-lifting: (d+1)-variate, the first coordinate capping the integral.
ProductResult lifting(const Copula& c,
                      std::vector<TailDependenceFunction> factors);

// Exact path only; throws UnsupportedRepresentation unless every factor is
// piecewise-linear and the copula evaluates in closed form.
ProductResult exact_pl_product(const Copula& c,
                               std::vector<TailDependenceFunction> factors);

// Breakpoint budget before exact products fall back to sampled angular
// representations.
inline constexpr std::size_t kExactBreakpointCap = 10000;

}  // namespace tailalg
