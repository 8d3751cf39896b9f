#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tailalg/numerics.hpp"
#include "tailalg/tdf.hpp"

namespace tailalg {

// d-variate copula. Parametric families evaluate in closed form; product
// and lifted compositions evaluate lazily by quadrature when probed.
class Copula {
 public:
  enum class Family {
    lower_frechet,  // max(u+v-1, 0), bivariate only
    product,
    upper_frechet,
    clayton,      // (u^-t + v^-t - 1)^(-1/t), bivariate
    ev_survival,  // survival copula of the extreme-value copula of L
    markov_product,
    lifted,
  };

  static Copula lower_frechet();
  static Copula product(int arity = 2);
  static Copula upper_frechet(int arity = 2);
  static Copula clayton(double theta);
  static Copula ev_survival(AngularFunction angular);
  static Copula markov_product(Copula left, Copula right);
  // (d+1)-variate: first coordinate is the integration cap of the lifting.
  static Copula lifted(Copula base, std::vector<Copula> factors);

  Family family() const;
  int arity() const;

  double operator()(std::span<const double> u) const;
  double operator()(double u, double v) const;

  // One-sided partial derivative for bivariate copulas; closed form where
  // available, central finite differences otherwise. Kinks follow the
  // right-derivative convention.
  double partial(int index, double u, double v) const;

  // Jump locations of u -> partial(1, u, v), used as quadrature hints.
  std::vector<double> partial1_kinks(double v) const;

  bool closed_form() const;  // evaluation free of quadrature

  Copula transposed() const;  // bivariate argument swap

  // Tail extraction: C(s*w)/s along the schedule.
  LimitResult extract_tail(double w1, double w2,
                           const LimitSchedule& schedule = {}) const;

  // Family parameters.
  double theta() const;
  const TailDependenceFunction& ev_tdf() const;
  const Copula& left() const;
  const Copula& right() const;
  const Copula& base() const;
  std::vector<Copula> factors() const;

 private:
  struct Node;
  explicit Copula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct SobolevReport {
  std::vector<std::pair<double, double>> defects;  // (scale, L1 defect)
  bool decreasing = false;
};

// Truncated L1 distance between the rescaled copula derivative and the
// claimed limit derivative, swept over the schedule scales. The defect at
// scale s is
//   int_0^{1/s} |d1 C(s t, s w) - d1 L(t, w)| dt + (lim_T L(T,w) - L(1/s, w)),
// the second term accounting for the mass of d1 L beyond the truncation.
SobolevReport sobolev_diagnostic(const Copula& c,
                                 const TailDependenceFunction& tdf, double w,
                                 const LimitSchedule& schedule = {});

}  // namespace tailalg
