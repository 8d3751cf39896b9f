#pragma once

#include <utility>
#include <vector>

#include "tailalg/product.hpp"
#include "tailalg/tdf.hpp"

namespace tailalg {

struct IterateTrace {
  int n = 0;
  double sup_norm = 0.0;            // sup of the angular function
  double dist_to_null = 0.0;        // equals sup_norm
  double dist_to_comonotone = 0.0;  // sup distance to min(t, 1-t)
};

// Iterates L, L*L, ..., L^{*n} (n entries). Stays on the exact
// piecewise-linear path while the breakpoint budget allows, then switches
// to sampled angular representations.
std::vector<TailDependenceFunction> iterate_sequence(
    const TailDependenceFunction& l, int n,
    std::vector<IterateTrace>* trace = nullptr);

// The n-th iterate as a product result.
ProductResult iterate_n(const TailDependenceFunction& l, int n);

// Closed form for the (n+1)-th iterate of the plateau family
// min(t, p, 1-t):
//   p^n * sum_l binom(n, l) L(q^(n-l) w1, q^l w2),  q = (1-p)/p.
double lambda_p_value(double p, int n, double w1, double w2);

// Pointwise average of the iterates 1..n.
ProductResult cesaro_mean(const TailDependenceFunction& l, int n);

struct LimitClassification {
  bool comonotone = false;  // limit is min(w1, w2); otherwise the limit is 0
  int n_reached = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> trace;  // (n, certified sup bound)
};

// Limit of the iterates: min(w1, w2) for the comonotone function, 0 for
// everything else. The n reported for the null case is certified by
// dominating L with the plateau function at p = max angular value and
// driving the closed-form bound below tol.
LimitClassification classify_limit(const TailDependenceFunction& l,
                                   double tol = 1e-3, int n_max = 1000);

bool is_idempotent(const TailDependenceFunction& l, double tol = 1e-4);

}  // namespace tailalg
