#include "tailalg/iterates.hpp"

#include <algorithm>
#include <cmath>

namespace tailalg {
namespace {

double sup_distance_to_bound(const AngularFunction& a, int grid_n = 513) {
  double m = 0.0;
  for (int j = 0; j < grid_n; ++j) {
    const double u = static_cast<double>(j) / (grid_n - 1);
    m = std::max(m, std::min(u, 1.0 - u) - a(u));
  }
  if (a.is_piecewise_linear()) {
    for (double t : a.knots()) {
      m = std::max(m, std::min(t, 1.0 - t) - a(t));
    }
  }
  return m;
}

IterateTrace make_trace(int n, const AngularFunction& a) {
  IterateTrace t;
  t.n = n;
  t.sup_norm = a.max_value();
  t.dist_to_null = t.sup_norm;
  t.dist_to_comonotone = sup_distance_to_bound(a);
  return t;
}

// binom(n, l) * p^n without overflow for moderate n.
double plateau_weight(int n, int l, double p) {
  if (n <= 60) {
    double b = 1.0;
    for (int i = 0; i < l; ++i) b = b * (n - i) / (i + 1);
    return b * std::pow(p, n);
  }
  const double lb = std::lgamma(n + 1.0) - std::lgamma(l + 1.0) -
                    std::lgamma(n - l + 1.0);
  return std::exp(lb + n * std::log(p));
}

}  // namespace

std::vector<TailDependenceFunction> iterate_sequence(
    const TailDependenceFunction& l, int n, std::vector<IterateTrace>* trace) {
  if (n < 1) throw DomainError("iterate_sequence: n must be at least 1");
  std::vector<TailDependenceFunction> seq;
  seq.push_back(l);
  if (trace) trace->push_back(make_trace(1, l.angular()));
  for (int k = 2; k <= n; ++k) {
    auto r = star_product(seq.back(), l);
    seq.push_back(r.to_tdf());
    if (trace) trace->push_back(make_trace(k, seq.back().angular()));
  }
  return seq;
}

ProductResult iterate_n(const TailDependenceFunction& l, int n) {
  if (n < 1) throw DomainError("iterate_n: n must be at least 1");
  if (n == 1) {
    auto eval = [l](std::span<const double> w) { return l(w[0], w[1]); };
    std::optional<AngularFunction> ang;
    if (l.angular().is_piecewise_linear()) ang = l.angular();
    return ProductResult(2, ProductResult::Method::exact, true, std::move(eval),
                         std::move(ang));
  }
  auto seq = iterate_sequence(l, n - 1);
  return star_product(seq.back(), l);
}

double lambda_p_value(double p, int n, double w1, double w2) {
  if (!(p >= 0.0 && p <= 0.5)) throw DomainError("lambda_p_value: p outside [0, 1/2]");
  if (n < 0) throw DomainError("lambda_p_value: n must be nonnegative");
  if (w1 < 0.0 || w2 < 0.0) throw DomainError("lambda_p_value: negative component");
  if (p == 0.0) return 0.0;
  const TailDependenceFunction plateau{AngularFunction::plateau(p)};
  const double q = (1.0 - p) / p;
  double total = 0.0;
  for (int l = 0; l <= n; ++l) {
    total += plateau_weight(n, l, p) *
             plateau(std::pow(q, n - l) * w1, std::pow(q, l) * w2);
  }
  return total;
}

ProductResult cesaro_mean(const TailDependenceFunction& l, int n) {
  if (n < 1) throw DomainError("cesaro_mean: n must be at least 1");
  auto seq = iterate_sequence(l, n);
  const bool all_pl = std::all_of(seq.begin(), seq.end(), [](const auto& f) {
    return f.angular().is_piecewise_linear();
  });
  std::optional<AngularFunction> ang;
  if (all_pl) {
    // The average of piecewise-linear functions is piecewise-linear on the
    // union of the knot sets.
    std::vector<double> knots;
    for (const auto& f : seq) {
      const auto& k = f.angular().knots();
      knots.insert(knots.end(), k.begin(), k.end());
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> vals(knots.size(), 0.0);
    for (const auto& f : seq) {
      for (std::size_t j = 0; j < knots.size(); ++j) {
        vals[j] += f.angular()(knots[j]) / n;
      }
    }
    ang = AngularFunction::piecewise_linear(std::move(knots), std::move(vals));
  }
  auto fs = std::make_shared<std::vector<TailDependenceFunction>>(std::move(seq));
  auto eval = [fs](std::span<const double> w) {
    double s = 0.0;
    for (const auto& f : *fs) s += f(w[0], w[1]);
    return s / static_cast<double>(fs->size());
  };
  const auto method = all_pl ? ProductResult::Method::exact
                             : ProductResult::Method::quadrature;
  return ProductResult(2, method, true, std::move(eval), std::move(ang));
}

LimitClassification classify_limit(const TailDependenceFunction& l, double tol,
                                   int n_max) {
  if (!(tol > 0.0)) throw DomainError("classify_limit: tol must be positive");
  if (n_max < 1) throw DomainError("classify_limit: n_max must be positive");
  LimitClassification out;
  if (sup_distance_to_bound(l.angular()) < 1e-9) {
    out.comonotone = true;
    out.converged = true;
    return out;
  }
  // Dominate by the plateau function at the peak value; its iterates have
  // a closed form whose sup sits at the midpoint, giving a certified bound.
  const double p = std::min(l.angular().max_value(), 0.5 - 1e-12);
  if (p <= 0.0) {
    out.converged = true;  // the null function is already at the limit
    return out;
  }
  for (int n = 1; n <= n_max; ++n) {
    const double bound = lambda_p_value(p, n - 1, 0.5, 0.5);
    out.trace.emplace_back(n, bound);
    out.n_reached = n;
    if (bound < tol) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

bool is_idempotent(const TailDependenceFunction& l, double tol) {
  if (!(tol > 0.0)) throw DomainError("is_idempotent: tol must be positive");
  auto r = star_product(l, l);
  const int grid_n = 257;
  for (int j = 0; j < grid_n; ++j) {
    const double u = static_cast<double>(j) / (grid_n - 1);
    if (std::abs(r(u, 1.0 - u) - l(u, 1.0 - u)) > tol) return false;
  }
  return true;
}

}  // namespace tailalg
