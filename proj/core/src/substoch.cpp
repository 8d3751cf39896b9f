#include "tailalg/substoch.hpp"

#include <algorithm>
#include <cmath>

#include "tailalg/product.hpp"

namespace tailalg {
namespace {

double partial1_or_zero(const SubdistributionFunction& kernel, double x,
                        double y) {
  if (y == 0.0) return 0.0;  // F(., 0) vanishes identically
  return kernel.partial(1, x, y);
}

// integral of (T_kernel f)(x) g(x) dx, exact over g's pieces and adaptive
// in x; avoids the resolution floor of the sampled materialization
double pair_apply(const SubdistributionFunction& kernel, const StepFunction& f,
                  const StepFunction& g) {
  auto tf = [&](double x) { return apply_operator(kernel, f, x); };
  std::vector<double> hints = f.edges();
  for (double y : f.edges()) {
    auto k = kernel.partial1_kinks(y);
    hints.insert(hints.end(), k.begin(), k.end());
  }
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;  // borderline t^-2 decay can exhaust the default budget
  const auto& e = g.edges();
  const auto& v = g.values();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    total += v[i] * integrate_interval(tf, e[i], e[i + 1], cfg, hints).value;
  }
  if (g.tail() != 0.0) {
    auto shifted = [&](double t) { return tf(e.back() + t); };
    total += g.tail() * integrate_halfline(shifted, cfg).value;
  }
  return total;
}

}  // namespace

double apply_operator(const SubdistributionFunction& kernel,
                      const StepFunction& f, double x) {
  if (x < 0.0) throw DomainError("apply_operator: negative point");
  const auto& e = f.edges();
  const auto& v = f.values();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    total += v[i] * (partial1_or_zero(kernel, x, e[i + 1]) -
                     partial1_or_zero(kernel, x, e[i]));
  }
  if (f.tail() != 0.0) {
    total += f.tail() * (kernel.partial1_at_infinity(x) -
                         partial1_or_zero(kernel, x, e.back()));
  }
  return total;
}

double SubstochasticOperator::operator()(const StepFunction& f,
                                         double x) const {
  return apply_operator(kernel_, f, x);
}

StepFunction SubstochasticOperator::materialize(const StepFunction& f,
                                                int refine) const {
  if (refine < 1) throw DomainError("materialize: refine must be positive");
  const auto& e = f.edges();
  const auto& v = f.values();
  if (kernel_.has_exact_steps()) {
    // x -> d1 F(x, y) is the exact step function partial1_steps(y);
    // assemble T_F f from those by linearity.
    StepFunction out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0.0) continue;
      out = out + kernel_.partial1_steps(e[i + 1]).scaled(v[i]);
      if (e[i] > 0.0) out = out + kernel_.partial1_steps(e[i]).scaled(-v[i]);
    }
    if (f.tail() != 0.0) {
      const double c = kernel_.tdf().angular().slope_at_zero();
      out = out + StepFunction::constant(c * f.tail());
      out = out + kernel_.partial1_steps(e.back()).scaled(-f.tail());
    }
    return out;
  }
  // Sampled fallback: merged breakpoints of f and the kernel's kink rays,
  // refined, extended past the support to capture the decaying remainder.
  std::vector<double> base = e;
  for (double y : e) {
    auto k = kernel_.partial1_kinks(y);
    base.insert(base.end(), k.begin(), k.end());
  }
  const double reach = 8.0 * std::max(1.0, f.support_end());
  base.push_back(reach);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<double> grid{0.0};
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    for (int r = 1; r <= refine; ++r) {
      grid.push_back(base[i] + (base[i + 1] - base[i]) * r / refine);
    }
  }
  std::vector<double> vals;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    vals.push_back((*this)(f, 0.5 * (grid[i] + grid[i + 1])));
  }
  double tail = 0.0;
  if (f.tail() != 0.0) tail = (*this)(f, 4.0 * reach);
  return StepFunction(std::move(grid), std::move(vals), tail);
}

SubdistributionFunction operator_to_subdistribution(
    const SubstochasticOperator& t, double sat_x, double sat_y) {
  auto eval = [t](double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;
    const StepFunction ind = StepFunction::indicator(0.0, y);
    auto g = [&](double s) { return t(ind, s); };
    std::vector<double> hints = t.kernel().partial1_kinks(y);
    return integrate_interval(g, 0.0, x, {}, hints).value;
  };
  return SubdistributionFunction::generic(std::move(eval), sat_x, sat_y);
}

ComposeCheck compose_check(const SubdistributionFunction& f,
                           const SubdistributionFunction& g,
                           const StepFunction& vec, double x) {
  auto product = star_product(f, g);
  SubdistributionFunction kernel = [&] {
    if (product.homogeneous()) {
      return SubdistributionFunction::from_tdf(product.to_tdf());
    }
    auto eval = [product](double a, double b) { return product(a, b); };
    return SubdistributionFunction::generic(std::move(eval),
                                            f.saturation_x(),
                                            g.saturation_y());
  }();
  ComposeCheck out;
  out.lhs = apply_operator(kernel, vec, x);
  const StepFunction inner = SubstochasticOperator(g).materialize(vec);
  out.rhs = apply_operator(f, inner, x);
  out.defect = std::abs(out.lhs - out.rhs);
  return out;
}

double inner_product(const StepFunction& a, const StepFunction& b) {
  if (a.tail() != 0.0 && b.tail() != 0.0) {
    throw DomainError("inner_product: needs a compactly supported argument");
  }
  std::vector<double> e;
  e.insert(e.end(), a.edges().begin(), a.edges().end());
  e.insert(e.end(), b.edges().begin(), b.edges().end());
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const double mid = 0.5 * (e[i] + e[i + 1]);
    total += a(mid) * b(mid) * (e[i + 1] - e[i]);
  }
  return total;  // beyond the last edge one factor is identically zero
}

AdjointPairing adjoint_pairing(const SubdistributionFunction& kernel,
                               const StepFunction& f, const StepFunction& g) {
  if (!g.compactly_supported()) {
    throw DomainError("adjoint_pairing: g must be compactly supported");
  }
  AdjointPairing out;
  out.lhs = pair_apply(kernel, f, g);
  out.rhs = pair_apply(kernel.transposed(), g, f);
  return out;
}

bool is_markov_operator(const SubdistributionFunction& kernel, double tol) {
  if (!(tol > 0.0)) throw DomainError("is_markov_operator: tol must be positive");
  const double xs[] = {0.25, 0.7, 1.3, 2.5};
  const double ys[] = {0.5, 1.0, 2.0};
  for (const SubdistributionFunction& k : {kernel, kernel.transposed()}) {
    for (double x : xs) {
      if (std::abs(k.partial1_at_infinity(x) - 1.0) > tol) return false;
    }
    for (double y : ys) {
      const double mass = k.homogeneous()
                              ? k.tdf().second_margin_limit(y)
                              : k(k.saturation_x(), y);
      if (std::abs(mass - y) > tol * std::max(1.0, y)) return false;
    }
  }
  return true;
}

double equivariance_defect(const SubdistributionFunction& kernel,
                           const StepFunction& f, double s, double x) {
  if (!(s > 0.0)) throw DomainError("equivariance_defect: s must be positive");
  // (f o sigma)(t) = f(t / s), the dilation of f by s.
  const double lhs = apply_operator(kernel, f.dilated(s), x);
  const double rhs = apply_operator(kernel, f, x / s);
  return std::abs(lhs - rhs);
}

}  // namespace tailalg
