#include "tailalg/product.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace tailalg {
namespace {

// d1 L(t, 0) vanishes identically; guard so endpoint evaluations do not
// probe the derivative at the origin.
double d1_or_zero(const TailDependenceFunction& f, double t, double w) {
  if (w == 0.0) return 0.0;
  return f.partial(1, t, w);
}

double d1_or_zero(const SubdistributionFunction& f, double t, double w) {
  if (w == 0.0) return 0.0;
  return f.partial(1, t, w);
}

// Merge, sort, and deduplicate edge lists (relative tolerance 1e-12, so
// coincident kink rays do not spawn zero-width pieces).
std::vector<double> merge_edges(std::vector<double> e) {
  std::sort(e.begin(), e.end());
  std::vector<double> out;
  for (double x : e) {
    if (!out.empty() && x - out.back() <= 1e-12 * std::max(1.0, x)) continue;
    out.push_back(x);
  }
  return out;
}

// Exact integral of C over the merged step functions d1 L_i(., w_i),
// truncated at `cap`. The integrand is piecewise constant and vanishes
// beyond the shortest factor support, so plain summation is exact.
double exact_value(const Copula& c,
                   const std::vector<TailDependenceFunction>& factors,
                   std::span<const double> w, double cap) {
  const std::size_t d = factors.size();
  std::vector<StepFunction> steps;
  steps.reserve(d);
  std::vector<double> edges;
  for (std::size_t i = 0; i < d; ++i) {
    steps.push_back(factors[i].partial1_steps(w[i]));
    const auto& e = steps.back().edges();
    edges.insert(edges.end(), e.begin(), e.end());
  }
  edges = merge_edges(std::move(edges));
  std::vector<double> args(d);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double lo = edges[j];
    const double hi = std::min(edges[j + 1], cap);
    if (hi <= lo) break;
    const double mid = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < d; ++i) args[i] = steps[i](mid);
    total += c(args) * (hi - lo);
  }
  return total;
}

std::vector<double> interior_rays(const TailDependenceFunction& f) {
  const auto& t = f.angular().knots();
  std::vector<double> rays;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    rays.push_back(t[i] / (1.0 - t[i]));
  }
  return rays;
}

// Exact angular restriction for a bivariate exact-path product. Between
// crossings of the two factors' kink rays the edge ordering is fixed, so
// the product is linear in the angular parameter; candidate knots are the
// crossing points u = b/(a+b).
std::optional<AngularFunction> exact_angular(
    const Copula& c, const std::vector<TailDependenceFunction>& factors) {
  const auto a = interior_rays(factors[0]);
  const auto b = interior_rays(factors[1]);
  if ((a.size() + 1) * (b.size() + 1) > kExactBreakpointCap) return std::nullopt;
  std::vector<double> cand{0.0, 1.0};
  for (double x : a) {
    for (double y : b) cand.push_back(y / (x + y));
  }
  cand = merge_edges(std::move(cand));
  if (cand.back() < 1.0) cand.push_back(1.0);
  std::vector<double> vals(cand.size());
  for (std::size_t j = 0; j < cand.size(); ++j) {
    const double w[2] = {cand[j], 1.0 - cand[j]};
    vals[j] = exact_value(c, factors, w, std::numeric_limits<double>::infinity());
  }
  return AngularFunction::piecewise_linear(std::move(cand), std::move(vals));
}

bool exactable(const Copula& c,
               const std::vector<TailDependenceFunction>& factors) {
  if (!c.closed_form()) return false;
  return std::all_of(factors.begin(), factors.end(), [](const auto& f) {
    return f.angular().is_piecewise_linear();
  });
}

ProductResult make_generalized(const Copula& c,
                               std::vector<TailDependenceFunction> factors,
                               bool exact_only) {
  const int d = c.arity();
  if (static_cast<int>(factors.size()) != d) {
    throw DomainError("generalized product: factor count must match copula arity");
  }
  if (exactable(c, factors)) {
    auto fs = std::make_shared<std::vector<TailDependenceFunction>>(std::move(factors));
    auto eval = [c, fs](std::span<const double> w) {
      return exact_value(c, *fs, w, std::numeric_limits<double>::infinity());
    };
    std::optional<AngularFunction> ang;
    if (d == 2) ang = exact_angular(c, *fs);
    return ProductResult(d, ProductResult::Method::exact, true, std::move(eval),
                         std::move(ang));
  }
  if (exact_only) {
    throw UnsupportedRepresentation(
        "exact product path requires piecewise-linear factors and a "
        "closed-form copula");
  }
  auto fs = std::make_shared<std::vector<TailDependenceFunction>>(std::move(factors));
  auto eval = [c, fs, d](std::span<const double> w) {
    std::vector<double> hints;
    for (int i = 0; i < d; ++i) {
      auto k = (*fs)[i].partial1_kinks(w[i]);
      hints.insert(hints.end(), k.begin(), k.end());
    }
    std::vector<double> args(static_cast<std::size_t>(d));
    auto g = [&, args](double t) mutable {
      for (int i = 0; i < d; ++i) args[i] = d1_or_zero((*fs)[i], t, w[i]);
      return c(args);
    };
    auto r = integrate_halfline(g, {}, hints);
    return r.value;
  };
  return ProductResult(d, ProductResult::Method::quadrature, true, std::move(eval));
}

}  // namespace

ProductResult::ProductResult(int arity, Method method, bool homogeneous,
                             std::function<double(std::span<const double>)> eval,
                             std::optional<AngularFunction> angular)
    : arity_(arity),
      method_(method),
      homogeneous_(homogeneous),
      eval_(std::move(eval)),
      angular_(std::move(angular)) {}

double ProductResult::operator()(std::span<const double> w) const {
  if (static_cast<int>(w.size()) != arity_) {
    throw DomainError("product result: argument dimension mismatch");
  }
  for (double x : w) {
    if (x < 0.0) throw DomainError("product result: negative component");
  }
  if (angular_ && arity_ == 2) {
    const double s = w[0] + w[1];
    return s == 0.0 ? 0.0 : s * (*angular_)(w[0] / s);
  }
  return eval_(w);
}

double ProductResult::operator()(double w1, double w2) const {
  const double w[2] = {w1, w2};
  return (*this)(w);
}

const AngularFunction& ProductResult::exact_angular() const {
  if (!angular_) throw DomainError("no exact angular representation");
  return *angular_;
}

AngularFunction ProductResult::angular(int grid_n) const {
  if (arity_ != 2 || !homogeneous_) {
    throw DomainError("angular restriction needs a homogeneous bivariate result");
  }
  if (angular_) return *angular_;
  if (grid_n < 3) throw DomainError("angular: grid too small");
  std::vector<double> v(static_cast<std::size_t>(grid_n));
  for (int j = 0; j < grid_n; ++j) {
    const double u = static_cast<double>(j) / (grid_n - 1);
    v[j] = (*this)(u, 1.0 - u);
  }
  return AngularFunction::from_samples(v);
}

TailDependenceFunction ProductResult::to_tdf(int grid_n) const {
  return TailDependenceFunction(angular(grid_n));
}

ProductResult star_product(const TailDependenceFunction& l1,
                           const TailDependenceFunction& l2) {
  return generalized_product(Copula::product(2), {l1.transposed(), l2});
}

ProductResult star_product(const SubdistributionFunction& f,
                           const SubdistributionFunction& g) {
  if (f.homogeneous() && g.homogeneous()) {
    auto r = star_product(f.tdf(), g.tdf());
    if (r.method() == ProductResult::Method::exact) return r;
  }
  const SubdistributionFunction ft = f.transposed();
  const bool hom = f.homogeneous() && g.homogeneous();
  auto eval = [ft, g](std::span<const double> w) {
    const double w1 = w[0], w2 = w[1];
    auto integrand = [&](double t) {
      return d1_or_zero(ft, t, w1) * d1_or_zero(g, t, w2);
    };
    std::vector<double> hints = ft.partial1_kinks(w1);
    auto k = g.partial1_kinks(w2);
    hints.insert(hints.end(), k.begin(), k.end());
    return integrate_halfline(integrand, {}, hints).value;
  };
  return ProductResult(2, ProductResult::Method::quadrature, hom, std::move(eval));
}

ProductResult generalized_product(const Copula& c,
                                  std::vector<TailDependenceFunction> factors) {
  return make_generalized(c, std::move(factors), false);
}

ProductResult exact_pl_product(const Copula& c,
                               std::vector<TailDependenceFunction> factors) {
  return make_generalized(c, std::move(factors), true);
}

ProductResult lifting(const Copula& c,
                      std::vector<TailDependenceFunction> factors) {
  const int d = c.arity();
  if (static_cast<int>(factors.size()) != d) {
    throw DomainError("lifting: factor count must match copula arity");
  }
  auto fs = std::make_shared<std::vector<TailDependenceFunction>>(std::move(factors));
  if (exactable(c, *fs)) {
    auto eval = [c, fs](std::span<const double> w) {
      return exact_value(c, *fs, w.subspan(1), w[0]);
    };
    return ProductResult(d + 1, ProductResult::Method::exact, true, std::move(eval));
  }
  auto eval = [c, fs, d](std::span<const double> w) {
    const double cap = w[0];
    std::vector<double> hints;
    for (int i = 0; i < d; ++i) {
      auto k = (*fs)[i].partial1_kinks(w[i + 1]);
      hints.insert(hints.end(), k.begin(), k.end());
    }
    std::vector<double> args(static_cast<std::size_t>(d));
    auto g = [&, args](double t) mutable {
      for (int i = 0; i < d; ++i) args[i] = d1_or_zero((*fs)[i], t, w[i + 1]);
      return c(args);
    };
    return integrate_interval(g, 0.0, cap, {}, hints).value;
  };
  return ProductResult(d + 1, ProductResult::Method::quadrature, true,
                       std::move(eval));
}

}  // namespace tailalg
