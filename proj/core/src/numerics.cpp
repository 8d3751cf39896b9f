#include "tailalg/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace tailalg {
namespace {

struct AdaptiveState {
  const std::function<double(double)>* g;
  double tol;
  int budget;
  double residual = 0.0;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(AdaptiveState& st, double a, double b, double fa, double fm,
             double fb, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*st.g)(lm);
  const double frm = (*st.g)(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= st.tol * std::max(1e-300, (b - a)) ||
      depth >= 52 || st.budget <= 0) {
    st.residual += std::abs(err);
    if (st.budget <= 0 && std::abs(err) > st.tol * (b - a)) {
      throw NumericError("quadrature subdivision budget exhausted",
                         st.residual + std::abs(err));
    }
    return left + right + err;
  }
  st.budget -= 2;
  return adapt(st, a, m, fa, flm, fm, left, depth + 1) +
         adapt(st, m, b, fm, frm, fb, right, depth + 1);
}

QuadratureResult integrate_piece(const std::function<double(double)>& g,
                                 double a, double b, double tol_per_len,
                                 int& budget) {
  if (!(b > a)) return {0.0, 0.0};
  AdaptiveState st{&g, tol_per_len, budget, 0.0};
  const double fa = g(a);
  const double fb = g(b);
  const double fm = g(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  const double v = adapt(st, a, b, fa, fm, fb, whole, 0);
  budget = st.budget;
  return {v, st.residual};
}

std::vector<double> interior_hints(std::span<const double> hints, double a,
                                   double b) {
  std::vector<double> h(hints.begin(), hints.end());
  std::erase_if(h, [&](double x) { return !(x > a) || !(x < b); });
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& g,
                                    double a, double b,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> hints) {
  if (cfg.abs_tol <= 0.0 || cfg.max_subdivisions < 8) {
    throw DomainError("invalid quadrature config");
  }
  if (!(b > a)) return {0.0, 0.0};
  std::vector<double> cuts = interior_hints(hints, a, b);
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);

  QuadratureResult total;
  int budget = cfg.max_subdivisions;
  const double len = b - a;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double tol = cfg.abs_tol / len;  // tolerance density per length
    auto piece = integrate_piece(g, cuts[i], cuts[i + 1], tol, budget);
    total.value += piece.value;
    total.residual += piece.residual;
  }
  return total;
}

QuadratureResult integrate_halfline(const std::function<double(double)>& g,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> hints) {
  if (cfg.abs_tol <= 0.0 || cfg.max_subdivisions < 8) {
    throw DomainError("invalid quadrature config");
  }
  double head_end = 1.0;
  std::vector<double> cuts(hints.begin(), hints.end());
  std::erase_if(cuts, [](double x) { return !(x > 0.0); });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (!cuts.empty()) head_end = std::max(head_end, cuts.back());

  QuadratureResult total = integrate_interval(g, 0.0, head_end, cfg, cuts);

  if (!cfg.compactify) return total;

  // Tail: t = u/(1-u) maps [u0, 1) onto [head_end, inf).
  const double u0 = head_end / (1.0 + head_end);
  const double u_cap = 1.0 - 1e-10;
  auto transformed = [&](double u) {
    const double om = 1.0 - u;
    const double t = u / om;
    return g(t) / (om * om);
  };
  if (u_cap > u0) {
    auto tail = integrate_interval(transformed, u0, u_cap, cfg, {});
    total.value += tail.value;
    total.residual += tail.residual;
  }
  // Truncation beyond t = u_cap/(1-u_cap) ~ 1e10, estimated assuming
  // decay at least of order t^-2.
  const double t_cap = u_cap / (1.0 - u_cap);
  total.residual += std::abs(g(t_cap)) * t_cap;
  return total;
}

LimitResult extrapolate_limit(const std::function<double(double)>& h,
                              const LimitSchedule& schedule) {
  if (!schedule.valid()) throw DomainError("invalid limit schedule");
  LimitResult res;
  double s = schedule.s0;
  int stalls = 0;
  for (int k = 0; k < schedule.max_steps; ++k) {
    const double v = h(s);
    if (!res.trace.empty() &&
        std::abs(v - res.trace.back().second) < schedule.stall_tol) {
      ++stalls;
    } else {
      stalls = 0;
    }
    res.trace.emplace_back(s, v);
    res.value = v;
    if (stalls >= 2) {
      res.converged = true;
      return res;
    }
    s *= schedule.ratio;
  }
  return res;
}

DerivativeEstimate one_sided_derivative(const std::function<double(double)>& f,
                                        double x, Side side,
                                        const DiffSchedule& schedule) {
  const double f0 = f(x);
  const double sign = side == Side::right ? 1.0 : -1.0;
  std::vector<double> d;
  double h = schedule.h0;
  for (int k = 0; k < schedule.steps; ++k) {
    d.push_back(sign * (f(x + sign * h) - f0) / h);
    h *= schedule.ratio;
  }
  // Richardson for first-order quotients with geometric step ratio r:
  // d(h) = f' + c h + O(h^2)  =>  (d(rh) - r d(h)) / (1 - r) kills c.
  const double r = schedule.ratio;
  std::vector<double> refined;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    refined.push_back((d[k + 1] - r * d[k]) / (1.0 - r));
  }
  if (refined.size() < 2) return {d.back(), std::abs(d.back())};
  const double best = refined.back();
  return {best, std::abs(best - refined[refined.size() - 2])};
}

}  // namespace tailalg
