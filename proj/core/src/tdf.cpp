#include "tailalg/tdf.hpp"

#include <algorithm>
#include <cmath>

namespace tailalg {

double TailDependenceFunction::operator()(double w1, double w2) const {
  if (w1 < 0.0 || w2 < 0.0) {
    throw DomainError("tail dependence function: negative component");
  }
  const double s = w1 + w2;
  if (s == 0.0) return 0.0;
  return s * angular_(w1 / s);
}

double TailDependenceFunction::partial(int index, double w1, double w2) const {
  if (index != 1 && index != 2) throw DomainError("partial: index must be 1 or 2");
  if (w1 < 0.0 || w2 < 0.0) {
    throw DomainError("tail dependence function: negative component");
  }
  const double s = w1 + w2;
  if (s == 0.0) throw DomainError("partial derivative at the origin");
  const double u = w1 / s;
  double v;
  if (index == 1) {
    // Right-derivative in w1 corresponds to the right slope in u.
    const Side side = u < 1.0 ? Side::right : Side::left;
    v = angular_(u) + (1.0 - u) * angular_.derivative(u, side);
  } else {
    // Right-derivative in w2 moves u left.
    const Side side = u > 0.0 ? Side::left : Side::right;
    v = angular_(u) - u * angular_.derivative(u, side);
  }
  return std::clamp(v, 0.0, 1.0);  // mathematically in [0,1]; clip rounding
}

StepFunction TailDependenceFunction::partial1_steps(double w2) const {
  if (!angular_.is_piecewise_linear()) {
    throw DomainError("partial1_steps: angular function is not piecewise-linear");
  }
  if (w2 < 0.0) throw DomainError("partial1_steps: negative w2");
  if (w2 == 0.0) return StepFunction();
  const auto& t = angular_.knots();
  const auto& v = angular_.knot_values();
  const std::size_t m = t.size() - 1;  // segment count
  // On the segment starting at knot i, d/dw1 L(t, w2) is constant:
  // v_i + (1 - t_i) * slope_i. The last segment extends linearly to 0 at
  // u = 1, so the function vanishes beyond the last interior ray.
  std::vector<double> edges{0.0};
  std::vector<double> values;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double s = (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
    values.push_back(std::clamp(v[i] + (1.0 - t[i]) * s, 0.0, 1.0));
    edges.push_back(w2 * t[i + 1] / (1.0 - t[i + 1]));
  }
  return StepFunction(std::move(edges), std::move(values), 0.0);
}

std::vector<double> TailDependenceFunction::partial1_kinks(double w2) const {
  if (w2 <= 0.0) return {};
  if (!angular_.is_piecewise_linear()) return {w2};
  const auto& t = angular_.knots();
  std::vector<double> kinks;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    kinks.push_back(w2 * t[i] / (1.0 - t[i]));
  }
  return kinks;
}

double TailDependenceFunction::first_margin_limit(double x) const {
  if (x < 0.0) throw DomainError("negative component");
  return x * angular_.slope_at_zero();
}

double TailDependenceFunction::second_margin_limit(double y) const {
  if (y < 0.0) throw DomainError("negative component");
  return y * (-angular_.slope_at_one());
}

StrictnessReport TailDependenceFunction::strictness(double tol) const {
  if (tol <= 0.0) throw DomainError("strictness: tol must be positive");
  StrictnessReport r;
  r.slope_zero = angular_.slope_at_zero();
  r.slope_one = angular_.slope_at_one();
  r.strict_first = std::abs(r.slope_zero - 1.0) <= tol;
  r.strict_second = std::abs(r.slope_one + 1.0) <= tol;
  return r;
}

ZeroOneClassification TailDependenceFunction::classify_zero_one(
    double tol, int grid_n) const {
  if (!(tol > 0.0 && tol < 0.5)) {
    throw DomainError("classify_zero_one: tol must lie in (0, 1/2)");
  }
  if (grid_n < 3) throw DomainError("classify_zero_one: grid_n too small");
  auto d1 = [&](double u) { return partial(1, u, 1.0 - u); };
  int last_one = -1;
  int first_zero = grid_n;
  for (int j = 0; j + 1 < grid_n; ++j) {
    const double u = static_cast<double>(j) / (grid_n - 1);
    const double d = d1(u);
    if (std::abs(d - 1.0) <= tol) {
      last_one = j;
    } else if (std::abs(d) <= tol) {
      first_zero = std::min(first_zero, j);
    } else {
      return {};
    }
  }
  ZeroOneClassification c;
  c.of_min_form = true;
  if (last_one < 0) {
    c.alpha = 0.0;  // derivative identically 0: the null function
    for (int j = 0; j < grid_n; ++j) {
      const double u = static_cast<double>(j) / (grid_n - 1);
      if (std::abs(angular_(u)) > tol) return {};
    }
    return c;
  }
  if (first_zero == grid_n) {
    c.alpha = 1.0;  // no zero region observed before u = 1
  } else {
    // d1 decreases along the simplex; locate the jump by bisection.
    double lo = static_cast<double>(last_one) / (grid_n - 1);
    double hi = static_cast<double>(first_zero) / (grid_n - 1);
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (d1(mid) > 0.5 ? lo : hi) = mid;
    }
    const double u = 0.5 * (lo + hi);
    c.alpha = u / (1.0 - u);
  }
  // Confirm the reconstruction against the angular function itself.
  for (int j = 0; j < grid_n; ++j) {
    const double u = static_cast<double>(j) / (grid_n - 1);
    if (std::abs(angular_(u) - std::min(u, c.alpha * (1.0 - u))) > tol) {
      return {};
    }
  }
  return c;
}

SubdistributionFunction SubdistributionFunction::from_tdf(
    TailDependenceFunction tdf) {
  SubdistributionFunction f;
  f.tdf_ = std::move(tdf);
  return f;
}

SubdistributionFunction SubdistributionFunction::generic(
    std::function<double(double, double)> eval, double sat_x, double sat_y) {
  if (!eval || !(sat_x > 0.0) || !(sat_y > 0.0)) {
    throw DomainError("generic subdistribution: need evaluator and positive saturation");
  }
  SubdistributionFunction f;
  f.eval_ = std::move(eval);
  f.sat_x_ = sat_x;
  f.sat_y_ = sat_y;
  return f;
}

double SubdistributionFunction::operator()(double w1, double w2) const {
  if (w1 < 0.0 || w2 < 0.0) throw DomainError("negative component");
  return tdf_ ? (*tdf_)(w1, w2) : eval_(w1, w2);
}

double SubdistributionFunction::partial(int index, double w1, double w2) const {
  if (tdf_) return tdf_->partial(index, w1, w2);
  if (index == 1) {
    auto slice = [&](double x) { return eval_(x, w2); };
    return one_sided_derivative(slice, w1, Side::right).value;
  }
  if (index != 2) throw DomainError("partial: index must be 1 or 2");
  auto slice = [&](double y) { return eval_(w1, y); };
  return one_sided_derivative(slice, w2, Side::right).value;
}

double SubdistributionFunction::partial1_at_infinity(double x) const {
  if (tdf_) return tdf_->angular().slope_at_zero();
  return partial(1, x, sat_y_);
}

StepFunction SubdistributionFunction::partial1_steps(double w2) const {
  if (!has_exact_steps()) {
    throw DomainError("partial1_steps: no exact representation available");
  }
  return tdf_->partial1_steps(w2);
}

std::vector<double> SubdistributionFunction::partial1_kinks(double w2) const {
  if (tdf_) return tdf_->partial1_kinks(w2);
  return {sat_x_};
}

const TailDependenceFunction& SubdistributionFunction::tdf() const {
  if (!tdf_) throw DomainError("subdistribution is not homogeneous");
  return *tdf_;
}

SubdistributionFunction SubdistributionFunction::transposed() const {
  if (tdf_) return from_tdf(tdf_->transposed());
  auto e = eval_;
  return generic([e](double x, double y) { return e(y, x); }, sat_y_, sat_x_);
}

double SubdistributionFunction::saturation_x() const { return sat_x_; }
double SubdistributionFunction::saturation_y() const { return sat_y_; }

}  // namespace tailalg
