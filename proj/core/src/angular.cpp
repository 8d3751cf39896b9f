#include "tailalg/angular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tailalg {
namespace {

double frechet_bound(double t) { return std::min(t, 1.0 - t); }

std::string describe(const char* what, double value, double at) {
  std::ostringstream os;
  os << what << " (" << value << ") at t=" << at;
  return os.str();
}

// Drop interior knots where the two adjacent slopes coincide.
void drop_collinear(std::vector<double>& t, std::vector<double>& v) {
  std::vector<double> tt{t.front()}, vv{v.front()};
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double sl = (v[i] - vv.back()) / (t[i] - tt.back());
    const double sr = (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
    if (std::abs(sl - sr) <= 1e-14 * std::max(1.0, std::abs(sl))) continue;
    tt.push_back(t[i]);
    vv.push_back(v[i]);
  }
  tt.push_back(t.back());
  vv.push_back(v.back());
  t = std::move(tt);
  v = std::move(vv);
}

}  // namespace

AngularFunction AngularFunction::comonotone() {
  AngularFunction a;
  a.family_ = Family::comonotone;
  a.t_ = {0.0, 0.5, 1.0};
  a.v_ = {0.0, 0.5, 0.0};
  return a;
}

AngularFunction AngularFunction::independence() {
  AngularFunction a;
  a.family_ = Family::independence;
  a.t_ = {0.0, 1.0};
  a.v_ = {0.0, 0.0};
  return a;
}

AngularFunction AngularFunction::clayton(double alpha) {
  if (std::isnan(alpha) || alpha <= 0.0) {
    throw DomainError("clayton: alpha must be positive");
  }
  if (std::isinf(alpha)) return comonotone();
  AngularFunction a;
  a.family_ = Family::clayton;
  a.alpha_ = alpha;
  return a;
}

AngularFunction AngularFunction::linear_min(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("linear_min: coefficients must lie in [0, 1]");
  }
  AngularFunction a;
  a.family_ = Family::linear_min;
  a.alpha_ = alpha;
  a.beta_ = beta;
  if (alpha == 0.0 || beta == 0.0) {
    a.t_ = {0.0, 1.0};
    a.v_ = {0.0, 0.0};
    return a;
  }
  const double k = beta / (alpha + beta);
  a.t_ = {0.0, k, 1.0};
  a.v_ = {0.0, alpha * k, 0.0};
  return a;
}

AngularFunction AngularFunction::plateau(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw DomainError("plateau: p must lie in [0, 1/2]");
  }
  AngularFunction a;
  a.family_ = Family::plateau;
  a.p_ = p;
  if (p == 0.0) {
    a.t_ = {0.0, 1.0};
    a.v_ = {0.0, 0.0};
  } else if (p == 0.5) {
    a.t_ = {0.0, 0.5, 1.0};
    a.v_ = {0.0, 0.5, 0.0};
  } else {
    a.t_ = {0.0, p, 1.0 - p, 1.0};
    a.v_ = {0.0, p, p, 0.0};
  }
  return a;
}

AngularFunction AngularFunction::piecewise_linear(std::vector<double> t,
                                                  std::vector<double> v) {
  if (t.size() != v.size() || t.size() < 2) {
    throw DomainError("piecewise_linear: need matching knot/value lists");
  }
  if (t.front() != 0.0 || t.back() != 1.0 ||
      !std::is_sorted(t.begin(), t.end()) ||
      std::adjacent_find(t.begin(), t.end()) != t.end()) {
    throw DomainError(
        "piecewise_linear: knots must increase strictly from 0 to 1");
  }
  drop_collinear(t, v);
  AngularFunction a;
  a.family_ = Family::piecewise_linear;
  a.t_ = std::move(t);
  a.v_ = std::move(v);
  return a;
}

AngularFunction AngularFunction::from_samples(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 3) throw DomainError("from_samples: need at least 3 grid values");
  std::vector<double> t(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = std::clamp(values[i], 0.0, frechet_bound(t[i]));
  }
  // Least concave majorant of the clipped points: upper hull, left to
  // right. It stays within the bound because the bound is concave.
  std::vector<std::size_t> hull;
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (t[a] - t[o]) * (v[b] - v[o]) - (v[a] - v[o]) * (t[b] - t[o]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), i) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  std::vector<double> ht, hv;
  for (std::size_t i : hull) {
    ht.push_back(t[i]);
    hv.push_back(v[i]);
  }
  drop_collinear(ht, hv);
  AngularFunction a;
  a.family_ = Family::sampled;
  a.t_ = std::move(ht);
  a.v_ = std::move(hv);
  return a;
}

double AngularFunction::operator()(double t) const {
  if (t < 0.0 || t > 1.0) throw DomainError("angular argument outside [0,1]");
  return family_ == Family::clayton ? clayton_value(t) : pl_value(t);
}

double AngularFunction::derivative(double t, Side side) const {
  if (t < 0.0 || t > 1.0) throw DomainError("angular argument outside [0,1]");
  if (family_ == Family::clayton) return clayton_derivative(t);
  return pl_derivative(t, side);
}

double AngularFunction::max_value() const {
  if (family_ == Family::clayton) return clayton_value(0.5);
  return *std::max_element(v_.begin(), v_.end());
}

AngularFunction AngularFunction::transposed() const {
  switch (family_) {
    case Family::comonotone:
    case Family::independence:
    case Family::clayton:
    case Family::plateau:
      return *this;  // symmetric
    case Family::linear_min:
      return linear_min(beta_, alpha_);
    case Family::piecewise_linear:
    case Family::sampled: {
      AngularFunction a;
      a.family_ = family_;
      const std::size_t m = t_.size();
      a.t_.resize(m);
      a.v_.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        a.t_[i] = 1.0 - t_[m - 1 - i];
        a.v_[i] = v_[m - 1 - i];
      }
      return a;
    }
  }
  throw DomainError("unreachable");
}

const std::vector<double>& AngularFunction::knots() const {
  if (!is_piecewise_linear()) {
    throw DomainError("knots: not a piecewise-linear representation");
  }
  return t_;
}

const std::vector<double>& AngularFunction::knot_values() const {
  if (!is_piecewise_linear()) {
    throw DomainError("knot_values: not a piecewise-linear representation");
  }
  return v_;
}

double AngularFunction::pl_value(double t) const {
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  if (i + 1 >= t_.size()) i = t_.size() - 2;
  if (t == t_[i + 1]) return v_[i + 1];  // exact at knots
  const double s = (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
  return v_[i] + s * (t - t_[i]);
}

double AngularFunction::pl_derivative(double t, Side side) const {
  // Segment index: right side takes the segment starting at t when t is a
  // knot, left side the one ending there.
  std::size_t i;
  if (side == Side::right) {
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    if (i + 1 >= t_.size()) i = t_.size() - 2;  // t == 1: fall back to left
  } else {
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    i = static_cast<std::size_t>(it - t_.begin());
    i = i == 0 ? 0 : i - 1;
  }
  return (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
}

double AngularFunction::clayton_value(double t) const {
  const double a = std::min(t, 1.0 - t);
  const double b = std::max(t, 1.0 - t);
  if (a <= 0.0) return 0.0;
  const double h = std::pow(a / b, alpha_);
  return a * std::pow(1.0 + h, -1.0 / alpha_);
}

double AngularFunction::clayton_derivative(double t) const {
  if (t > 0.5) return -clayton_derivative(1.0 - t);
  if (t == 0.5) return 0.0;
  const double a = t, b = 1.0 - t;
  const double r = a / b;
  const double h = std::pow(r, alpha_);
  return std::pow(1.0 + h, -1.0 / alpha_ - 1.0) *
         (1.0 - std::pow(r, alpha_ + 1.0));
}

ValidationReport AngularFunction::validate(int grid_n, double tol) const {
  if (grid_n < 3) throw DomainError("validate: grid_n must be at least 3");
  if (tol == 0.0) tol = is_sampled() ? 1e-6 : 1e-9;
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.issues.push_back(std::move(msg));
  };

  const auto& f = *this;
  if (std::abs(f(0.0)) > tol) fail("endpoint value at t=0 is not 0");
  if (std::abs(f(1.0)) > tol) fail("endpoint value at t=1 is not 0");

  std::vector<double> g(static_cast<std::size_t>(grid_n));
  std::vector<double> u(static_cast<std::size_t>(grid_n));
  for (int j = 0; j < grid_n; ++j) {
    u[j] = static_cast<double>(j) / (grid_n - 1);
    g[j] = f(u[j]);
    if (g[j] < -tol) {
      fail(describe("negative value", g[j], u[j]));
      break;
    }
    if (g[j] > frechet_bound(u[j]) + tol) {
      fail(describe("value above min(t,1-t)", g[j], u[j]));
      break;
    }
  }
  for (int j = 1; j + 1 < grid_n; ++j) {
    if (g[j - 1] - 2.0 * g[j] + g[j + 1] > tol) {
      fail(describe("concavity violated", g[j], u[j]));
      break;
    }
  }
  for (int j = 0; j + 1 < grid_n; ++j) {
    const double s = (g[j + 1] - g[j]) / (u[j + 1] - u[j]);
    if (std::abs(s) > 1.0 + tol) {
      fail(describe("slope outside [-1,1]", s, u[j]));
      break;
    }
  }
  if (is_piecewise_linear()) {
    for (std::size_t i = 0; i + 2 < t_.size(); ++i) {
      const double s0 = (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
      const double s1 = (v_[i + 2] - v_[i + 1]) / (t_[i + 2] - t_[i + 1]);
      if (s1 > s0 + tol) {
        fail(describe("knot slopes increase", s1 - s0, t_[i + 1]));
        break;
      }
    }
  }
  return rep;
}

}  // namespace tailalg
