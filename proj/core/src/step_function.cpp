#include "tailalg/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tailalg/numerics.hpp"

namespace tailalg {

StepFunction::StepFunction() : edges_{0.0}, values_{}, tail_(0.0) {
  edges_ = {0.0};
  values_.clear();
}

StepFunction::StepFunction(std::vector<double> edges,
                           std::vector<double> values, double tail)
    : edges_(std::move(edges)), values_(std::move(values)), tail_(tail) {
  if (edges_.size() != values_.size() + 1) {
    throw DomainError("step function: edges must have values.size()+1 entries");
  }
  if (!std::is_sorted(edges_.begin(), edges_.end()) || edges_.front() < 0.0) {
    throw DomainError("step function: edges must be increasing and >= 0");
  }
  if (edges_.front() > 0.0) {
    edges_.insert(edges_.begin(), 0.0);
    values_.insert(values_.begin(), 0.0);
  }
  canonicalize();
}

void StepFunction::canonicalize() {
  std::vector<double> e{0.0};
  std::vector<double> v;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (edges_[i + 1] <= edges_[i]) continue;  // zero width
    if (!v.empty() && v.back() == values_[i]) {
      e.back() = edges_[i + 1];
      continue;
    }
    v.push_back(values_[i]);
    e.push_back(edges_[i + 1]);
  }
  // Merge a final piece equal to the tail into the tail.
  while (!v.empty() && v.back() == tail_) {
    v.pop_back();
    e.pop_back();
  }
  edges_ = std::move(e);
  values_ = std::move(v);
}

StepFunction StepFunction::indicator(double a, double b) {
  if (a < 0.0 || b < a) throw DomainError("indicator: need 0 <= a <= b");
  if (b == a) return StepFunction();
  return StepFunction({a, b}, {1.0});
}

StepFunction StepFunction::constant(double c) {
  StepFunction f;
  f.tail_ = c;
  return f;
}

double StepFunction::operator()(double x) const {
  if (x < 0.0) throw DomainError("step function evaluated at negative x");
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  const auto idx = static_cast<std::size_t>(it - edges_.begin());
  if (idx == 0) return values_.empty() ? tail_ : values_.front();
  if (idx >= edges_.size()) return tail_;
  return values_[idx - 1];
}

double StepFunction::support_end() const { return edges_.back(); }

double StepFunction::l1_norm() const {
  if (tail_ != 0.0) {
    throw DomainError("l1 norm of a step function with nonzero tail");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    s += std::abs(values_[i]) * (edges_[i + 1] - edges_[i]);
  }
  return s;
}

double StepFunction::sup_norm() const {
  double m = std::abs(tail_);
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double StepFunction::integral_to(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lo = edges_[i];
    const double hi = std::min(edges_[i + 1], t);
    if (hi <= lo) break;
    s += values_[i] * (hi - lo);
  }
  if (t > edges_.back()) s += tail_ * (t - edges_.back());
  return s;
}

StepFunction StepFunction::dilated(double s) const {
  if (!(s > 0.0)) throw DomainError("dilation scale must be positive");
  std::vector<double> e = edges_;
  for (double& x : e) x *= s;
  return StepFunction(std::move(e), values_, tail_);
}

StepFunction StepFunction::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return StepFunction(edges_, std::move(v), tail_ * c);
}

StepFunction StepFunction::operator+(const StepFunction& other) const {
  std::vector<double> e;
  std::merge(edges_.begin(), edges_.end(), other.edges_.begin(),
             other.edges_.end(), std::back_inserter(e));
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::vector<double> v;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    v.push_back((*this)(e[i]) + other(e[i]));
  }
  return StepFunction(std::move(e), std::move(v), tail_ + other.tail_);
}

bool StepFunction::nonnegative() const {
  if (tail_ < 0.0) return false;
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

StepFunction decreasing_rearrangement(const StepFunction& f) {
  if (!f.nonnegative()) {
    throw DomainError("rearrangement requires a nonnegative step function");
  }
  if (!f.compactly_supported()) {
    throw DomainError("rearrangement requires compact support");
  }
  struct Piece {
    double value, length;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    pieces.push_back({f.values()[i], f.edges()[i + 1] - f.edges()[i]});
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return a.value > b.value; });
  std::vector<double> e{0.0};
  std::vector<double> v;
  for (const Piece& p : pieces) {
    if (p.value == 0.0) continue;  // zero pieces merge into the tail
    v.push_back(p.value);
    e.push_back(e.back() + p.length);
  }
  return StepFunction(std::move(e), std::move(v), 0.0);
}

bool majorizes(const StepFunction& f, const StepFunction& g) {
  if (!f.nonnegative() || !g.nonnegative()) {
    throw DomainError("majorization compares nonnegative step functions");
  }
  const StepFunction fs = decreasing_rearrangement(f);
  const StepFunction gs = decreasing_rearrangement(g);
  std::vector<double> ts;
  ts.insert(ts.end(), fs.edges().begin(), fs.edges().end());
  ts.insert(ts.end(), gs.edges().begin(), gs.edges().end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  ts.push_back(std::max(fs.support_end(), gs.support_end()) + 1.0);
  for (double t : ts) {
    if (gs.integral_to(t) > fs.integral_to(t) + 1e-12) return false;
  }
  return true;
}

}  // namespace tailalg
