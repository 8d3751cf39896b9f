#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tailalg {

// Thrown when an input lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when a numerical scheme cannot reach its tolerance; carries the
// best available residual estimate.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_subdivisions = 200000;
  bool compactify = true;  // map the tail [T, inf) through t = u/(1-u)
};

struct QuadratureResult {
  double value = 0.0;
  double residual = 0.0;
};

// Adaptive quadrature on [a, b]. `hints` are interior points where the
// integrand may jump or kink; the interval is split there first, so
// integrands that are constant between hints are integrated exactly.
QuadratureResult integrate_interval(const std::function<double(double)>& g,
                                    double a, double b,
                                    const QuadratureConfig& cfg = {},
                                    std::span<const double> hints = {});

// Integral over [0, inf). The head up to the last hint is integrated
// directly; the tail is compactified via t = u/(1-u). The integrand must
// satisfy g(t)*(1+t)^2 -> 0 (polynomial decay of order > 2), or have
// compact support announced through `hints`.
QuadratureResult integrate_halfline(const std::function<double(double)>& g,
                                    const QuadratureConfig& cfg = {},
                                    std::span<const double> hints = {});

// Geometric schedule of scales s0, s0*ratio, ... for s -> 0 limits.
struct LimitSchedule {
  double s0 = 0.25;
  double ratio = 0.5;
  int max_steps = 20;
  double stall_tol = 1e-4;

  bool valid() const {
    return s0 > 0.0 && s0 <= 1.0 && ratio > 0.0 && ratio < 1.0 &&
           max_steps >= 3 && stall_tol > 0.0;
  }
};

struct LimitResult {
  double value = 0.0;
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (scale, value)
};

// Sweeps h along the schedule; converged once two consecutive steps move
// by less than the stall tolerance. Non-convergence is flagged, not thrown.
LimitResult extrapolate_limit(const std::function<double(double)>& h,
                              const LimitSchedule& schedule);

enum class Side { left, right };

struct DiffSchedule {
  double h0 = 1e-2;
  double ratio = 0.5;
  int steps = 10;
};

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
};

// One-sided difference quotients with pairwise Richardson refinement.
DerivativeEstimate one_sided_derivative(const std::function<double(double)>& f,
                                        double x, Side side,
                                        const DiffSchedule& schedule = {});

// Step size for central-difference fallbacks on copula partials.
inline constexpr double kCentralDiffStep = 1e-6;

}  // namespace tailalg
