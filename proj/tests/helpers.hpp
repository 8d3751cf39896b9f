#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tailalg/angular.hpp"
#include "tailalg/step_function.hpp"
#include "tailalg/tdf.hpp"

namespace testutil {

inline constexpr unsigned long long kSeed = 20240915ULL;

// Random concave piecewise-linear angular function: lower envelope of the
// bound min(t, 1-t) and up to three random lines a*t + b*(1-t) with
// a, b in [0, 1]. The envelope of lines is exactly piecewise-linear with
// knots at pairwise crossings, so the result is exact, concave, bounded,
// and zero at both endpoints.
inline tailalg::AngularFunction random_pl_angular(std::mt19937_64& rng) {
  struct Line {
    double a, b;  // t -> a*t + b*(1-t)
  };
  std::vector<Line> lines{{1.0, 0.0}, {0.0, 1.0}};
  std::uniform_int_distribution<int> kd(1, 3);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const int extra = kd(rng);
  for (int k = 0; k < extra; ++k) lines.push_back({ud(rng), ud(rng)});

  std::vector<double> knots{0.0, 1.0};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double denom =
          (lines[i].a - lines[i].b) - (lines[j].a - lines[j].b);
      if (denom == 0.0) continue;
      const double t = (lines[j].b - lines[i].b) / denom;
      if (t > 0.0 && t < 1.0) knots.push_back(t);
    }
  }
  std::sort(knots.begin(), knots.end());
  std::vector<double> ts, vs;
  for (double t : knots) {
    if (!ts.empty() && t - ts.back() <= 1e-12) continue;
    double v = 1e300;
    for (const Line& l : lines) v = std::min(v, l.a * t + l.b * (1.0 - t));
    ts.push_back(t);
    vs.push_back(v);
  }
  return tailalg::AngularFunction::piecewise_linear(std::move(ts),
                                                    std::move(vs));
}

inline tailalg::TailDependenceFunction random_pl_tdf(std::mt19937_64& rng) {
  return tailalg::TailDependenceFunction(random_pl_angular(rng));
}

// Nonnegative compactly supported step function with 1..5 pieces.
inline tailalg::StepFunction random_step(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, 5);
  std::uniform_real_distribution<double> xd(0.0, 4.0);
  std::uniform_real_distribution<double> vd(0.0, 2.0);
  const int n = nd(rng);
  std::vector<double> edges{0.0};
  for (int i = 0; i < n; ++i) edges.push_back(xd(rng));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<double> values;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) values.push_back(vd(rng));
  if (values.empty()) return tailalg::StepFunction::indicator(0.0, 1.0);
  return tailalg::StepFunction(std::move(edges), std::move(values), 0.0);
}

// The five named angular families used throughout the checks.
inline std::vector<tailalg::AngularFunction> named_families() {
  using tailalg::AngularFunction;
  return {AngularFunction::comonotone(), AngularFunction::independence(),
          AngularFunction::clayton(1.0), AngularFunction::linear_min(0.5, 1.0),
          AngularFunction::plateau(1.0 / 3.0)};
}

inline std::vector<double> simplex_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) g[j] = static_cast<double>(j) / (n - 1);
  return g;
}

}  // namespace testutil
