#include "tailalg/copula.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace tailalg {

struct Copula::Node {
  Family family;
  int arity = 2;
  double theta = 0.0;
  std::optional<TailDependenceFunction> tdf;  // ev_survival
  std::vector<Copula> children;  // markov: {left, right}; lifted: {base, factors...}
};

Copula::Copula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Copula Copula::lower_frechet() {
  auto n = std::make_shared<Node>();
  n->family = Family::lower_frechet;
  return Copula(n);
}

Copula Copula::product(int arity) {
  if (arity < 2) throw DomainError("copula arity must be at least 2");
  auto n = std::make_shared<Node>();
  n->family = Family::product;
  n->arity = arity;
  return Copula(n);
}

Copula Copula::upper_frechet(int arity) {
  if (arity < 2) throw DomainError("copula arity must be at least 2");
  auto n = std::make_shared<Node>();
  n->family = Family::upper_frechet;
  n->arity = arity;
  return Copula(n);
}

Copula Copula::clayton(double theta) {
  if (!(theta > 0.0) || std::isinf(theta)) {
    throw DomainError("clayton copula: theta must be positive and finite");
  }
  auto n = std::make_shared<Node>();
  n->family = Family::clayton;
  n->theta = theta;
  return Copula(n);
}

Copula Copula::ev_survival(AngularFunction angular) {
  auto n = std::make_shared<Node>();
  n->family = Family::ev_survival;
  n->tdf.emplace(std::move(angular));
  return Copula(n);
}

Copula Copula::markov_product(Copula left, Copula right) {
  if (left.arity() != 2 || right.arity() != 2) {
    throw DomainError("markov product requires bivariate operands");
  }
  auto n = std::make_shared<Node>();
  n->family = Family::markov_product;
  n->children = {std::move(left), std::move(right)};
  return Copula(n);
}

Copula Copula::lifted(Copula base, std::vector<Copula> factors) {
  const int d = base.arity();
  if (static_cast<int>(factors.size()) != d) {
    throw DomainError("lifting: base arity must match factor count");
  }
  for (const Copula& f : factors) {
    if (f.arity() != 2) throw DomainError("lifting: factors must be bivariate");
  }
  auto n = std::make_shared<Node>();
  n->family = Family::lifted;
  n->arity = d + 1;
  n->children.reserve(factors.size() + 1);
  n->children.push_back(std::move(base));
  for (Copula& f : factors) n->children.push_back(std::move(f));
  return Copula(n);
}

Copula::Family Copula::family() const { return node_->family; }
int Copula::arity() const { return node_->arity; }

double Copula::operator()(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != arity()) {
    throw DomainError("copula: argument dimension mismatch");
  }
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("copula argument outside [0,1]");
  }
  switch (node_->family) {
    case Family::lower_frechet:
      return std::max(u[0] + u[1] - 1.0, 0.0);
    case Family::product: {
      double p = 1.0;
      for (double x : u) p *= x;
      return p;
    }
    case Family::upper_frechet:
      return *std::min_element(u.begin(), u.end());
    case Family::clayton: {
      if (u[0] == 0.0 || u[1] == 0.0) return 0.0;
      const double t = node_->theta;
      const double s = std::pow(u[0], -t) + std::pow(u[1], -t) - 1.0;
      return std::pow(s, -1.0 / t);
    }
    case Family::ev_survival: {
      const double a = 1.0 - u[0], b = 1.0 - u[1];
      double ev = 0.0;
      if (a > 0.0 && b > 0.0) {
        const double x = -std::log(a), y = -std::log(b);
        ev = std::exp(std::log(a) + std::log(b) + (*node_->tdf)(x, y));
      }
      return std::max(0.0, u[0] + u[1] - 1.0 + ev);
    }
    case Family::markov_product: {
      const Copula& c1 = node_->children[0];
      const Copula& c2 = node_->children[1];
      const double v1 = u[0], v2 = u[1];
      // margins and groundedness hold structurally; skip the quadrature so
      // boundary evaluations never probe factor derivatives at the corner
      if (v1 == 0.0 || v2 == 0.0) return 0.0;
      if (v1 == 1.0) return v2;
      if (v2 == 1.0) return v1;
      auto g = [&](double t) {
        return c1.partial(2, v1, t) * c2.partial(1, t, v2);
      };
      std::vector<double> hints = c1.transposed().partial1_kinks(v1);
      auto k2 = c2.partial1_kinks(v2);
      hints.insert(hints.end(), k2.begin(), k2.end());
      return integrate_interval(g, 0.0, 1.0, {}, hints).value;
    }
    case Family::lifted: {
      const Copula& base = node_->children[0];
      const double cap = u[0];
      const int d = base.arity();
      std::vector<double> hints;
      for (int i = 0; i < d; ++i) {
        auto k = node_->children[i + 1].partial1_kinks(u[i + 1]);
        hints.insert(hints.end(), k.begin(), k.end());
      }
      std::vector<double> args(static_cast<std::size_t>(d));
      auto g = [&, args](double t) mutable {
        for (int i = 0; i < d; ++i) {
          args[i] = node_->children[i + 1].partial(1, t, u[i + 1]);
        }
        return base(args);
      };
      return integrate_interval(g, 0.0, cap, {}, hints).value;
    }
  }
  throw DomainError("unreachable");
}

double Copula::operator()(double u, double v) const {
  const double a[2] = {u, v};
  return (*this)(a);
}

double Copula::partial(int index, double u, double v) const {
  if (arity() != 2) throw DomainError("partial: bivariate copulas only");
  if (index != 1 && index != 2) throw DomainError("partial: index must be 1 or 2");
  if (index == 2) return transposed().partial(1, v, u);
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw DomainError("copula argument outside [0,1]");
  }
  switch (node_->family) {
    case Family::product:
      return v;
    case Family::upper_frechet:
      return u < v ? 1.0 : 0.0;  // right-derivative at the kink
    case Family::lower_frechet:
      return u + v >= 1.0 ? 1.0 : 0.0;
    case Family::clayton: {
      if (u == 0.0) return 1.0;  // limiting value at the corner
      if (v == 0.0) return 0.0;
      const double t = node_->theta;
      const double s = std::pow(u, -t) + std::pow(v, -t) - 1.0;
      return std::pow(s, -1.0 / t - 1.0) * std::pow(u, -t - 1.0);
    }
    case Family::ev_survival: {
      const double a = 1.0 - u, b = 1.0 - v;
      if (b == 0.0) return 1.0;  // C(u, 1) = u
      const TailDependenceFunction& L = *node_->tdf;
      if (a == 0.0) {
        // lim_{a->0} dCev/da = b^(1 + slope at 1 of the angular function)
        return 1.0 - std::pow(b, 1.0 + L.angular().slope_at_one());
      }
      const double x = -std::log(a), y = -std::log(b);
      const double ev = std::exp(std::log(a) + std::log(b) + L(x, y));
      const double dev = ev * (1.0 - L.partial(1, x, y)) / a;
      return 1.0 - dev;
    }
    case Family::markov_product:
    case Family::lifted: {
      const double h = kCentralDiffStep;
      const double lo = std::max(0.0, u - h), hi = std::min(1.0, u + h);
      return ((*this)(hi, v) - (*this)(lo, v)) / (hi - lo);
    }
  }
  throw DomainError("unreachable");
}

std::vector<double> Copula::partial1_kinks(double v) const {
  switch (node_->family) {
    case Family::upper_frechet:
      return {v};
    case Family::lower_frechet:
      return {1.0 - v};
    default:
      return {};
  }
}

bool Copula::closed_form() const {
  return node_->family != Family::markov_product &&
         node_->family != Family::lifted;
}

Copula Copula::transposed() const {
  if (arity() != 2) throw DomainError("transpose: bivariate copulas only");
  switch (node_->family) {
    case Family::lower_frechet:
    case Family::product:
    case Family::upper_frechet:
    case Family::clayton:
      return *this;  // symmetric
    case Family::ev_survival:
      return ev_survival(node_->tdf->angular().transposed());
    case Family::markov_product:
      return markov_product(node_->children[1].transposed(),
                            node_->children[0].transposed());
    case Family::lifted:
      break;
  }
  throw DomainError("transpose: unsupported family");
}

LimitResult Copula::extract_tail(double w1, double w2,
                                 const LimitSchedule& schedule) const {
  if (arity() != 2) throw DomainError("extract_tail: bivariate copulas only");
  if (w1 < 0.0 || w2 < 0.0) throw DomainError("extract_tail: negative component");
  auto h = [&](double s) {
    return (*this)(std::min(s * w1, 1.0), std::min(s * w2, 1.0)) / s;
  };
  return extrapolate_limit(h, schedule);
}

double Copula::theta() const {
  if (node_->family != Family::clayton) throw DomainError("theta: not clayton");
  return node_->theta;
}

const TailDependenceFunction& Copula::ev_tdf() const {
  if (!node_->tdf) throw DomainError("ev_tdf: not an ev-survival copula");
  return *node_->tdf;
}

const Copula& Copula::left() const {
  if (node_->family != Family::markov_product) throw DomainError("left: not a product");
  return node_->children[0];
}

const Copula& Copula::right() const {
  if (node_->family != Family::markov_product) throw DomainError("right: not a product");
  return node_->children[1];
}

const Copula& Copula::base() const {
  if (node_->family != Family::lifted) throw DomainError("base: not a lifting");
  return node_->children[0];
}

std::vector<Copula> Copula::factors() const {
  if (node_->family != Family::lifted) throw DomainError("factors: not a lifting");
  return {node_->children.begin() + 1, node_->children.end()};
}

SobolevReport sobolev_diagnostic(const Copula& c,
                                 const TailDependenceFunction& tdf, double w,
                                 const LimitSchedule& schedule) {
  if (!schedule.valid()) throw DomainError("invalid limit schedule");
  if (!(w > 0.0)) throw DomainError("sobolev diagnostic: w must be positive");
  SobolevReport rep;
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-8;
  double s = schedule.s0;
  for (int k = 0; k < schedule.max_steps; ++k, s *= schedule.ratio) {
    if (s * w > 1.0) continue;
    auto g = [&](double t) {
      return std::abs(c.partial(1, std::min(s * t, 1.0), s * w) -
                      tdf.partial(1, t, w));
    };
    std::vector<double> hints = tdf.partial1_kinks(w);
    for (double kk : c.partial1_kinks(s * w)) hints.push_back(kk / s);
    const double T = 1.0 / s;
    double defect = integrate_interval(g, 0.0, T, cfg, hints).value;
    defect += tdf.second_margin_limit(w) - tdf(T, w);
    rep.defects.emplace_back(s, defect);
  }
  if (rep.defects.empty()) return rep;
  bool monotone = true;
  for (std::size_t i = 1; i < rep.defects.size(); ++i) {
    if (rep.defects[i].second > rep.defects[i - 1].second + 1e-9) monotone = false;
  }
  const double first = rep.defects.front().second;
  const double last = rep.defects.back().second;
  rep.decreasing = first <= 1e-10 || (monotone && last < 0.5 * first);
  return rep;
}

}  // namespace tailalg
