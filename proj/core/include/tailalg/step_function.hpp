#pragma once

#include <span>
#include <vector>

namespace tailalg {

// Right-continuous piecewise-constant function on [0, inf) in canonical
// form: edges[0] == 0, values[i] on [edges[i], edges[i+1]), `tail` beyond
// the last edge. Zero-width pieces are dropped and equal neighbours merged.
class StepFunction {
 public:
  StepFunction();  // identically zero

  // `edges` has values.size()+1 entries; the function is 0 on
  // [0, edges.front()) when edges.front() > 0.
  StepFunction(std::vector<double> edges, std::vector<double> values,
               double tail = 0.0);

  static StepFunction indicator(double a, double b);          // 1_{[a,b)}
  static StepFunction constant(double c);                     // c on R+

  double operator()(double x) const;
  double tail() const { return tail_; }
  bool compactly_supported() const { return tail_ == 0.0; }
  double support_end() const;  // smallest x with f == tail beyond it

  // Piece view: pieces()[i] spans [edges()[i], edges()[i+1]).
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& values() const { return values_; }

  double l1_norm() const;       // requires tail == 0
  double sup_norm() const;
  double integral_to(double t) const;  // int_0^t f

  StepFunction dilated(double s) const;  // x -> f(x/s)
  StepFunction scaled(double c) const;   // x -> c*f(x)
  StepFunction operator+(const StepFunction& other) const;

  bool nonnegative() const;

 private:
  std::vector<double> edges_;   // size values_.size() + 1, edges_[0] == 0
  std::vector<double> values_;
  double tail_ = 0.0;

  void canonicalize();
};

// Values sorted descending, piece lengths preserved. Requires a
// nonnegative, compactly supported step function.
StepFunction decreasing_rearrangement(const StepFunction& f);

// Hardy-Littlewood comparison: true iff int_0^t g* <= int_0^t f* + 1e-12
// at every breakpoint of the merged partition.
bool majorizes(const StepFunction& f, const StepFunction& g);

}  // namespace tailalg
