// Command-line front end: product curves, iterate sweeps, tail extraction,
// operator diagnostics, and canned figure configurations.
//
// Output is a fixed three-column table (curve,t,value), as csv or json,
// deterministic for a fixed configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailalg/copula.hpp"
#include "tailalg/iterates.hpp"
#include "tailalg/product.hpp"
#include "tailalg/spec_io.hpp"
#include "tailalg/substoch.hpp"

namespace {

using namespace tailalg;

constexpr const char* kVersion = "0.1.0";

struct Row {
  std::string curve;
  double t;
  double value;
};

struct Output {
  std::vector<Row> rows;
  nlohmann::json config = nlohmann::json::object();

  void add(std::string curve, double t, double value) {
    rows.push_back({std::move(curve), t, value});
  }
};

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_output(const Output& out, const std::string& path,
                  const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "curve,t,value\n";
    for (const Row& r : out.rows) {
      os << r.curve << ',' << format_number(r.t) << ','
         << format_number(r.value) << '\n';
    }
  } else {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = out.config;
    j["rows"] = nlohmann::json::array();
    for (const Row& r : out.rows) {
      j["rows"].push_back({{"curve", r.curve},
                           {"t", format_number(r.t)},
                           {"value", format_number(r.value)}});
    }
    os << j.dump(2) << '\n';
  }
  if (path.empty() || path == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SpecError("out", "cannot open output file " + path);
    f << os.str();
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecError(path, "cannot read file");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

LimitSchedule parse_schedule(const std::string& text) {
  LimitSchedule s;
  if (text.empty()) return s;
  double s0, ratio;
  int steps;
  if (std::sscanf(text.c_str(), "%lf,%lf,%d", &s0, &ratio, &steps) != 3) {
    throw SpecError("schedule", "expected s0,ratio,steps");
  }
  s.s0 = s0;
  s.ratio = ratio;
  s.max_steps = steps;
  if (!s.valid()) throw SpecError("schedule", "invalid schedule parameters");
  return s;
}

void emit_angular_curve(Output& out, const std::string& name,
                        const std::function<double(double)>& f, int grid) {
  for (int j = 0; j < grid; ++j) {
    const double t = static_cast<double>(j) / (grid - 1);
    out.add(name, t, f(t));
  }
}

void run_product(const std::vector<std::string>& tdf_paths,
                 const std::string& copula_path, int grid, Output& out) {
  if (tdf_paths.size() != 2) {
    throw SpecError("tdf", "product curves need exactly two operands");
  }
  std::vector<TailDependenceFunction> factors;
  for (const auto& p : tdf_paths) factors.push_back(parse_tdf_spec(read_file(p)));
  Copula c = copula_path.empty() ? Copula::product(2)
                                 : parse_copula_spec(read_file(copula_path));
  if (c.arity() != 2) throw SpecError("copula", "must be bivariate");
  auto r = generalized_product(c, factors);
  emit_angular_curve(out, "lambda_1", [&](double t) { return factors[0](t, 1 - t); }, grid);
  emit_angular_curve(out, "lambda_2", [&](double t) { return factors[1](t, 1 - t); }, grid);
  emit_angular_curve(out, "product", [&](double t) { return r(t, 1 - t); }, grid);
  emit_angular_curve(out, "upper_bound",
                     [](double t) { return std::min(t, 1 - t); }, grid);
}

void run_iterate(const std::optional<double>& p, const std::string& tdf_path,
                 int n, int grid, double tol, Output& out) {
  TailDependenceFunction l = p ? TailDependenceFunction(AngularFunction::plateau(*p))
                               : parse_tdf_spec(read_file(tdf_path));
  auto seq = iterate_sequence(l, n);
  for (int k = 1; k <= n; ++k) {
    emit_angular_curve(out, "iterate_" + std::to_string(k),
                       [&](double t) { return seq[k - 1](t, 1 - t); }, grid);
  }
  auto cls = classify_limit(l, tol <= 0 ? 1e-3 : tol);
  out.add("limit", static_cast<double>(cls.n_reached),
          cls.comonotone ? 1.0 : 0.0);
}

void run_extract(const std::string& copula_path,
                 const std::vector<std::string>& points,
                 const LimitSchedule& schedule, Output& out) {
  Copula c = parse_copula_spec(read_file(copula_path));
  std::vector<std::pair<double, double>> ws;
  if (points.empty()) {
    for (int j = 0; j <= 10; ++j) {
      const double u = j / 10.0;
      ws.emplace_back(u, 1.0 - u);
    }
  } else {
    for (const auto& s : points) {
      double a, b;
      if (std::sscanf(s.c_str(), "%lf,%lf", &a, &b) != 2) {
        throw SpecError("point", "expected w1,w2");
      }
      ws.emplace_back(a, b);
    }
  }
  for (auto [w1, w2] : ws) {
    auto r = c.extract_tail(w1, w2, schedule);
    const double s = w1 + w2;
    out.add(r.converged ? "tail" : "tail_unconverged", s > 0 ? w1 / s : 0.0,
            r.value);
  }
}

void run_operator(const std::string& kernel_path, const std::string& step_path,
                  double tol, Output& out) {
  if (tol <= 0) tol = 1e-6;
  const SubdistributionFunction kernel =
      SubdistributionFunction::from_tdf(parse_tdf_spec(read_file(kernel_path)));
  const StepFunction f = step_path.empty()
                             ? StepFunction::indicator(0.0, 1.0)
                             : parse_step_spec(read_file(step_path));
  const SubstochasticOperator t(kernel);
  const StepFunction tf = t.materialize(f);

  auto report = [&](const std::string& name, bool pass, double defect) {
    out.add(name, pass ? 1.0 : 0.0, defect);
  };

  double min_val = tf.tail();
  for (double v : tf.values()) min_val = std::min(min_val, v);
  report("positivity", min_val >= -tol, std::max(0.0, -min_val));

  if (f.compactly_supported() && f.nonnegative()) {
    const double d1 = tf.l1_norm() - f.l1_norm();
    report("contraction_l1", d1 <= 1e-10, std::max(0.0, d1));
    report("majorization", majorizes(f, tf), 0.0);
  }
  const double dsup = tf.sup_norm() - f.sup_norm();
  report("contraction_sup", dsup <= 1e-10, std::max(0.0, dsup));

  report("markov", is_markov_operator(kernel, tol), 0.0);

  double eq = 0.0;
  for (double x : {0.3, 0.6, 1.2, 1.5}) {
    eq = std::max(eq, equivariance_defect(kernel, f, 2.0, x));
  }
  report("equivariance", eq <= 1e-8, eq);

  const SubdistributionFunction back = operator_to_subdistribution(t);
  double rt = 0.0;
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      const double x = 0.4 * i, y = 0.4 * j;
      rt = std::max(rt, std::abs(back(x, y) - kernel(x, y)));
    }
  }
  report("round_trip", rt <= tol, rt);
}

void run_figure(int which, int grid, Output& out) {
  switch (which) {
    case 1: {
      std::vector<TailDependenceFunction> fs{
          TailDependenceFunction(AngularFunction::linear_min(2.0 / 3, 1.0)),
          TailDependenceFunction(AngularFunction::linear_min(0.5, 0.25))};
      emit_angular_curve(out, "lambda_1", [&](double t) { return fs[0](t, 1 - t); }, grid);
      emit_angular_curve(out, "lambda_2", [&](double t) { return fs[1](t, 1 - t); }, grid);
      const std::pair<const char*, Copula> cs[] = {
          {"product_lower_frechet", Copula::lower_frechet()},
          {"product_independence", Copula::product(2)},
          {"product_upper_frechet", Copula::upper_frechet(2)}};
      for (const auto& [name, c] : cs) {
        auto r = generalized_product(c, fs);
        emit_angular_curve(out, name, [&](double t) { return r(t, 1 - t); }, grid);
      }
      break;
    }
    case 2: {
      std::vector<TailDependenceFunction> fs{
          TailDependenceFunction(AngularFunction::linear_min(0.5, 1.0)),
          TailDependenceFunction(AngularFunction::clayton(1.0))};
      emit_angular_curve(out, "lambda_1", [&](double t) { return fs[0](t, 1 - t); }, grid);
      emit_angular_curve(out, "lambda_2", [&](double t) { return fs[1](t, 1 - t); }, grid);
      const std::pair<const char*, Copula> cs[] = {
          {"product_lower_frechet", Copula::lower_frechet()},
          {"product_independence", Copula::product(2)},
          {"product_upper_frechet", Copula::upper_frechet(2)}};
      for (const auto& [name, c] : cs) {
        auto r = generalized_product(c, fs);
        emit_angular_curve(out, name, [&](double t) { return r(t, 1 - t); }, grid);
      }
      break;
    }
    case 3: {
      TailDependenceFunction l1(AngularFunction::linear_min(0.5, 1.0));
      TailDependenceFunction l2(AngularFunction::linear_min(0.25, 0.5));
      TailDependenceFunction l3(AngularFunction::clayton(1.0));
      emit_angular_curve(out, "lambda_1", [&](double t) { return l1(t, 1 - t); }, grid);
      emit_angular_curve(out, "lambda_2", [&](double t) { return l2(t, 1 - t); }, grid);
      emit_angular_curve(out, "lambda_3", [&](double t) { return l3(t, 1 - t); }, grid);
      auto s13 = star_product(l1, l3);
      auto s23 = star_product(l2, l3);
      emit_angular_curve(out, "star_13", [&](double t) { return s13(t, 1 - t); }, grid);
      emit_angular_curve(out, "star_23", [&](double t) { return s23(t, 1 - t); }, grid);
      break;
    }
    case 4: {
      TailDependenceFunction l(AngularFunction::plateau(1.0 / 3));
      auto seq = iterate_sequence(l, 5);
      for (int k : {1, 2, 3, 5}) {
        emit_angular_curve(out, "iterate_" + std::to_string(k),
                           [&](double t) { return seq[k - 1](t, 1 - t); }, grid);
      }
      break;
    }
    default:
      throw SpecError("figure", "figure index must be 1..4");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail dependence function algebra"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  int grid = 201;
  double tol = 0.0;
  std::string schedule_text, out_path, format = "csv";
  unsigned long long seed = 20240915ULL;
  app.add_option("--grid", grid, "evaluation grid size")->check(CLI::Range(3, 1 << 20));
  app.add_option("--tol", tol, "tolerance override");
  app.add_option("--schedule", schedule_text, "limit schedule s0,ratio,steps");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "random seed for sampled diagnostics");

  auto* p_cmd = app.add_subcommand("product", "angular curve of a product");
  std::vector<std::string> tdf_paths;
  std::string copula_path;
  p_cmd->add_option("--tdf", tdf_paths, "operand spec files")->required();
  p_cmd->add_option("--copula", copula_path, "inducing copula spec file");

  auto* i_cmd = app.add_subcommand("iterate", "iterates of the product");
  std::string it_tdf;
  double plateau_p = -1.0;
  int it_n = 5;
  i_cmd->add_option("--tdf", it_tdf, "operand spec file");
  i_cmd->add_option("--p", plateau_p, "plateau parameter shortcut");
  i_cmd->add_option("--n", it_n, "iterate count")->check(CLI::Range(1, 64));

  auto* e_cmd = app.add_subcommand("extract-tail", "tail limit of a copula");
  std::string ex_copula;
  std::vector<std::string> ex_points;
  e_cmd->add_option("--copula", ex_copula, "copula spec file")->required();
  e_cmd->add_option("--point", ex_points, "evaluation point w1,w2");

  auto* o_cmd = app.add_subcommand("operator", "substochastic operator checks");
  std::string op_kernel, op_step;
  o_cmd->add_option("--kernel", op_kernel, "kernel spec file")->required();
  o_cmd->add_option("--step", op_step, "test vector spec file");

  auto* f_cmd = app.add_subcommand("figure", "canned curve configurations");
  int fig = 0;
  f_cmd->add_option("index", fig, "figure index 1..4")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Output out;
    out.config = {{"grid", grid}, {"format", format}, {"seed", seed}};
    if (p_cmd->parsed()) {
      run_product(tdf_paths, copula_path, grid, out);
    } else if (i_cmd->parsed()) {
      std::optional<double> p;
      if (plateau_p >= 0.0) p = plateau_p;
      if (!p && it_tdf.empty()) throw SpecError("tdf", "need --tdf or --p");
      run_iterate(p, it_tdf, it_n, grid, tol, out);
    } else if (e_cmd->parsed()) {
      run_extract(ex_copula, ex_points, parse_schedule(schedule_text), out);
    } else if (o_cmd->parsed()) {
      run_operator(op_kernel, op_step, tol, out);
    } else if (f_cmd->parsed()) {
      run_figure(fig, grid, out);
    }
    write_output(out, out_path, format);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << " (residual " << e.residual()
              << ")\n";
    return 3;
  }
  return 0;
}
