// gbg: command-line front end for the switching-game solvers, constructions,
// averages and bounds, plus the HTTP game service.
//
// Exit codes: 0 success, 2 usage or input error, 3 capacity error, 1 other.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "gbg/bounds.hpp"
#include "gbg/classic_game.hpp"
#include "gbg/constructions.hpp"
#include "gbg/game_http.hpp"
#include "gbg/game_service.hpp"
#include "gbg/io.hpp"
#include "gbg/torus_norm.hpp"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  std::vector<gbg::Index> shape;
  std::string in;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  int restarts = gbg::AscentConfig{}.restarts;
  double tol = gbg::AscentConfig{}.tol;
  int max_sweeps = gbg::AscentConfig{}.max_sweeps;
  int grid = 24;
  std::int64_t samples = 100000;
  std::int64_t budget = 10000;
  unsigned threads = 1;
  std::vector<double> coeffs;
  std::vector<int> axes;
  gbg::Index n = 0;
  std::string host = "127.0.0.1";
  int port = 8080;
};

// A command's result: the primary document plus optional CSV rows.
struct Output {
  json doc;
  std::vector<gbg::BoundReport> bounds;
};

gbg::Shape shape_arg(const Options& o) {
  if (o.shape.empty()) throw CLI::ValidationError("--shape", "is required");
  return gbg::Shape(o.shape);
}

gbg::AnyTensor tensor_arg(const Options& o) {
  if (o.in.empty()) throw CLI::ValidationError("--in", "is required");
  return gbg::tensor_from_document(gbg::read_json_file(o.in));
}

gbg::AscentConfig ascent_config(const Options& o) {
  gbg::AscentConfig cfg;
  cfg.restarts = o.restarts;
  cfg.tol = o.tol;
  cfg.max_sweeps = o.max_sweeps;
  cfg.seed = o.seed;
  return cfg;
}

gbg::EnumerationOptions enumeration(const Options& o) {
  gbg::EnumerationOptions e;
  e.threads = o.threads;
  return e;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Output& result, const Options& o, double elapsed_ms) {
  std::ostringstream os;
  if (o.format == "csv") {
    if (!result.bounds.empty()) {
      os << gbg::csv_header() << '\n';
      for (const auto& b : result.bounds) os << gbg::to_csv_row(b) << '\n';
    } else {
      os << "key,value\n";
      for (const auto& [k, v] : result.doc.items()) {
        if (v.is_primitive()) os << k << ',' << scalar_text(v) << '\n';
      }
    }
  } else if (o.format == "text") {
    for (const auto& [k, v] : result.doc.items()) os << k << ": " << scalar_text(v) << '\n';
  } else {
    json doc = result.doc;
    doc["meta"] = {{"elapsed_ms", elapsed_ms}};
    os << doc.dump(2) << '\n';
  }
  if (o.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << os.str();
  }
}

// Commands

Output classic_solve(const Options& o) {
  const auto t = tensor_arg(o);
  const auto* signs = std::get_if<gbg::SignTensor>(&t);
  if (!signs) throw std::invalid_argument("classic solve needs a sign tensor");
  return {gbg::to_json(gbg::best_imbalance_exact(gbg::LightPattern(*signs), enumeration(o))), {}};
}

Output classic_worst(const Options& o) {
  const auto w = gbg::worst_pattern_exact(shape_arg(o), enumeration(o));
  const gbg::Shape& shape = w.witness.shape();
  return {{{"value", w.value},
           {"lights_remaining", (shape.size() - w.value) / 2},
           {"witness", gbg::to_json(w.witness.signs())},
           {"method", "exact"}},
          {}};
}

Output classic_search(const Options& o) {
  const auto w = gbg::worst_pattern_search(shape_arg(o), o.budget, o.seed, enumeration(o));
  const gbg::Shape& shape = w.witness.shape();
  return {{{"value", w.value},
           {"lights_remaining", (shape.size() - w.value) / 2},
           {"witness", gbg::to_json(w.witness.signs())},
           {"budget", o.budget},
           {"seed", o.seed},
           {"method", "local_search"}},
          {}};
}

Output vector_norm(const Options& o) {
  const auto t = tensor_arg(o);
  return {gbg::to_json(gbg::alternating_ascent(gbg::to_complex(t), ascent_config(o)), o.seed), {}};
}

Output vector_grid(const Options& o) {
  const auto t = tensor_arg(o);
  json doc = gbg::to_json(gbg::phase_grid_lower_bound(gbg::to_complex(t), o.grid), o.seed);
  for (const char* key : {"seed", "sweeps", "restarts_used", "converged"}) doc.erase(key);
  doc["grid"] = o.grid;
  return {doc, {}};
}

Output vector_construct(const Options& o) {
  return {gbg::to_json(gbg::extremal_tensor(shape_arg(o))), {}};
}

Output vector_certify(const Options& o) {
  const bool construction = o.in.empty();
  const gbg::ComplexTensor t =
      construction ? gbg::extremal_tensor(shape_arg(o)).to_complex() : gbg::to_complex(tensor_arg(o));
  const gbg::NormEstimate est = gbg::alternating_ascent(t, ascent_config(o));
  json doc = gbg::sandwich_report(t.shape(), est, construction);
  doc["witness"] = gbg::to_json(est.witness);
  doc["seed"] = o.seed;
  doc["restarts"] = o.restarts;
  return {doc, {}};
}

Output avg_steinhaus(const Options& o) {
  gbg::ComplexTensor coeffs;
  std::vector<int> axes;
  if (!o.in.empty()) {
    coeffs = gbg::to_complex(tensor_arg(o));
    if (o.axes.empty()) {
      for (int k = 0; k < coeffs.shape().order(); ++k) axes.push_back(k);
    } else {
      for (int a : o.axes) axes.push_back(a - 1);
    }
  } else {
    if (o.coeffs.empty()) throw CLI::ValidationError("--in/--coeffs", "one of them is required");
    const Eigen::Map<const Eigen::VectorXd> v(o.coeffs.data(), static_cast<gbg::Index>(o.coeffs.size()));
    coeffs = gbg::ComplexTensor(gbg::Shape{v.size()}, v.cast<gbg::Complex>());
    axes = {0};
  }
  const auto est = gbg::steinhaus_average(coeffs, axes, o.samples, o.seed);
  json doc = gbg::to_json(est, o.seed);
  const double l2 = coeffs.data().norm();
  const int r = static_cast<int>(axes.size());
  doc["random_axes"] = r;
  // ℓ₂ of the effective tensor the average is taken over (fixed axes at phase 0).
  gbg::ComplexTensor effective = coeffs;
  if (r < coeffs.shape().order()) {
    std::vector<gbg::Index> dims = coeffs.shape().dims();
    Eigen::VectorXcd v = coeffs.data();
    std::vector<bool> random(coeffs.shape().order(), false);
    for (int a : axes) random[a] = true;
    for (int k = coeffs.shape().order() - 1; k >= 0; --k) {
      if (!random[k]) v = gbg::detail::contract_axis<gbg::Complex>(v, dims, k, Eigen::VectorXcd::Ones(dims[k]));
    }
    doc["l2"] = v.norm();
  } else {
    doc["l2"] = l2;
  }
  const double c = 2.0 / std::sqrt(std::numbers::pi);
  const double bound = std::pow(c, r) * (est.mean + est.half_width_95);
  doc["inequality"] = {{"exponent", r},
                       {"scaled_mean_upper", bound},
                       {"holds", doc["l2"].get<double>() <= bound}};
  if (r >= 2) {
    // The all-axes form with exponent r - 1 is not valid in general.
    const double literal = std::pow(c, r - 1) * (est.mean + est.half_width_95);
    doc["reduced_exponent_check"] = {{"exponent", r - 1},
                                     {"scaled_mean_upper", literal},
                                     {"holds", doc["l2"].get<double>() <= literal}};
  }
  return {doc, {}};
}

Output avg_rademacher(const Options& o) {
  if (o.coeffs.empty()) throw CLI::ValidationError("--coeffs", "is required");
  const Eigen::Map<const Eigen::VectorXd> v(o.coeffs.data(), static_cast<gbg::Index>(o.coeffs.size()));
  const double avg = gbg::rademacher_average_exact(v);
  return {{{"mean", avg}, {"l2", v.norm()}, {"n", v.size()}}, {}};
}

Output bounds_t6b(const Options& o) {
  const auto b = gbg::torus_sandwich_bounds(shape_arg(o));
  return {gbg::to_json(b), {b}};
}

Output bounds_t3a(const Options& o) {
  const auto b = gbg::anisotropic_sign_bounds(shape_arg(o));
  return {{{"sum_form", gbg::to_json(b.sum_form)}, {"max_form", gbg::to_json(b.max_form)}}, {b.sum_form, b.max_form}};
}

Output bounds_square(const Options& o) {
  const gbg::Index n = o.n > 0 ? o.n : (o.shape.empty() ? 0 : o.shape.front());
  if (n < 1) throw CLI::ValidationError("--n", "is required");
  const auto reports = gbg::square_sign_bounds(n);
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(gbg::to_json(r));
  return {{{"n", n}, {"reports", arr}}, reports};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gale-Berlekamp switching game toolkit"};
  app.require_subcommand(1);
  Options o;
  std::function<Output(const Options&)> command;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--out", o.out, "Write output to this file instead of stdout");
  };
  auto add_shape = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--shape", o.shape, "Comma-separated dims n1,...,nm")->delimiter(',');
    if (required) opt->required();
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, Output (*fn)(const Options&)) {
    CLI::App* c = parent->add_subcommand(name, help);
    c->callback([&command, fn] { command = fn; });
    add_format(c);
    return c;
  };

  CLI::App* classic = app.add_subcommand("classic", "Sign (light) game");
  classic->require_subcommand(1);
  {
    auto* c = leaf(classic, "solve", "Exact best imbalance of a sign tensor", classic_solve);
    c->add_option("--in", o.in, "Tensor file")->required();
    c->add_option("--threads", o.threads, "Worker threads");
    c = leaf(classic, "worst", "Exact worst pattern by orbit-normalized enumeration", classic_worst);
    add_shape(c, true);
    c->add_option("--threads", o.threads, "Worker threads");
    c = leaf(classic, "search", "Local-search upper estimate of the worst-pattern value", classic_search);
    add_shape(c, true);
    c->add_option("--budget", o.budget, "Pattern evaluations")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "Random seed");
  }

  CLI::App* vec = app.add_subcommand("vector", "Unimodular (vector) game");
  vec->require_subcommand(1);
  {
    auto add_ascent = [&](CLI::App* c) {
      c->add_option("--restarts", o.restarts, "Ascent restarts")->check(CLI::PositiveNumber);
      c->add_option("--seed", o.seed, "Random seed");
      c->add_option("--tol", o.tol, "Relative convergence tolerance per sweep");
      c->add_option("--max-sweeps", o.max_sweeps, "Sweep cap per restart");
    };
    auto* c = leaf(vec, "norm", "Torus norm lower bound by alternating phase ascent", vector_norm);
    c->add_option("--in", o.in, "Tensor file")->required();
    add_ascent(c);
    c = leaf(vec, "grid", "Phase-grid lower bound", vector_grid);
    c->add_option("--in", o.in, "Tensor file")->required();
    c->add_option("--grid", o.grid, "Phases per coordinate")->check(CLI::PositiveNumber);
    c = leaf(vec, "construct", "Chained Fourier extremal tensor", vector_construct);
    add_shape(c, true);
    c = leaf(vec, "certify", "Lower certificate / estimate / upper bound sandwich", vector_certify);
    add_shape(c, false);
    c->add_option("--in", o.in, "Tensor file (default: the extremal tensor of --shape)");
    add_ascent(c);
  }

  CLI::App* avg = app.add_subcommand("avg", "Khinchin-type averages");
  avg->require_subcommand(1);
  {
    auto* c = leaf(avg, "steinhaus", "Monte Carlo Steinhaus average", avg_steinhaus);
    c->add_option("--in", o.in, "Tensor file");
    c->add_option("--coeffs", o.coeffs, "Comma-separated real coefficients")->delimiter(',');
    c->add_option("--axes", o.axes, "1-based randomized axes (default: all)")->delimiter(',');
    c->add_option("--samples", o.samples, "Samples")->check(CLI::Range(std::int64_t{100}, std::int64_t{1} << 40));
    c->add_option("--seed", o.seed, "Random seed");
    c = leaf(avg, "rademacher", "Exact Rademacher first moment", avg_rademacher);
    c->add_option("--coeffs", o.coeffs, "Comma-separated real coefficients")->delimiter(',')->required();
  }

  CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->require_subcommand(1);
  {
    auto* c = leaf(bounds, "t6b", "Torus sandwich bounds", bounds_t6b);
    add_shape(c, true);
    c = leaf(bounds, "t3a", "Anisotropic sign-game bounds (sum and max forms)", bounds_t3a);
    add_shape(c, true);
    c = leaf(bounds, "square", "Square sign-game bounds", bounds_square);
    c->add_option("--n", o.n, "Board side")->check(CLI::PositiveNumber);
    add_shape(c, false);
  }

  bool serving = false;
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP game service");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port")->check(CLI::Range(1, 65535));
  serve->callback([&serving] { serving = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (serving) {
      gbg::GameStore store;
      std::cerr << "serving on http://" << o.host << ':' << o.port << "/api/v1\n";
      return gbg::serve(store, o.host, o.port) ? 0 : 1;
    }
    const auto start = std::chrono::steady_clock::now();
    const Output result = command(o);
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(result, o, elapsed);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const gbg::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
