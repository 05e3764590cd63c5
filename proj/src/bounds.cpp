#include "gbg/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gbg {

std::string to_string(BoundSource source) {
  switch (source) {
    case BoundSource::TorusSandwich: return "torus_sandwich";
    case BoundSource::AnisotropicSum: return "anisotropic_sum";
    case BoundSource::AnisotropicMax: return "anisotropic_max";
    case BoundSource::CentralLimit: return "central_limit";
    case BoundSource::SquareSandwich: return "square_sandwich";
  }
  return "unknown";
}

namespace {

BoundReport make_report(const Shape& shape, BoundSource source, double normalizer, double lower_constant,
                        double upper_constant) {
  BoundReport r;
  r.shape = shape;
  r.source = source;
  r.normalizer = normalizer;
  r.lower_constant = lower_constant;
  r.upper_constant = upper_constant;
  r.lower = lower_constant * normalizer;
  r.upper = upper_constant * normalizer;
  return r;
}

double sqrt_volume(const Shape& shape) { return std::sqrt(static_cast<double>(shape.size())); }

}  // namespace

double torus_normalizer(const Shape& shape) {
  return sqrt_volume(shape) * std::sqrt(static_cast<double>(shape.max_dim()));
}

BoundReport torus_sandwich_bounds(const Shape& shape) {
  return make_report(shape, BoundSource::TorusSandwich, torus_normalizer(shape),
                     std::pow(steinhaus_constant(), shape.order() - 1), 1.0);
}

AnisotropicBounds anisotropic_sign_bounds(const Shape& shape) {
  const int m = shape.order();
  if (m < 2) throw DimensionError("anisotropic bounds need at least two axes");
  const double lower_c = 1.0 / (m * std::pow(std::numbers::sqrt2, m - 1));
  const double upper_c = 8.0 * std::sqrt(std::tgamma(m + 1.0)) * std::sqrt(std::log(1.0 + 4.0 * m));
  double root_sum = 0.0;
  for (Index d : shape.dims()) root_sum += std::sqrt(static_cast<double>(d));
  return {make_report(shape, BoundSource::AnisotropicSum, sqrt_volume(shape) * root_sum, lower_c, upper_c),
          make_report(shape, BoundSource::AnisotropicMax, torus_normalizer(shape), lower_c, m * upper_c)};
}

std::vector<BoundReport> square_sign_bounds(Index n) {
  if (n < 1) throw std::invalid_argument("square bounds need n >= 1");
  const Shape shape{n, n};
  const double scale = std::pow(static_cast<double>(n), 1.5);
  const double upper_c = 8.0 * std::sqrt(2.0 * std::log(9.0));
  BoundReport sandwich = make_report(shape, BoundSource::SquareSandwich, scale, 1.0 / std::numbers::sqrt2, upper_c);
  BoundReport clt =
      make_report(shape, BoundSource::CentralLimit, scale, std::sqrt(2.0 / std::numbers::pi), upper_c);
  clt.asymptotic = true;
  return {sandwich, clt};
}

nlohmann::json sandwich_report(const Shape& shape, const NormEstimate& estimate, bool construction) {
  estimate.witness.check_against(shape);
  const BoundReport b = torus_sandwich_bounds(shape);
  const double lower = unimodular_lower_certificate(shape);
  const bool lower_ok = lower <= estimate.value;
  const bool upper_ok = estimate.value <= b.upper * (1.0 + 1e-9);
  nlohmann::json j;
  j["shape"] = shape.dims();
  j["lower_certificate"] = lower;
  j["estimate"] = estimate.value;
  j["upper"] = b.upper;
  j["normalizer"] = b.normalizer;
  j["ratios"] = {{"lower", lower / b.normalizer}, {"estimate", estimate.value / b.normalizer}, {"upper", 1.0}};
  j["construction"] = construction;
  j["pass"] = {{"lower", lower_ok},
               {"upper", construction ? nlohmann::json(upper_ok) : nlohmann::json(nullptr)},
               {"all", lower_ok && (!construction || upper_ok)}};
  return j;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  j["shape"] = report.shape.dims();
  j["source"] = to_string(report.source);
  j["lower"] = report.lower;
  j["upper"] = report.upper;
  j["normalizer"] = report.normalizer;
  j["lower_constant"] = report.lower_constant;
  j["upper_constant"] = report.upper_constant;
  if (report.asymptotic) j["asymptotic"] = "lower constant holds only up to an unquantified o(1); not a finite-n bound";
  return j;
}

std::string csv_header() { return "shape,source,lower,upper,normalizer"; }

std::string to_csv_row(const BoundReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << report.shape.to_string() << ',' << to_string(report.source) << ',' << report.lower << ',' << report.upper
     << ',' << report.normalizer;
  return os.str();
}

}  // namespace gbg
