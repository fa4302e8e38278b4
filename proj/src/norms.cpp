#include "bfnoise/norms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bfnoise/numeric.hpp"

namespace bfn {

namespace {

// 0^alpha is 0 for positive alpha and undefined otherwise.
double term_power(double value, double alpha) {
  if (value < 0.0) {
    throw std::domain_error("noise field value below zero");
  }
  if (value == 0.0) {
    if (alpha <= 0.0) {
      throw std::domain_error("zero field value with alpha <= 0");
    }
    return 0.0;
  }
  return pow_real(value, alpha);
}

void require_same_shape(const NoiseField& a, const NoiseField& b) {
  if (a.n != b.n || a.values.size() != b.values.size()) {
    throw std::invalid_argument("curve fields must live on the same cube");
  }
}

}  // namespace

CurveSpec CurveSpec::against_dictatorship(NoiseField field, bool symmetrized) {
  NoiseField baseline = dictatorship_field(field.n, field.p);
  return CurveSpec{std::move(field), std::move(baseline), symmetrized};
}

double power_sum(const NoiseField& field, double alpha) {
  CompensatedSum acc;
  for (double v : field.values) acc.add(term_power(v, alpha));
  return acc.value();
}

double power_sum_sym(const NoiseField& field, double alpha) {
  CompensatedSum acc;
  for (double v : field.values) {
    acc.add(term_power(v, alpha));
    acc.add(term_power(1.0 - v, alpha));
  }
  return acc.value();
}

double curve_value(const CurveSpec& spec, double alpha) {
  require_same_shape(spec.field_f, spec.field_f0);
  if (spec.symmetrized) {
    return power_sum_sym(spec.field_f, alpha) -
           power_sum_sym(spec.field_f0, alpha);
  }
  return power_sum(spec.field_f, alpha) - power_sum(spec.field_f0, alpha);
}

double deriv_at_one(const NoiseField& field, bool symmetrized) {
  CompensatedSum acc;
  for (double v : field.values) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::domain_error("field value at 0 or 1: log divergence");
    }
    acc.add(v * std::log2(v));
    if (symmetrized) acc.add((1.0 - v) * std::log2(1.0 - v));
  }
  return acc.value();
}

double mutual_information(const BooleanFunction& f, double p) {
  if (!f.is_balanced()) {
    throw std::invalid_argument(
        "mutual information requires a balanced function");
  }
  const NoiseField field = apply_noise_spectral(f, p);
  const double scale = 1.0 / static_cast<double>(field.values.size());
  return 1.0 + scale * deriv_at_one(field, true);
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("entropy argument outside [0, 1]");
  }
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double power_sum_two_spectral(const Spectrum& s, double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("crossover probability must lie in (0, 1/2)");
  }
  const double lambda = 1.0 - 2.0 * p;
  std::vector<double> eig(s.n + 1);
  for (int k = 0; k <= s.n; ++k) eig[k] = std::pow(lambda * lambda, k);

  CompensatedSum acc;
  acc.add(static_cast<double>(uint64_t{1} << s.n) / 4.0);
  for (uint64_t v = 1; v < s.coeffs.size(); ++v) {
    const double c = s.coeffs[v];
    acc.add(eig[std::popcount(v)] * c * c);
  }
  return acc.value();
}

}  // namespace bfn
