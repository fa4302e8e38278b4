#include "bfnoise/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bfnoise/numeric.hpp"

namespace bfn {

namespace {

void require_probability(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("crossover probability must lie in (0, 1/2)");
  }
}

}  // namespace

NoiseField apply_noise_direct(const BooleanFunction& f, double p) {
  require_probability(p);
  const int n = f.dimension();
  const uint64_t len = f.domain_size();

  // Kernel weight by Hamming distance.
  std::vector<double> weight(n + 1);
  for (int k = 0; k <= n; ++k) {
    weight[k] = std::pow(p, k) * std::pow(1.0 - p, n - k);
  }

  std::vector<uint64_t> ones;
  ones.reserve(f.ones_count());
  for (uint64_t y = 0; y < len; ++y) {
    if (f(y)) ones.push_back(y);
  }

  std::vector<double> values(len);
  for (uint64_t x = 0; x < len; ++x) {
    CompensatedSum acc;
    for (uint64_t y : ones) {
      acc.add(weight[std::popcount(x ^ y)]);
    }
    values[x] = acc.value();
  }
  return NoiseField{n, p, std::move(values)};
}

NoiseField apply_noise_spectral(const BooleanFunction& f, double p) {
  require_probability(p);
  const int n = f.dimension();
  const uint64_t len = f.domain_size();

  std::vector<double> v(len);
  for (uint64_t x = 0; x < len; ++x) v[x] = f(x);

  // Two unnormalized transforms compose to 2^n times the identity, so the
  // eigenvalue pass is scaled by 1/2^n at the end.
  for (std::size_t half = 1; half < len; half <<= 1) {
    for (std::size_t i = 0; i < len; i += half << 1) {
      for (std::size_t j = i; j < i + half; ++j) {
        const double a = v[j];
        const double b = v[j + half];
        v[j] = a + b;
        v[j + half] = a - b;
      }
    }
  }

  std::vector<double> eig(n + 1);
  for (int k = 0; k <= n; ++k) eig[k] = std::pow(1.0 - 2.0 * p, k);
  for (uint64_t w = 0; w < len; ++w) v[w] *= eig[std::popcount(w)];

  for (std::size_t half = 1; half < len; half <<= 1) {
    for (std::size_t i = 0; i < len; i += half << 1) {
      for (std::size_t j = i; j < i + half; ++j) {
        const double a = v[j];
        const double b = v[j + half];
        v[j] = a + b;
        v[j + half] = a - b;
      }
    }
  }

  const double scale = 1.0 / static_cast<double>(len);
  for (auto& x : v) x *= scale;
  return NoiseField{n, p, std::move(v)};
}

NoiseField complement_field(const NoiseField& field) {
  NoiseField out{field.n, field.p, field.values};
  for (auto& v : out.values) v = 1.0 - v;
  return out;
}

NoiseField dictatorship_field(int n, double p) {
  require_probability(p);
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("dimension out of range");
  }
  const uint64_t len = uint64_t{1} << n;
  std::vector<double> values(len);
  for (uint64_t x = 0; x < len; ++x) {
    values[x] = (x & 1) ? 1.0 - p : p;
  }
  return NoiseField{n, p, std::move(values)};
}

}  // namespace bfn
