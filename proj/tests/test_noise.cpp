#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "bfnoise/noise.hpp"

using bfn::BooleanFunction;
using bfn::NoiseField;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  const uint64_t len = uint64_t{1} << n;
  std::vector<uint8_t> bits(len);
  for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1);
  return BooleanFunction::from_bits(bits);
}

}  // namespace

TEST_CASE("dictatorship field takes p where the coordinate is 0") {
  for (int n : {1, 3, 5}) {
    for (int i = 1; i <= n; ++i) {
      const double p = 0.21;
      const NoiseField field =
          bfn::apply_noise_direct(BooleanFunction::dictatorship(n, i), p);
      const uint64_t bit = uint64_t{1} << (i - 1);
      for (uint64_t x = 0; x < field.values.size(); ++x) {
        const double expected = (x & bit) ? 1.0 - p : p;
        CHECK(field.values[x] == doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("majority(3) at all-ones matches the closed form") {
  const double p = 0.21;
  const NoiseField field =
      bfn::apply_noise_direct(BooleanFunction::majority(3), p);
  const double q = 1.0 - p;
  CHECK(field.values[7] ==
        doctest::Approx(q * q * q + 3.0 * p * q * q).epsilon(1e-14));
}

TEST_CASE("the kernel sums to one on the constant-one function") {
  const NoiseField field =
      bfn::apply_noise_direct(BooleanFunction::parse("11111111"), 0.3);
  for (double v : field.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("crossover probability must lie in (0, 1/2)") {
  const BooleanFunction f = BooleanFunction::majority(3);
  for (double p : {0.0, 0.5, -0.1, 0.7}) {
    CHECK_THROWS_AS(bfn::apply_noise_direct(f, p), std::invalid_argument);
    CHECK_THROWS_AS(bfn::apply_noise_spectral(f, p), std::invalid_argument);
    CHECK_THROWS_AS(bfn::dictatorship_field(3, p), std::invalid_argument);
  }
}

TEST_CASE("spectral route agrees with direct convolution") {
  std::mt19937_64 rng(0x5eed010);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const BooleanFunction f = random_function(n, rng);
      for (double p : {0.05, 0.25, 0.45}) {
        const NoiseField direct = bfn::apply_noise_direct(f, p);
        const NoiseField spectral = bfn::apply_noise_spectral(f, p);
        for (uint64_t x = 0; x < direct.values.size(); ++x) {
          CHECK(std::abs(direct.values[x] - spectral.values[x]) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("spectral field of dictatorship(2,1) at p=0.25") {
  const NoiseField field =
      bfn::apply_noise_spectral(BooleanFunction::dictatorship(2, 1), 0.25);
  const std::vector<double> expected{0.25, 0.75, 0.25, 0.75};
  for (int x = 0; x < 4; ++x) {
    CHECK(field.values[x] == doctest::Approx(expected[x]).epsilon(1e-14));
  }
}

TEST_CASE("complement_field matches the noise field of 1-f") {
  std::mt19937_64 rng(0x5eed011);
  for (int n : {2, 4, 6}) {
    const BooleanFunction f = random_function(n, rng);
    const double p = 0.17;
    const NoiseField a = bfn::complement_field(bfn::apply_noise_direct(f, p));
    const NoiseField b = bfn::apply_noise_direct(f.complement(), p);
    for (uint64_t x = 0; x < a.values.size(); ++x) {
      CHECK(std::abs(a.values[x] - b.values[x]) < 1e-14);
    }
    const NoiseField twice = bfn::complement_field(a);
    const NoiseField original = bfn::apply_noise_direct(f, p);
    for (uint64_t x = 0; x < twice.values.size(); ++x) {
      CHECK(std::abs(twice.values[x] - original.values[x]) < 1e-15);
    }
  }
}

TEST_CASE("dictatorship complement keeps the {p, 1-p} multiset") {
  const double p = 0.31;
  const NoiseField field = bfn::dictatorship_field(3, p);
  NoiseField flipped = bfn::complement_field(field);
  std::vector<double> a = field.values;
  std::vector<double> b = flipped.values;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) < 1e-15);
  }
}

TEST_CASE("the analytic baseline is exactly the {p, 1-p} multiset") {
  const double p = 0.4;
  for (int n : {1, 2, 5}) {
    const NoiseField field = bfn::dictatorship_field(n, p);
    const uint64_t half = field.values.size() / 2;
    uint64_t count_p = 0;
    for (double v : field.values) {
      CHECK((v == p || v == 1.0 - p));
      if (v == p) ++count_p;
    }
    CHECK(count_p == half);
  }
}

TEST_CASE("field totals follow the law of total probability") {
  std::mt19937_64 rng(0x5eed012);
  for (int n = 1; n <= 8; ++n) {
    const BooleanFunction f = random_function(n, rng);
    for (double p : {0.05, 0.45}) {
      const NoiseField field = bfn::apply_noise_spectral(f, p);
      double total = 0.0;
      for (double v : field.values) total += v;
      const double expected = static_cast<double>(f.ones_count());
      CHECK(std::abs(total - expected) < std::pow(2.0, n) * 1e-12);
    }
  }
}

TEST_CASE("the spectral route handles the n=20 cap") {
  const double p = 0.37;
  const NoiseField field =
      bfn::apply_noise_spectral(BooleanFunction::dictatorship(20, 7), p);
  CHECK(field.values.size() == (uint64_t{1} << 20));
  const uint64_t bit = uint64_t{1} << 6;
  for (uint64_t x : {uint64_t{0}, bit, uint64_t{123456}, (uint64_t{1} << 20) - 1}) {
    const double expected = (x & bit) ? 1.0 - p : p;
    CHECK(std::abs(field.values[x] - expected) < 1e-12);
  }
  CHECK_THROWS_AS(BooleanFunction::dictatorship(21, 1), std::invalid_argument);
}

TEST_CASE("balanced fields stay strictly inside (0,1)") {
  std::mt19937_64 rng(0x5eed013);
  for (int n = 1; n <= 6; ++n) {
    std::vector<uint8_t> bits(uint64_t{1} << n, 0);
    for (uint64_t i = 0; i < bits.size() / 2; ++i) bits[i] = 1;
    std::shuffle(bits.begin(), bits.end(), rng);
    const BooleanFunction f = BooleanFunction::from_bits(bits);
    if (!f.is_balanced()) continue;
    const NoiseField field = bfn::apply_noise_direct(f, 0.05);
    for (double v : field.values) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
}
