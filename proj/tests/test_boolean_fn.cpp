#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "bfnoise/boolean_fn.hpp"

using bfn::BooleanFunction;
using bfn::Spectrum;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  const uint64_t len = uint64_t{1} << n;
  std::vector<uint8_t> bits(len);
  for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1);
  return BooleanFunction::from_bits(bits);
}

BooleanFunction random_balanced(int n, std::mt19937_64& rng) {
  const uint64_t len = uint64_t{1} << n;
  std::vector<uint8_t> bits(len, 0);
  std::vector<uint64_t> idx(len);
  for (uint64_t i = 0; i < len; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (uint64_t i = 0; i < len / 2; ++i) bits[idx[i]] = 1;
  return BooleanFunction::from_bits(bits);
}

}  // namespace

TEST_CASE("from_bits constructs tables and validates input") {
  const std::vector<uint8_t> dict1{0, 1};
  CHECK(BooleanFunction::from_bits(dict1) == BooleanFunction::dictatorship(1, 1));

  const std::vector<uint8_t> maj{0, 0, 0, 1, 0, 1, 1, 1};
  CHECK(BooleanFunction::from_bits(maj) == BooleanFunction::majority(3));

  const std::vector<uint8_t> six(6, 0);
  CHECK_THROWS_AS(BooleanFunction::from_bits(six), std::invalid_argument);
  const std::vector<uint8_t> one(1, 0);
  CHECK_THROWS_AS(BooleanFunction::from_bits(one), std::invalid_argument);
  const std::vector<uint8_t> bad{0, 2};
  CHECK_THROWS_AS(BooleanFunction::from_bits(bad), std::invalid_argument);
}

TEST_CASE("parse accepts binary strings and hex") {
  const BooleanFunction maj = BooleanFunction::majority(3);
  CHECK(BooleanFunction::parse("00010111") == maj);
  CHECK(BooleanFunction::parse("0xe8") == maj);
  CHECK(BooleanFunction::parse("0XE8") == maj);
  CHECK(maj.to_binary_string() == "00010111");
  CHECK(maj.to_hex_string() == "0xe8");
  CHECK(BooleanFunction::parse(maj.to_hex_string()) == maj);

  CHECK_THROWS_AS(BooleanFunction::parse("011"), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::parse("01a1"), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::parse("0xzz"), std::invalid_argument);
}

TEST_CASE("dictatorship reads the requested coordinate") {
  const BooleanFunction d = BooleanFunction::dictatorship(1, 1);
  CHECK(d.to_binary_string() == "01");

  const BooleanFunction d31 = BooleanFunction::dictatorship(3, 1);
  for (uint64_t x = 0; x < 8; ++x) CHECK(d31(x) == static_cast<int>(x & 1));
  CHECK(d31.is_balanced());

  CHECK_THROWS_AS(BooleanFunction::dictatorship(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::dictatorship(3, 0), std::invalid_argument);
}

TEST_CASE("majority thresholds at half the coordinates") {
  CHECK(BooleanFunction::majority(3).to_binary_string() == "00010111");
  CHECK(BooleanFunction::majority(1) == BooleanFunction::dictatorship(1, 1));
  CHECK(BooleanFunction::majority(3).is_balanced());
  CHECK(BooleanFunction::majority(5).is_balanced());
  CHECK_THROWS_AS(BooleanFunction::majority(2), std::invalid_argument);
}

TEST_CASE("is_balanced counts ones") {
  CHECK(BooleanFunction::majority(3).is_balanced());
  CHECK_FALSE(BooleanFunction::parse("00000000").is_balanced());
  CHECK(BooleanFunction::dictatorship(4, 2).is_balanced());
}

TEST_CASE("complement flips the table") {
  const BooleanFunction maj = BooleanFunction::majority(3);
  CHECK(maj.complement().to_binary_string() == "11101000");
  CHECK(maj.complement().complement() == maj);
  CHECK(BooleanFunction::dictatorship(3, 1).complement().is_balanced());
}

TEST_CASE("wht matches the defining inner product on anchors") {
  std::mt19937_64 rng(0x5eed001);

  const BooleanFunction maj = BooleanFunction::majority(3);
  const Spectrum s = wht(maj);
  CHECK(s.coeffs[0] == doctest::Approx(4.0 / std::sqrt(8.0)).epsilon(1e-12));

  for (int n : {2, 3, 5}) {
    for (int i = 1; i <= n; ++i) {
      const Spectrum ds = wht(BooleanFunction::dictatorship(n, i));
      const double len = static_cast<double>(uint64_t{1} << n);
      for (uint64_t v = 0; v < ds.coeffs.size(); ++v) {
        const double sq = ds.coeffs[v] * ds.coeffs[v];
        if (v == 0 || v == (uint64_t{1} << (i - 1))) {
          CHECK(sq == doctest::Approx(len / 4.0).epsilon(1e-12));
        } else {
          CHECK(std::abs(ds.coeffs[v]) < 1e-12);
        }
      }
    }
  }

  const Spectrum zero = wht(BooleanFunction::parse("0000"));
  for (double c : zero.coeffs) CHECK(c == 0.0);

  (void)rng;
}

TEST_CASE("wht round trip reconstructs the table") {
  std::mt19937_64 rng(0x5eed002);
  for (int n = 1; n <= 10; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      const BooleanFunction f = random_function(n, rng);
      const std::vector<double> values = inverse_wht(wht(f));
      for (uint64_t x = 0; x < f.domain_size(); ++x) {
        CHECK(std::abs(values[x] - f(x)) < 1e-12);
      }
    }
  }
}

TEST_CASE("Parseval holds for random functions") {
  std::mt19937_64 rng(0x5eed003);
  for (int n = 1; n <= 10; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const BooleanFunction f = random_function(n, rng);
      const Spectrum s = wht(f);
      double lhs = 0.0;
      for (uint64_t x = 0; x < f.domain_size(); ++x) lhs += f(x);
      double rhs = 0.0;
      for (double c : s.coeffs) rhs += c * c;
      CHECK(std::abs(lhs - rhs) < std::pow(2.0, n) * 1e-12);
    }
  }
}

TEST_CASE("balanced functions carry energy 2^{n-1}") {
  std::mt19937_64 rng(0x5eed004);
  for (int n = 1; n <= 8; ++n) {
    const BooleanFunction f = random_balanced(n, rng);
    const Spectrum s = wht(f);
    CHECK(s.coeffs[0] ==
          doctest::Approx(std::pow(2.0, n - 1) / std::sqrt(std::pow(2.0, n)))
              .epsilon(1e-12));
    double energy = 0.0;
    for (double c : s.coeffs) energy += c * c;
    CHECK(std::abs(energy - std::pow(2.0, n - 1)) < 1e-9);
  }
}

TEST_CASE("complement negates every non-DC coefficient") {
  std::mt19937_64 rng(0x5eed005);
  for (int n = 1; n <= 6; ++n) {
    const BooleanFunction f = random_function(n, rng);
    const Spectrum s = wht(f);
    const Spectrum sc = wht(f.complement());
    for (uint64_t v = 1; v < s.coeffs.size(); ++v) {
      CHECK(sc.coeffs[v] == doctest::Approx(-s.coeffs[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("lex_less orders truth tables index 0 first") {
  const BooleanFunction a = BooleanFunction::parse("0100");
  const BooleanFunction b = BooleanFunction::parse("0011");
  // First difference at index 1: a has 1 there, b has 0.
  CHECK(BooleanFunction::lex_less(b, a));
  CHECK_FALSE(BooleanFunction::lex_less(a, b));
  CHECK_FALSE(BooleanFunction::lex_less(a, a));
}
