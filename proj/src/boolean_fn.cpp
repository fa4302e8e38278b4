#include "bfnoise/boolean_fn.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bfn {

namespace {

int dimension_for_length(uint64_t len) {
  if (len < 2 || len > (uint64_t{1} << kMaxDimension) ||
      !std::has_single_bit(len)) {
    throw std::invalid_argument(
        "truth table length must be a power of two in [2, 2^20]");
  }
  return std::countr_zero(len);
}

std::vector<uint64_t> make_words(int n) {
  const uint64_t len = uint64_t{1} << n;
  return std::vector<uint64_t>((len + 63) / 64, 0);
}

void set_bit(std::vector<uint64_t>& words, uint64_t x) {
  words[x >> 6] |= uint64_t{1} << (x & 63);
}

}  // namespace

BooleanFunction BooleanFunction::from_bits(std::span<const uint8_t> bits) {
  const int n = dimension_for_length(bits.size());
  auto words = make_words(n);
  for (uint64_t x = 0; x < bits.size(); ++x) {
    if (bits[x] > 1) {
      throw std::invalid_argument("truth table entries must be 0 or 1");
    }
    if (bits[x]) set_bit(words, x);
  }
  return BooleanFunction(n, std::move(words));
}

BooleanFunction BooleanFunction::from_packed(int n, uint64_t table) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument("packed tables require 1 <= n <= 6");
  }
  const uint64_t len = uint64_t{1} << n;
  if (n < 6 && (table >> len) != 0) {
    throw std::invalid_argument("packed table has bits beyond 2^n");
  }
  return BooleanFunction(n, {table});
}

BooleanFunction BooleanFunction::parse(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) {
    const std::string_view digits = text.substr(2);
    const uint64_t len = digits.size() * 4;
    const int n = dimension_for_length(len);
    auto words = make_words(n);
    // Most significant nibble first: digit 0 covers the top table indices.
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const char ch = digits[i];
      int nibble;
      if (ch >= '0' && ch <= '9') {
        nibble = ch - '0';
      } else if (ch >= 'a' && ch <= 'f') {
        nibble = ch - 'a' + 10;
      } else if (ch >= 'A' && ch <= 'F') {
        nibble = ch - 'A' + 10;
      } else {
        throw std::invalid_argument("invalid hex digit in truth table");
      }
      const uint64_t base = len - 4 * (i + 1);
      for (int b = 0; b < 4; ++b) {
        if (nibble & (1 << b)) set_bit(words, base + b);
      }
    }
    return BooleanFunction(n, std::move(words));
  }

  const int n = dimension_for_length(text.size());
  auto words = make_words(n);
  for (uint64_t x = 0; x < text.size(); ++x) {
    if (text[x] == '1') {
      set_bit(words, x);
    } else if (text[x] != '0') {
      throw std::invalid_argument("truth table string must be 0/1");
    }
  }
  return BooleanFunction(n, std::move(words));
}

BooleanFunction BooleanFunction::dictatorship(int n, int coordinate) {
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("dimension out of range");
  }
  if (coordinate < 1 || coordinate > n) {
    throw std::invalid_argument("dictatorship coordinate out of 1..n");
  }
  auto words = make_words(n);
  const uint64_t len = uint64_t{1} << n;
  const uint64_t bit = uint64_t{1} << (coordinate - 1);
  for (uint64_t x = 0; x < len; ++x) {
    if (x & bit) set_bit(words, x);
  }
  return BooleanFunction(n, std::move(words));
}

BooleanFunction BooleanFunction::majority(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("dimension out of range");
  }
  if (n % 2 == 0) {
    throw std::invalid_argument("majority requires odd n (ties undefined)");
  }
  auto words = make_words(n);
  const uint64_t len = uint64_t{1} << n;
  const int threshold = (n + 1) / 2;
  for (uint64_t x = 0; x < len; ++x) {
    if (std::popcount(x) >= threshold) set_bit(words, x);
  }
  return BooleanFunction(n, std::move(words));
}

uint64_t BooleanFunction::ones_count() const {
  uint64_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool BooleanFunction::is_balanced() const {
  return ones_count() == domain_size() / 2;
}

BooleanFunction BooleanFunction::complement() const {
  auto words = words_;
  for (auto& w : words) w = ~w;
  const uint64_t len = domain_size();
  if (len < 64) words.back() &= (uint64_t{1} << len) - 1;
  return BooleanFunction(n_, std::move(words));
}

uint64_t BooleanFunction::packed() const {
  if (n_ < 1 || n_ > 6) {
    throw std::invalid_argument("packed tables require 1 <= n <= 6");
  }
  return words_[0];
}

std::string BooleanFunction::to_binary_string() const {
  std::string out;
  const uint64_t len = domain_size();
  out.reserve(len);
  for (uint64_t x = 0; x < len; ++x) out.push_back((*this)(x) ? '1' : '0');
  return out;
}

std::string BooleanFunction::to_hex_string() const {
  if (n_ < 2) {
    throw std::invalid_argument("hex form requires n >= 2");
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  const uint64_t len = domain_size();
  std::string out = "0x";
  for (uint64_t base = len; base >= 4; base -= 4) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      if ((*this)(base - 4 + b)) nibble |= 1 << b;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

bool BooleanFunction::lex_less(const BooleanFunction& a,
                               const BooleanFunction& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff) {
      // First differing table index is the lowest set bit of the word diff.
      const int bit = std::countr_zero(diff);
      return ((a.words_[i] >> bit) & 1) == 0;
    }
  }
  return false;
}

namespace {

void fwht_inplace(std::vector<double>& v) {
  const std::size_t size = v.size();
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t i = 0; i < size; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

}  // namespace

Spectrum wht(const BooleanFunction& f) {
  const uint64_t len = f.domain_size();
  std::vector<double> v(len);
  for (uint64_t x = 0; x < len; ++x) v[x] = f(x);
  fwht_inplace(v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(len));
  for (auto& c : v) c *= scale;
  return Spectrum{f.dimension(), std::move(v)};
}

std::vector<double> inverse_wht(const Spectrum& s) {
  if (s.coeffs.size() != (uint64_t{1} << s.n)) {
    throw std::invalid_argument("spectrum length must be 2^n");
  }
  std::vector<double> v = s.coeffs;
  fwht_inplace(v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (auto& c : v) c *= scale;
  return v;
}

}  // namespace bfn
