#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bfn {

inline constexpr int kMaxDimension = 20;

/// Truth table of f: {0,1}^n -> {0,1} as a packed bit vector of length 2^n.
/// Bit j-1 of the integer index x holds the coordinate x_j, so the Hamming
/// distance between two inputs is popcount(x ^ y).
class BooleanFunction {
public:
  BooleanFunction() = default;

  /// bits[x] = f(x); length must be a power of two in [2, 2^20].
  static BooleanFunction from_bits(std::span<const uint8_t> bits);

  /// Table packed into a single word, bit x = f(x). Requires n <= 6.
  static BooleanFunction from_packed(int n, uint64_t table);

  /// Accepts a '0'/'1' string (index 0 first) or hex with "0x" prefix
  /// (most significant nibble first, 4 table bits per digit).
  static BooleanFunction parse(std::string_view text);

  /// f(x) = x_coordinate, coordinate in 1..n.
  static BooleanFunction dictatorship(int n, int coordinate);

  /// f(x) = 1 iff the input has Hamming weight >= ceil(n/2); n must be odd.
  static BooleanFunction majority(int n);

  int dimension() const { return n_; }
  uint64_t domain_size() const { return uint64_t{1} << n_; }

  int operator()(uint64_t x) const {
    return static_cast<int>((words_[x >> 6] >> (x & 63)) & 1u);
  }

  uint64_t ones_count() const;
  bool is_balanced() const;
  BooleanFunction complement() const;

  /// Packed table, bit x = f(x). Requires n <= 6.
  uint64_t packed() const;

  std::string to_binary_string() const;
  /// Requires n >= 2 so the table fills whole nibbles.
  std::string to_hex_string() const;

  bool operator==(const BooleanFunction&) const = default;

  /// Order on truth tables read as strings with index 0 first.
  static bool lex_less(const BooleanFunction& a, const BooleanFunction& b);

private:
  BooleanFunction(int n, std::vector<uint64_t> words)
      : n_(n), words_(std::move(words)) {}

  int n_ = 0;
  std::vector<uint64_t> words_;
};

/// The 2^n Walsh-Fourier coefficients in the orthonormal convention
/// W_v(y) = 2^{-n/2} (-1)^{<v,y>}.
struct Spectrum {
  int n = 0;
  std::vector<double> coeffs;
};

/// coeffs[v] = 2^{-n/2} sum_y f(y) (-1)^{<v,y>}, via the O(n 2^n) butterfly.
Spectrum wht(const BooleanFunction& f);

/// Field values sum_v coeffs[v] W_v(y); the transform is an involution, so
/// this reconstructs the truth table of wht(f) up to rounding.
std::vector<double> inverse_wht(const Spectrum& s);

}  // namespace bfn
