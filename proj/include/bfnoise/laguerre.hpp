#pragma once

#include <vector>

#include "bfnoise/noise.hpp"

namespace bfn {

struct ExpTerm {
  double exponent;  // c_i, strictly increasing across the term list
  double coeff;     // A_i, nonzero
};

inline constexpr double kDefaultMergeTol = 1e-12;

/// Canonical exponential sum  sum_i A_i e^{c_i alpha}  with strictly
/// increasing exponents (gap > merge_tol * max(1,|c|)) and nonzero
/// coefficients.
class ExpSum {
public:
  ExpSum() = default;

  /// Sorts, merges exponents within merge_tol (relative), sums coefficients
  /// and drops exact-zero sums.
  static ExpSum from_terms(std::vector<ExpTerm> raw,
                           double merge_tol = kDefaultMergeTol);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  double merge_tol() const { return merge_tol_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

private:
  friend ExpSum build_expsum(const NoiseField&, const NoiseField&, bool);
  std::vector<ExpTerm> terms_;
  double merge_tol_ = kDefaultMergeTol;
};

/// Exponential-sum form of the difference curve: one +1 term at ln t per
/// f-value t (plus ln(1-t) when symmetrized), one -1 term per baseline value
/// likewise. Coefficients are accumulated as integers so cancellation is
/// exact; all participating values must lie strictly in (0,1).
ExpSum build_expsum(const NoiseField& field_f, const NoiseField& field_f0,
                    bool symmetrized);

/// Sign flips between consecutive coefficients in exponent order. Bounds the
/// number of real zeros of the sum, counted with multiplicity.
int sign_changes(const ExpSum& s);

/// sum_i A_i e^{c_i alpha}, compensated. Throws when any |c_i * alpha| would
/// exceed the representable exponent range.
double evaluate(const ExpSum& s, double alpha);
double evaluate_derivative(const ExpSum& s, double alpha);

/// sum_i |A_i| e^{c_i alpha}: the local scale against which cancellation in
/// evaluate() happens.
double magnitude(const ExpSum& s, double alpha);

struct Crossing {
  double location;
  bool refined;  // bisection + derivative polish applied
};

struct Tangency {
  double location;
  double residual;  // near-zero value at the candidate (signed)
};

inline constexpr double kDefaultScanLo = -8.0;
inline constexpr double kDefaultScanHi = 12.0;
inline constexpr double kDefaultGridStep = 1e-3;
inline constexpr double kDefaultRefineTol = 1e-12;
/// Relative to the local magnitude: candidates below this without a sign
/// flip are reported as even-order zero candidates.
inline constexpr double kTangencyTol = 1e-7;
/// Below this (relative) a grid value is treated as an exact zero.
inline constexpr double kExactZeroTol = 1e-12;

struct ZeroReport {
  int sign_change_bound = 0;
  std::vector<Crossing> crossings;    // sorted by location
  std::vector<Tangency> tangencies;   // sorted by location
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double grid_step = 0.0;
  /// Signs of the sum as alpha -> -inf / +inf, read off the extreme-exponent
  /// coefficients (0 for the empty sum).
  int sign_toward_minus_inf = 0;
  int sign_toward_plus_inf = 0;
  /// The end-of-scan sign differs from the asymptotic sign, certifying a
  /// crossing outside the scanned range.
  bool far_crossing_below_lo = false;
  bool far_crossing_beyond_hi = false;
};

/// Scans the grid for sign changes of evaluate(); brackets are refined by
/// bisection to width refine_tol and polished with the analytic derivative.
/// Grid points that dip below kTangencyTol * magnitude without a sign flip
/// are reported as tangency candidates with their residual.
ZeroReport find_zeros(const ExpSum& s, double alpha_lo, double alpha_hi,
                      double grid_step = kDefaultGridStep,
                      double refine_tol = kDefaultRefineTol);

}  // namespace bfn
