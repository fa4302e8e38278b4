#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bfnoise/boolean_fn.hpp"
#include "bfnoise/laguerre.hpp"
#include "bfnoise/norms.hpp"

namespace bfn {

enum class Conjecture { kCkUnsym = 0, kCk = 1, kLm = 2, kLmSym = 3 };

std::string_view conjecture_name(Conjecture c);  // CK_unsym, CK, LM, LM_sym

struct ConjectureVerdict {
  Conjecture conjecture = Conjecture::kCkUnsym;
  bool holds = true;
  /// Minimum slack over the tested grid; for the norm conjectures the max of
  /// the difference curve over [1,2], negated.
  double margin = 0.0;
  std::optional<double> witness_alpha;  // present when the verdict fails
  double p = 0.0;
};

inline constexpr double kSlackTol = 1e-9;
/// |value| below this counts as equality in the second-moment comparison.
inline constexpr double kEqualityTol = 1e-12;
/// Crossings inside (1 + margin, 2 - margin) count as interior.
inline constexpr double kInteriorMargin = 1e-6;

/// Coordinate permutations, input-coordinate complementations and output
/// complementation acting on packed truth tables, with per-element vertex
/// maps precomputed. Direct enumeration; n <= 6.
class SymmetryGroup {
public:
  explicit SymmetryGroup(int n);

  int dimension() const { return n_; }
  /// 2^n * n! input transforms; output complementation handled separately.
  std::size_t input_size() const { return vertex_maps_.size(); }

  uint64_t image(uint64_t table, std::size_t element) const;
  /// Lexicographically minimal table over the full orbit (including output
  /// complementation).
  uint64_t canonical(uint64_t table) const;
  /// True iff table is its own canonical form; early-exits per element.
  bool is_canonical(uint64_t table) const;

private:
  int n_ = 0;
  uint64_t domain_ = 0;
  uint64_t full_mask_ = 0;
  std::vector<std::array<uint8_t, 64>> vertex_maps_;
};

/// Lexicographically minimal truth table over the orbit of f under
/// coordinate permutations, input complementations and output
/// complementation. All conjecture quantities are invariant on the orbit.
/// Requires n <= 6.
BooleanFunction canonical_form(const BooleanFunction& f);

/// Apply one cube symmetry at any dimension: result(x) = f(pi(x) ^ input_xor)
/// xor output_complement, where bit i of pi(x) is bit perm[i] of x.
BooleanFunction apply_symmetry(const BooleanFunction& f,
                               std::span<const int> perm, uint64_t input_xor,
                               bool output_complement);

/// True iff f equals some dictatorship or its complement.
bool on_dictatorship_orbit(const BooleanFunction& f);

/// Visits every truth table with popcount 2^{n-1} (or one orbit
/// representative when reduced) in ascending packed-table order. The visitor
/// returns false to stop early. n <= 5.
void for_each_balanced(int n, bool reduce_symmetry,
                       const std::function<bool(const BooleanFunction&)>& visit);

std::vector<BooleanFunction> enumerate_balanced(int n, bool reduce_symmetry);

std::vector<double> default_p_grid();          // 0.05, 0.10, ..., 0.45
std::vector<double> make_alpha_grid(double step);  // [1,2] incl. endpoints

/// One verdict per conjecture plus the second-moment comparison and zero
/// structure for a single (f, p) pair.
struct FunctionRecord {
  std::array<ConjectureVerdict, 4> verdicts;
  double g2_plain = 0.0;  // difference curve at alpha = 2
  double g2_sym = 0.0;
  bool dictatorship_orbit = false;
  int sign_change_bound = 0;
  /// A refined crossing strictly inside (1,2) for either curve.
  bool interior_crossing = false;
  double interior_crossing_alpha = 0.0;
  /// Filled when the full-range scan is enabled.
  int scan_crossings = -1;
  int scan_tangencies = -1;
  bool zero_bound_ok = true;
};

struct ScanOptions {
  bool enabled = false;
  double lo = kDefaultScanLo;
  double hi = kDefaultScanHi;
  double step = kDefaultGridStep;
};

/// The norm-conjecture verdict for an arbitrary curve (exposed so harness
/// tests can feed a corrupted baseline).
ConjectureVerdict check_curve(const CurveSpec& spec,
                              std::span<const double> alpha_grid,
                              double slack_tol, Conjecture id);

std::array<ConjectureVerdict, 4> check_function(
    const BooleanFunction& f, double p, std::span<const double> alpha_grid,
    double slack_tol = kSlackTol);

FunctionRecord check_function_record(const BooleanFunction& f, double p,
                                     std::span<const double> alpha_grid,
                                     double slack_tol = kSlackTol,
                                     const ScanOptions& scan = {});

struct Counterexample {
  std::string truth_table;  // hex for n >= 2, else binary
  int n = 0;
  double p = 0.0;
  Conjecture conjecture = Conjecture::kCkUnsym;
  double witness_alpha = 0.0;
  double margin = 0.0;
};

struct Lemma1Violation {
  std::string truth_table;
  double p = 0.0;
  bool symmetrized = false;
  double value = 0.0;  // offending curve value at alpha = 2
};

struct ZeroBoundViolation {
  std::string truth_table;
  double p = 0.0;
  int crossings = 0;
  int tangencies = 0;
  int sign_change_bound = 0;
};

struct VerifyOptions {
  int n = 3;
  std::vector<double> p_grid = default_p_grid();
  double alpha_step = 1.0 / 64.0;
  bool reduce_symmetry = false;
  int workers = 1;
  double slack_tol = kSlackTol;
  ScanOptions scan;  // full-range zero scan + bound check per (f, p)
};

struct VerificationReport {
  int n = 0;
  std::vector<double> p_grid;
  double alpha_step = 0.0;
  bool reduce_symmetry = false;
  uint64_t functions_tested = 0;
  uint64_t orbit_representatives = 0;  // 0 when not computed
  bool all_hold = true;
  std::array<double, 4> worst_margin{};  // min margin per conjecture
  std::vector<Counterexample> counterexamples;
  std::vector<Lemma1Violation> lemma1_violations;
  std::vector<ZeroBoundViolation> zero_bound_violations;
  uint64_t implication_violations = 0;
  /// crossings + 2*tangencies observed per (f,p) when the scan is enabled.
  std::map<int, uint64_t> zero_count_distribution;
};

/// Runs check_function_record over the enumeration x p_grid. Work is chunked
/// by truth-table ranges and merged in canonical order, so the report is
/// byte-identical for any worker count.
VerificationReport verify_all(const VerifyOptions& opts);

}  // namespace bfn
