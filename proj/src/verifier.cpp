#include "bfnoise/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace bfn {

std::string_view conjecture_name(Conjecture c) {
  switch (c) {
    case Conjecture::kCkUnsym: return "CK_unsym";
    case Conjecture::kCk: return "CK";
    case Conjecture::kLm: return "LM";
    case Conjecture::kLmSym: return "LM_sym";
  }
  return "?";
}

namespace {

bool lex_less_packed(uint64_t a, uint64_t b) {
  if (a == b) return false;
  const int bit = std::countr_zero(a ^ b);
  return ((a >> bit) & 1u) == 0;
}

std::string table_string(const BooleanFunction& f) {
  return f.dimension() >= 2 ? f.to_hex_string() : f.to_binary_string();
}

}  // namespace

SymmetryGroup::SymmetryGroup(int n) : n_(n) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument(
        "direct symmetry-group enumeration requires 1 <= n <= 6");
  }
  domain_ = uint64_t{1} << n;
  full_mask_ = domain_ == 64 ? ~uint64_t{0} : (uint64_t{1} << domain_) - 1;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (uint64_t mask = 0; mask < domain_; ++mask) {
      std::array<uint8_t, 64> vm{};
      for (uint64_t x = 0; x < domain_; ++x) {
        uint64_t y = 0;
        for (int i = 0; i < n; ++i) {
          if ((x >> perm[i]) & 1u) y |= uint64_t{1} << i;
        }
        vm[x] = static_cast<uint8_t>(y ^ mask);
      }
      vertex_maps_.push_back(vm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

uint64_t SymmetryGroup::image(uint64_t table, std::size_t element) const {
  const auto& vm = vertex_maps_[element];
  uint64_t img = 0;
  for (uint64_t x = 0; x < domain_; ++x) {
    img |= ((table >> vm[x]) & 1u) << x;
  }
  return img;
}

uint64_t SymmetryGroup::canonical(uint64_t table) const {
  uint64_t best = table;
  for (std::size_t e = 0; e < vertex_maps_.size(); ++e) {
    const uint64_t img = image(table, e);
    if (lex_less_packed(img, best)) best = img;
    const uint64_t flipped = img ^ full_mask_;
    if (lex_less_packed(flipped, best)) best = flipped;
  }
  return best;
}

bool SymmetryGroup::is_canonical(uint64_t table) const {
  for (const auto& vm : vertex_maps_) {
    for (int flip = 0; flip < 2; ++flip) {
      for (uint64_t x = 0; x < domain_; ++x) {
        const uint64_t ib = ((table >> vm[x]) & 1u) ^ static_cast<uint64_t>(flip);
        const uint64_t tb = (table >> x) & 1u;
        if (ib != tb) {
          if (ib < tb) return false;
          break;
        }
      }
    }
  }
  return true;
}

namespace {

const SymmetryGroup& group_for(int n) {
  static std::mutex mutex;
  static std::unique_ptr<SymmetryGroup> cache[7];
  std::lock_guard<std::mutex> lock(mutex);
  if (!cache[n]) cache[n] = std::make_unique<SymmetryGroup>(n);
  return *cache[n];
}

}  // namespace

BooleanFunction canonical_form(const BooleanFunction& f) {
  if (f.dimension() > 6) {
    throw std::invalid_argument(
        "canonical form requires n <= 6 for direct group enumeration");
  }
  const SymmetryGroup& grp = group_for(f.dimension());
  return BooleanFunction::from_packed(f.dimension(), grp.canonical(f.packed()));
}

BooleanFunction apply_symmetry(const BooleanFunction& f,
                               std::span<const int> perm, uint64_t input_xor,
                               bool output_complement) {
  const int n = f.dimension();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation size must equal n");
  }
  uint64_t seen = 0;
  for (int i : perm) {
    if (i < 0 || i >= n) throw std::invalid_argument("permutation entry out of range");
    seen |= uint64_t{1} << i;
  }
  if (std::popcount(seen) != n) {
    throw std::invalid_argument("permutation entries must be distinct");
  }
  const uint64_t len = f.domain_size();
  if (input_xor >= len) {
    throw std::invalid_argument("input xor mask out of range");
  }

  std::vector<uint8_t> bits(len);
  for (uint64_t x = 0; x < len; ++x) {
    uint64_t y = 0;
    for (int i = 0; i < n; ++i) {
      if ((x >> perm[i]) & 1u) y |= uint64_t{1} << i;
    }
    y ^= input_xor;
    bits[x] = static_cast<uint8_t>(f(y) ^ (output_complement ? 1 : 0));
  }
  return BooleanFunction::from_bits(bits);
}

bool on_dictatorship_orbit(const BooleanFunction& f) {
  for (int i = 1; i <= f.dimension(); ++i) {
    const BooleanFunction d = BooleanFunction::dictatorship(f.dimension(), i);
    if (f == d || f == d.complement()) return true;
  }
  return false;
}

void for_each_balanced(
    int n, bool reduce_symmetry,
    const std::function<bool(const BooleanFunction&)>& visit) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("balanced enumeration supports 1 <= n <= 5");
  }
  const uint64_t bits = uint64_t{1} << n;
  const uint64_t limit = uint64_t{1} << bits;
  const SymmetryGroup* grp = reduce_symmetry ? &group_for(n) : nullptr;

  uint64_t v = (uint64_t{1} << (bits / 2)) - 1;
  while (v < limit) {
    if (!grp || grp->is_canonical(v)) {
      if (!visit(BooleanFunction::from_packed(n, v))) return;
    }
    // Gosper's hack: next popcount-preserving pattern in ascending order.
    const uint64_t t = v | (v - 1);
    v = (t + 1) |
        (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
}

std::vector<BooleanFunction> enumerate_balanced(int n, bool reduce_symmetry) {
  std::vector<BooleanFunction> out;
  for_each_balanced(n, reduce_symmetry, [&](const BooleanFunction& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<double> default_p_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(0.05 * k);
  return grid;
}

std::vector<double> make_alpha_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("alpha grid step must lie in (0, 1]");
  }
  std::vector<double> grid{1.0};
  for (int k = 1;; ++k) {
    const double alpha = 1.0 + k * step;
    if (alpha >= 2.0 - 1e-12) break;
    grid.push_back(alpha);
  }
  grid.push_back(2.0);
  return grid;
}

namespace {

void require_alpha_grid(std::span<const double> grid) {
  if (grid.empty() || std::abs(grid.front() - 1.0) > 1e-9 ||
      std::abs(grid.back() - 2.0) > 1e-9 ||
      !std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument(
        "alpha grid must ascend over [1,2] including both endpoints");
  }
}

}  // namespace

ConjectureVerdict check_curve(const CurveSpec& spec,
                              std::span<const double> alpha_grid,
                              double slack_tol, Conjecture id) {
  require_alpha_grid(alpha_grid);
  double worst = -std::numeric_limits<double>::infinity();
  double worst_alpha = alpha_grid.front();
  for (double alpha : alpha_grid) {
    const double value = curve_value(spec, alpha);
    if (value > worst) {
      worst = value;
      worst_alpha = alpha;
    }
  }
  ConjectureVerdict verdict;
  verdict.conjecture = id;
  verdict.holds = worst <= slack_tol;
  verdict.margin = -worst;
  verdict.p = spec.field_f.p;
  if (!verdict.holds) verdict.witness_alpha = worst_alpha;
  return verdict;
}

FunctionRecord check_function_record(const BooleanFunction& f, double p,
                                     std::span<const double> alpha_grid,
                                     double slack_tol,
                                     const ScanOptions& scan) {
  if (!f.is_balanced()) {
    throw std::invalid_argument("conjecture checks require a balanced function");
  }
  require_alpha_grid(alpha_grid);

  const NoiseField field = apply_noise_spectral(f, p);
  const NoiseField base = dictatorship_field(f.dimension(), p);

  FunctionRecord rec;

  const double deriv_f = deriv_at_one(field, false);
  const double deriv_0 = deriv_at_one(base, false);
  rec.verdicts[0] = ConjectureVerdict{Conjecture::kCkUnsym,
                                      deriv_0 - deriv_f >= -slack_tol,
                                      deriv_0 - deriv_f, std::nullopt, p};

  const double info = mutual_information(f, p);
  const double info_bound = 1.0 - binary_entropy(p);
  rec.verdicts[1] = ConjectureVerdict{Conjecture::kCk,
                                      info_bound - info >= -slack_tol,
                                      info_bound - info, std::nullopt, p};

  const CurveSpec plain{field, base, false};
  const CurveSpec sym{field, base, true};
  rec.verdicts[2] = check_curve(plain, alpha_grid, slack_tol, Conjecture::kLm);
  rec.verdicts[3] =
      check_curve(sym, alpha_grid, slack_tol, Conjecture::kLmSym);

  rec.g2_plain = curve_value(plain, 2.0);
  rec.g2_sym = curve_value(sym, 2.0);
  rec.dictatorship_orbit = on_dictatorship_orbit(f);

  const ExpSum sum_plain = build_expsum(field, base, false);
  const ExpSum sum_sym = build_expsum(field, base, true);
  rec.sign_change_bound = sign_changes(sum_sym);

  const auto interior_crossing = [&rec](const ExpSum& s) {
    const ZeroReport zr = find_zeros(s, 1.0, 2.0);
    for (const Crossing& c : zr.crossings) {
      if (c.location > 1.0 + kInteriorMargin &&
          c.location < 2.0 - kInteriorMargin) {
        rec.interior_crossing = true;
        rec.interior_crossing_alpha = c.location;
        return;
      }
    }
  };
  interior_crossing(sum_sym);
  interior_crossing(sum_plain);

  if (scan.enabled) {
    const ZeroReport zr = find_zeros(sum_sym, scan.lo, scan.hi, scan.step);
    rec.scan_crossings = static_cast<int>(zr.crossings.size());
    rec.scan_tangencies = static_cast<int>(zr.tangencies.size());
    rec.zero_bound_ok =
        rec.scan_crossings + 2 * rec.scan_tangencies <= rec.sign_change_bound &&
        rec.sign_change_bound <= 4;
  }
  return rec;
}

std::array<ConjectureVerdict, 4> check_function(
    const BooleanFunction& f, double p, std::span<const double> alpha_grid,
    double slack_tol) {
  return check_function_record(f, p, alpha_grid, slack_tol).verdicts;
}

namespace {

struct ChunkResult {
  std::array<double, 4> worst_margin{
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity()};
  std::vector<Counterexample> counterexamples;
  std::vector<Lemma1Violation> lemma1_violations;
  std::vector<ZeroBoundViolation> zero_bound_violations;
  uint64_t implication_violations = 0;
  std::map<int, uint64_t> zero_counts;
};

void fold_record(ChunkResult& out, const BooleanFunction& f, double p,
                 const FunctionRecord& rec, double slack_tol) {
  for (int c = 0; c < 4; ++c) {
    const ConjectureVerdict& v = rec.verdicts[c];
    out.worst_margin[c] = std::min(out.worst_margin[c], v.margin);
    if (!v.holds) {
      out.counterexamples.push_back(Counterexample{
          table_string(f), f.dimension(), p, v.conjecture,
          v.witness_alpha.value_or(1.0), v.margin});
    }
  }
  // An interior zero of either curve means an excursion the grid may have
  // missed; surface it as a norm-conjecture counterexample regardless.
  if (rec.interior_crossing && rec.verdicts[2].holds && rec.verdicts[3].holds) {
    out.counterexamples.push_back(Counterexample{
        table_string(f), f.dimension(), p, Conjecture::kLmSym,
        rec.interior_crossing_alpha, rec.verdicts[3].margin});
  }

  const bool plain_eq = std::abs(rec.g2_plain) < kEqualityTol;
  const bool sym_eq = std::abs(rec.g2_sym) < kEqualityTol;
  const bool lemma1_bad = rec.g2_plain > slack_tol || rec.g2_sym > slack_tol ||
                          (plain_eq != rec.dictatorship_orbit) ||
                          (sym_eq != rec.dictatorship_orbit);
  if (lemma1_bad) {
    out.lemma1_violations.push_back(
        Lemma1Violation{table_string(f), p, false, rec.g2_plain});
    out.lemma1_violations.push_back(
        Lemma1Violation{table_string(f), p, true, rec.g2_sym});
  }

  if (rec.scan_crossings >= 0) {
    out.zero_counts[rec.scan_crossings + 2 * rec.scan_tangencies] += 1;
    if (!rec.zero_bound_ok) {
      out.zero_bound_violations.push_back(ZeroBoundViolation{
          table_string(f), p, rec.scan_crossings, rec.scan_tangencies,
          rec.sign_change_bound});
    }
  }

  const bool impl_3_1 = rec.verdicts[2].holds && !rec.verdicts[0].holds;
  const bool impl_4_2 = rec.verdicts[3].holds && !rec.verdicts[1].holds;
  if (impl_3_1 || impl_4_2) out.implication_violations += 1;
}

}  // namespace

VerificationReport verify_all(const VerifyOptions& opts) {
  if (opts.n == 5 && !opts.reduce_symmetry) {
    throw std::invalid_argument(
        "n = 5 verification requires symmetry reduction (and is a long run)");
  }
  for (double p : opts.p_grid) {
    if (!(p > 0.0 && p < 0.5)) {
      throw std::invalid_argument("p grid entries must lie in (0, 1/2)");
    }
  }
  if (opts.p_grid.empty()) {
    throw std::invalid_argument("p grid must be nonempty");
  }

  const std::vector<double> alpha_grid = make_alpha_grid(opts.alpha_step);
  const std::vector<BooleanFunction> funcs =
      enumerate_balanced(opts.n, opts.reduce_symmetry);

  VerificationReport report;
  report.n = opts.n;
  report.p_grid = opts.p_grid;
  report.alpha_step = opts.alpha_step;
  report.reduce_symmetry = opts.reduce_symmetry;
  report.functions_tested = funcs.size();

  constexpr std::size_t kChunk = 32;
  const std::size_t num_chunks = (funcs.size() + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(num_chunks);
  std::atomic<std::size_t> next{0};

  const int workers =
      std::clamp(opts.workers, 1, 256);
  auto work = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      const std::size_t begin = c * kChunk;
      const std::size_t end = std::min(begin + kChunk, funcs.size());
      for (std::size_t i = begin; i < end; ++i) {
        for (double p : opts.p_grid) {
          const FunctionRecord rec = check_function_record(
              funcs[i], p, alpha_grid, opts.slack_tol, opts.scan);
          fold_record(results[c], funcs[i], p, rec, opts.slack_tol);
          if (opts.reduce_symmetry) {
            // The orbit representative stands for 1-f as well, but the
            // unsymmetrized quantities differ between the two orientations,
            // so the complement is checked explicitly.
            const BooleanFunction other = funcs[i].complement();
            const FunctionRecord rec2 = check_function_record(
                other, p, alpha_grid, opts.slack_tol, opts.scan);
            fold_record(results[c], other, p, rec2, opts.slack_tol);
          }
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  report.worst_margin = {std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
  for (const ChunkResult& cr : results) {
    for (int c = 0; c < 4; ++c) {
      report.worst_margin[c] =
          std::min(report.worst_margin[c], cr.worst_margin[c]);
    }
    report.counterexamples.insert(report.counterexamples.end(),
                                  cr.counterexamples.begin(),
                                  cr.counterexamples.end());
    report.lemma1_violations.insert(report.lemma1_violations.end(),
                                    cr.lemma1_violations.begin(),
                                    cr.lemma1_violations.end());
    report.zero_bound_violations.insert(report.zero_bound_violations.end(),
                                        cr.zero_bound_violations.begin(),
                                        cr.zero_bound_violations.end());
    report.implication_violations += cr.implication_violations;
    for (const auto& [count, times] : cr.zero_counts) {
      report.zero_count_distribution[count] += times;
    }
  }
  report.all_hold = report.counterexamples.empty();

  if (opts.reduce_symmetry) {
    report.orbit_representatives = report.functions_tested;
  } else if (opts.n <= 4) {
    const SymmetryGroup& grp = group_for(opts.n);
    std::set<uint64_t> reps;
    for (const BooleanFunction& f : funcs) reps.insert(grp.canonical(f.packed()));
    report.orbit_representatives = reps.size();
  }
  return report;
}

}  // namespace bfn
