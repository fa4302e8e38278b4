#include "bfnoise/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "bfnoise/numeric.hpp"

namespace bfn {

namespace {

constexpr double kOverflowExponent = 700.0;

void check_range(const ExpSum& s, double alpha) {
  if (s.empty()) return;
  // c * alpha is extremal at one of the two end exponents.
  const double lo = s.terms().front().exponent * alpha;
  const double hi = s.terms().back().exponent * alpha;
  if (std::max(lo, hi) > kOverflowExponent) {
    throw std::overflow_error("alpha range exceeded for exponential sum");
  }
}

struct EvalResult {
  double value;
  double magnitude;
};

EvalResult eval_with_magnitude(const ExpSum& s, double alpha) {
  check_range(s, alpha);
  CompensatedSum value;
  CompensatedSum mag;
  for (const auto& t : s.terms()) {
    const double e = std::exp(t.exponent * alpha);
    value.add(t.coeff * e);
    mag.add(std::abs(t.coeff) * e);
  }
  return {value.value(), mag.value()};
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Groups raw (exponent, weight) pairs that sit within the merge tolerance;
// the representative exponent is the group mean.
template <typename Weight>
std::vector<ExpTerm> merge_terms(std::vector<std::pair<double, Weight>>& raw,
                                 double merge_tol) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ExpTerm> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    double last = raw[i].first;
    double csum = raw[i].first;
    Weight wsum = raw[i].second;
    while (j < raw.size() &&
           raw[j].first - last <=
               merge_tol * std::max(1.0, std::abs(raw[j].first))) {
      last = raw[j].first;
      csum += raw[j].first;
      wsum += raw[j].second;
      ++j;
    }
    if (wsum != Weight{0}) {
      out.push_back(ExpTerm{csum / static_cast<double>(j - i),
                            static_cast<double>(wsum)});
    }
    i = j;
  }
  return out;
}

void append_log_terms(std::vector<std::pair<double, int64_t>>& raw,
                      const NoiseField& field, int64_t weight,
                      bool symmetrized) {
  for (double v : field.values) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::domain_error(
          "degenerate function: field value at 0 or 1 has no log exponent");
    }
    raw.emplace_back(std::log(v), weight);
    if (symmetrized) raw.emplace_back(std::log(1.0 - v), weight);
  }
}

}  // namespace

ExpSum ExpSum::from_terms(std::vector<ExpTerm> raw, double merge_tol) {
  if (!(merge_tol >= 0.0)) {
    throw std::invalid_argument("merge tolerance must be nonnegative");
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(raw.size());
  for (const auto& t : raw) pairs.emplace_back(t.exponent, t.coeff);
  ExpSum s;
  s.terms_ = merge_terms(pairs, merge_tol);
  s.merge_tol_ = merge_tol;
  return s;
}

ExpSum build_expsum(const NoiseField& field_f, const NoiseField& field_f0,
                    bool symmetrized) {
  if (field_f.values.size() != field_f0.values.size()) {
    throw std::invalid_argument("fields must live on the same cube");
  }
  std::vector<std::pair<double, int64_t>> raw;
  raw.reserve(field_f.values.size() * (symmetrized ? 4 : 2));
  append_log_terms(raw, field_f, +1, symmetrized);
  append_log_terms(raw, field_f0, -1, symmetrized);

  ExpSum s;
  s.terms_ = merge_terms(raw, kDefaultMergeTol);
  s.merge_tol_ = kDefaultMergeTol;
  return s;
}

int sign_changes(const ExpSum& s) {
  int changes = 0;
  for (std::size_t i = 1; i < s.terms().size(); ++i) {
    if (sign_of(s.terms()[i - 1].coeff) != sign_of(s.terms()[i].coeff)) {
      ++changes;
    }
  }
  return changes;
}

double evaluate(const ExpSum& s, double alpha) {
  return eval_with_magnitude(s, alpha).value;
}

double evaluate_derivative(const ExpSum& s, double alpha) {
  check_range(s, alpha);
  CompensatedSum acc;
  for (const auto& t : s.terms()) {
    acc.add(t.coeff * t.exponent * std::exp(t.exponent * alpha));
  }
  return acc.value();
}

double magnitude(const ExpSum& s, double alpha) {
  return eval_with_magnitude(s, alpha).magnitude;
}

namespace {

// Bisection to width refine_tol, then a few derivative-polish steps kept
// inside the bracket.
double refine_root(const ExpSum& s, double a, double b, double fa,
                   double refine_tol) {
  const bool a_positive = fa > 0.0;
  while (b - a > refine_tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = evaluate(s, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == a_positive) {
      a = mid;
    } else {
      b = mid;
    }
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 3; ++it) {
    const double fx = evaluate(s, x);
    const double dx = evaluate_derivative(s, x);
    if (dx == 0.0) break;
    const double next = x - fx / dx;
    if (!(next >= a - refine_tol && next <= b + refine_tol)) break;
    x = next;
  }
  return x;
}

}  // namespace

ZeroReport find_zeros(const ExpSum& s, double alpha_lo, double alpha_hi,
                      double grid_step, double refine_tol) {
  if (!(alpha_lo < alpha_hi)) {
    throw std::invalid_argument("scan range must satisfy alpha_lo < alpha_hi");
  }
  if (!(grid_step > 0.0) || !(refine_tol > 0.0)) {
    throw std::invalid_argument("grid_step and refine_tol must be positive");
  }

  ZeroReport report;
  report.alpha_lo = alpha_lo;
  report.alpha_hi = alpha_hi;
  report.grid_step = grid_step;
  report.sign_change_bound = sign_changes(s);
  if (s.empty()) return report;

  report.sign_toward_minus_inf = sign_of(s.terms().front().coeff);
  report.sign_toward_plus_inf = sign_of(s.terms().back().coeff);

  const auto steps =
      static_cast<std::size_t>(std::floor((alpha_hi - alpha_lo) / grid_step +
                                          1e-9));
  std::vector<double> xs;
  xs.reserve(steps + 2);
  for (std::size_t k = 0; k <= steps; ++k) {
    xs.push_back(alpha_lo + static_cast<double>(k) * grid_step);
  }
  if (xs.back() < alpha_hi - 0.5 * grid_step) xs.push_back(alpha_hi);

  const std::size_t count = xs.size();
  std::vector<double> vals(count);
  std::vector<double> mags(count);
  std::vector<int8_t> signs(count);
  for (std::size_t k = 0; k < count; ++k) {
    const EvalResult r = eval_with_magnitude(s, xs[k]);
    vals[k] = r.value;
    mags[k] = r.magnitude;
    signs[k] = std::abs(r.value) < kExactZeroTol * r.magnitude
                   ? int8_t{0}
                   : static_cast<int8_t>(sign_of(r.value));
  }

  // Crossings between consecutive nonzero signs; a run of exact zeros with
  // same-sign fences is an even-order candidate instead.
  std::ptrdiff_t last = -1;
  for (std::size_t k = 0; k < count; ++k) {
    if (signs[k] == 0) continue;
    if (last >= 0) {
      const std::size_t li = static_cast<std::size_t>(last);
      if (signs[li] != signs[k]) {
        report.crossings.push_back(
            {refine_root(s, xs[li], xs[k], vals[li], refine_tol), true});
      } else if (k > li + 1) {
        std::size_t best = li + 1;
        for (std::size_t j = li + 2; j < k; ++j) {
          if (std::abs(vals[j]) < std::abs(vals[best])) best = j;
        }
        report.tangencies.push_back({xs[best], vals[best]});
      }
    }
    last = static_cast<std::ptrdiff_t>(k);
  }

  // Near-zero non-crossing minima below the tangency tolerance.
  for (std::size_t k = 1; k + 1 < count; ++k) {
    if (signs[k] == 0) continue;
    if (signs[k - 1] != signs[k] || signs[k + 1] != signs[k]) continue;
    if (!(std::abs(vals[k]) <= std::abs(vals[k - 1]) &&
          std::abs(vals[k]) < std::abs(vals[k + 1]))) {
      continue;
    }
    if (std::abs(vals[k]) < kTangencyTol * mags[k]) {
      report.tangencies.push_back({xs[k], vals[k]});
    }
  }
  std::sort(report.tangencies.begin(), report.tangencies.end(),
            [](const Tangency& a, const Tangency& b) {
              return a.location < b.location;
            });

  // Certify zeros outside the scan: the leading term of the sum fixes each
  // asymptotic sign, so a differing end-of-scan sign brackets a crossing.
  for (std::size_t k = 0; k < count; ++k) {
    if (signs[k] != 0) {
      report.far_crossing_below_lo = signs[k] != report.sign_toward_minus_inf;
      break;
    }
  }
  for (std::size_t k = count; k-- > 0;) {
    if (signs[k] != 0) {
      report.far_crossing_beyond_hi = signs[k] != report.sign_toward_plus_inf;
      break;
    }
  }

  return report;
}

}  // namespace bfn
