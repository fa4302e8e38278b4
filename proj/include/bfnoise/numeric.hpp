#pragma once

#include <cmath>

namespace bfn {

/// Error-compensated accumulator (Neumaier variant). Deterministic for a
/// fixed addition order.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// t^alpha for t > 0 as exp(alpha * ln t), so alpha is a continuous
/// parameter.
inline double pow_real(double base, double alpha) {
  return std::exp(alpha * std::log(base));
}

}  // namespace bfn
