#pragma once

#include "bfnoise/boolean_fn.hpp"

namespace bfn {

/// The field x -> T_p f(x) = P(f(Y)=1 | X=x) where Y is the output of a
/// binary symmetric channel with crossover probability p on input X.
struct NoiseField {
  int n = 0;
  double p = 0.0;
  std::vector<double> values;
};

/// Convolution with the kernel p^{d(x,y)} (1-p)^{n-d(x,y)} over the ones of
/// f, summed in ascending y order with compensated accumulation. This is the
/// reference oracle; cost O(2^n * |f^{-1}(1)|).
NoiseField apply_noise_direct(const BooleanFunction& f, double p);

/// Spectral route: scale coefficient v by (1-2p)^{wt(v)} and transform back.
/// Cost O(n 2^n); agrees with the direct convolution entrywise.
NoiseField apply_noise_spectral(const BooleanFunction& f, double p);

/// values[x] -> 1 - values[x]; equals the noise field of 1-f.
NoiseField complement_field(const NoiseField& field);

/// Field of the dictatorship on coordinate 1, written analytically as the
/// alternating sequence p, 1-p so no transform rounding enters the baseline.
NoiseField dictatorship_field(int n, double p);

}  // namespace bfn
