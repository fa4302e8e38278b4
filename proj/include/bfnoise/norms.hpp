#pragma once

#include "bfnoise/boolean_fn.hpp"
#include "bfnoise/noise.hpp"

namespace bfn {

/// A difference curve alpha -> N_alpha(f) - N_alpha(f0) where f0 is the
/// dictatorship baseline at the same n and p.
struct CurveSpec {
  NoiseField field_f;
  NoiseField field_f0;
  bool symmetrized = false;

  static CurveSpec against_dictatorship(NoiseField field, bool symmetrized);
};

/// sum_x values[x]^alpha. Zero values are allowed only for alpha > 0 (they
/// contribute nothing); with alpha <= 0 they are a domain error.
double power_sum(const NoiseField& field, double alpha);

/// sum_x values[x]^alpha + (1 - values[x])^alpha, same zero-value policy
/// applied to both the values and their complements.
double power_sum_sym(const NoiseField& field, double alpha);

/// The difference curve at alpha (plain or symmetrized per the spec flag).
double curve_value(const CurveSpec& spec, double alpha);

/// alpha-derivative of the power sum at alpha = 1, reported in bits:
/// plain sum_x v log2 v; symmetrized adds (1-v) log2 (1-v), i.e. -sum h(v).
/// All field values must lie strictly in (0,1).
double deriv_at_one(const NoiseField& field, bool symmetrized);

/// I(f(Y);X) in bits for balanced f: 1 + 2^{-n} * deriv_at_one(T_p f, sym).
double mutual_information(const BooleanFunction& f, double p);

/// -q log2 q - (1-q) log2 (1-q); endpoints return 0 by continuity.
double binary_entropy(double q);

/// N_2 of a balanced function through its spectrum:
/// 2^n/4 + sum_{v != 0} (1-2p)^{2 wt(v)} coeffs[v]^2.
double power_sum_two_spectral(const Spectrum& s, double p);

}  // namespace bfn
