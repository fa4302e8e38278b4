#pragma once

#include <string>

#include <json.hpp>

#include "bfnoise/laguerre.hpp"
#include "bfnoise/verifier.hpp"

namespace bfn {

using Json = nlohmann::ordered_json;

/// Fixed 17-significant-digit, locale-independent float text.
std::string format_double(double v);

Json to_json(const ExpSum& s);
Json to_json(const ZeroReport& r);
Json to_json(const ConjectureVerdict& v);
Json to_json(const VerificationReport& r);

/// One line per counterexample:
/// truth_table_hex,n,p,conjecture_id,witness_alpha,margin
std::string counterexamples_csv(const VerificationReport& r);

}  // namespace bfn
