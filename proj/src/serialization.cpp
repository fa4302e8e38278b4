#include "bfnoise/serialization.hpp"

#include <charconv>
#include <string>

namespace bfn {

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json to_json(const ExpSum& s) {
  Json terms = Json::array();
  for (const ExpTerm& t : s.terms()) {
    terms.push_back(Json{{"exponent", t.exponent}, {"coefficient", t.coeff}});
  }
  return Json{{"merge_tol", s.merge_tol()},
              {"sign_changes", sign_changes(s)},
              {"terms", std::move(terms)}};
}

Json to_json(const ZeroReport& r) {
  Json crossings = Json::array();
  for (const Crossing& c : r.crossings) {
    crossings.push_back(Json{{"location", c.location}, {"refined", c.refined}});
  }
  Json tangencies = Json::array();
  for (const Tangency& t : r.tangencies) {
    tangencies.push_back(
        Json{{"location", t.location}, {"residual", t.residual}});
  }
  return Json{{"sign_change_bound", r.sign_change_bound},
              {"crossings", std::move(crossings)},
              {"tangencies", std::move(tangencies)},
              {"scan_range", Json::array({r.alpha_lo, r.alpha_hi})},
              {"grid_step", r.grid_step},
              {"sign_toward_minus_inf", r.sign_toward_minus_inf},
              {"sign_toward_plus_inf", r.sign_toward_plus_inf},
              {"far_crossing_below_lo", r.far_crossing_below_lo},
              {"far_crossing_beyond_hi", r.far_crossing_beyond_hi}};
}

Json to_json(const ConjectureVerdict& v) {
  Json out{{"conjecture", std::string(conjecture_name(v.conjecture))},
           {"holds", v.holds},
           {"margin", v.margin},
           {"p", v.p}};
  out["witness_alpha"] = v.witness_alpha ? Json(*v.witness_alpha) : Json();
  return out;
}

Json to_json(const VerificationReport& r) {
  Json counterexamples = Json::array();
  for (const Counterexample& c : r.counterexamples) {
    counterexamples.push_back(
        Json{{"truth_table", c.truth_table},
             {"n", c.n},
             {"p", c.p},
             {"conjecture", std::string(conjecture_name(c.conjecture))},
             {"witness_alpha", c.witness_alpha},
             {"margin", c.margin}});
  }
  Json lemma1 = Json::array();
  for (const Lemma1Violation& v : r.lemma1_violations) {
    lemma1.push_back(Json{{"truth_table", v.truth_table},
                          {"p", v.p},
                          {"symmetrized", v.symmetrized},
                          {"value_at_two", v.value}});
  }
  Json zero_bound = Json::array();
  for (const ZeroBoundViolation& v : r.zero_bound_violations) {
    zero_bound.push_back(Json{{"truth_table", v.truth_table},
                              {"p", v.p},
                              {"crossings", v.crossings},
                              {"tangencies", v.tangencies},
                              {"sign_change_bound", v.sign_change_bound}});
  }
  Json distribution = Json::object();
  for (const auto& [count, times] : r.zero_count_distribution) {
    distribution[std::to_string(count)] = times;
  }
  return Json{{"n", r.n},
              {"p_grid", r.p_grid},
              {"alpha_step", r.alpha_step},
              {"reduce_symmetry", r.reduce_symmetry},
              {"functions_tested", r.functions_tested},
              {"orbit_representatives", r.orbit_representatives},
              {"all_hold", r.all_hold},
              {"worst_margin",
               Json{{"CK_unsym", r.worst_margin[0]},
                    {"CK", r.worst_margin[1]},
                    {"LM", r.worst_margin[2]},
                    {"LM_sym", r.worst_margin[3]}}},
              {"counterexamples", std::move(counterexamples)},
              {"lemma1_violations", std::move(lemma1)},
              {"zero_bound_violations", std::move(zero_bound)},
              {"implication_violations", r.implication_violations},
              {"zero_count_distribution", std::move(distribution)}};
}

std::string counterexamples_csv(const VerificationReport& r) {
  std::string out = "truth_table_hex,n,p,conjecture_id,witness_alpha,margin\n";
  for (const Counterexample& c : r.counterexamples) {
    out += c.truth_table;
    out += ',';
    out += std::to_string(c.n);
    out += ',';
    out += format_double(c.p);
    out += ',';
    out += conjecture_name(c.conjecture);
    out += ',';
    out += format_double(c.witness_alpha);
    out += ',';
    out += format_double(c.margin);
    out += '\n';
  }
  return out;
}

}  // namespace bfn
