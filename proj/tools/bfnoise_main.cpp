// Command-line front end: single-function analysis, exhaustive conjecture
// verification, and reference curve data for the n=3 majority function.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bfnoise/boolean_fn.hpp"
#include "bfnoise/laguerre.hpp"
#include "bfnoise/noise.hpp"
#include "bfnoise/norms.hpp"
#include "bfnoise/serialization.hpp"
#include "bfnoise/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumericRange = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitCounterexample = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + out_path);
  }
  out << text;
}

bfn::BooleanFunction resolve_function(const std::string& named,
                                      const std::string& truth_table, int n) {
  if (!truth_table.empty()) {
    bfn::BooleanFunction f = bfn::BooleanFunction::parse(truth_table);
    if (n != 0 && f.dimension() != n) {
      throw std::invalid_argument("truth table length does not match --n");
    }
    return f;
  }
  if (named.empty()) {
    throw std::invalid_argument("one of --function or --truth-table is required");
  }
  if (n == 0) {
    throw std::invalid_argument("--n is required with --function");
  }
  if (named == "majority") return bfn::BooleanFunction::majority(n);
  if (named.starts_with("dictatorship:")) {
    const std::string coord = named.substr(std::string("dictatorship:").size());
    std::size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(coord, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad dictatorship coordinate: " + coord);
    }
    if (used != coord.size()) {
      throw std::invalid_argument("bad dictatorship coordinate: " + coord);
    }
    return bfn::BooleanFunction::dictatorship(n, i);
  }
  throw std::invalid_argument(
      "unknown --function (use majority, dictatorship:i, or --truth-table)");
}

std::vector<double> parse_p_grid(const std::string& text) {
  std::vector<double> grid;
  const auto parse_one = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad p value: " + s);
    return v;
  };
  if (text.find(':') != std::string::npos) {
    // lo:hi:step
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) {
      throw std::invalid_argument("p range must be lo:hi:step");
    }
    const double lo = parse_one(text.substr(0, first));
    const double hi = parse_one(text.substr(first + 1, second - first - 1));
    const double step = parse_one(text.substr(second + 1));
    if (!(step > 0.0) || hi < lo) {
      throw std::invalid_argument("bad p range");
    }
    for (int k = 0;; ++k) {
      const double p = lo + k * step;
      if (p > hi + 1e-12) break;
      grid.push_back(p);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string item =
          text.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (!item.empty()) grid.push_back(parse_one(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (grid.empty()) throw std::invalid_argument("empty p grid");
  return grid;
}

struct AnalyzeArgs {
  std::string function;
  std::string truth_table;
  int n = 0;
  double p = 0.0;
  bool symmetrized = false;
  double alpha_min = -1.0;
  double alpha_max = 3.0;
  double alpha_step = 0.01;
  std::string format = "json";
  std::string out;
};

int run_analyze(const AnalyzeArgs& args) {
  const bfn::BooleanFunction f =
      resolve_function(args.function, args.truth_table, args.n);
  if (!f.is_balanced()) {
    throw std::invalid_argument(
        "analysis is defined for balanced functions only");
  }
  if (!(args.alpha_step > 0.0) || args.alpha_max < args.alpha_min) {
    throw std::invalid_argument("bad alpha range");
  }
  if ((args.alpha_max - args.alpha_min) / args.alpha_step > 1e7) {
    throw std::invalid_argument("alpha grid too fine");
  }

  const bfn::NoiseField field = bfn::apply_noise_spectral(f, args.p);
  const bfn::CurveSpec spec =
      bfn::CurveSpec::against_dictatorship(field, args.symmetrized);
  const bfn::ExpSum sum =
      bfn::build_expsum(spec.field_f, spec.field_f0, args.symmetrized);
  const bfn::ZeroReport zeros =
      bfn::find_zeros(sum, bfn::kDefaultScanLo, bfn::kDefaultScanHi);

  std::vector<std::pair<double, double>> samples;
  for (int k = 0;; ++k) {
    const double alpha = args.alpha_min + k * args.alpha_step;
    if (alpha > args.alpha_max + 1e-12) break;
    const double value = bfn::curve_value(spec, alpha);
    if (!std::isfinite(value)) {
      throw std::overflow_error("curve sample out of double range");
    }
    samples.emplace_back(alpha, value);
  }

  if (args.format == "csv") {
    std::string csv = "alpha,g\n";
    for (const auto& [alpha, value] : samples) {
      csv += bfn::format_double(alpha);
      csv += ',';
      csv += bfn::format_double(value);
      csv += '\n';
    }
    write_output(csv, args.out);
    return kExitOk;
  }

  const auto grid = bfn::make_alpha_grid(1.0 / 64.0);
  const auto verdicts = bfn::check_function(f, args.p, grid);
  const bfn::NoiseField base = bfn::dictatorship_field(f.dimension(), args.p);

  bfn::Json curve = bfn::Json::array();
  for (const auto& [alpha, value] : samples) {
    curve.push_back(bfn::Json{{"alpha", alpha}, {"g", value}});
  }
  bfn::Json verdicts_json = bfn::Json::array();
  for (const auto& v : verdicts) verdicts_json.push_back(bfn::to_json(v));

  bfn::Json doc{
      {"function",
       bfn::Json{{"n", f.dimension()},
                 {"truth_table", f.to_binary_string()},
                 {"truth_table_hex",
                  f.dimension() >= 2 ? bfn::Json(f.to_hex_string()) : bfn::Json()},
                 {"balanced", f.is_balanced()}}},
      {"p", args.p},
      {"symmetrized", args.symmetrized},
      {"mutual_information", bfn::mutual_information(f, args.p)},
      {"information_bound", 1.0 - bfn::binary_entropy(args.p)},
      {"deriv_at_one",
       bfn::Json{{"plain", bfn::deriv_at_one(field, false)},
                 {"symmetrized", bfn::deriv_at_one(field, true)}}},
      {"dictatorship_deriv_at_one",
       bfn::Json{{"plain", bfn::deriv_at_one(base, false)},
                 {"symmetrized", bfn::deriv_at_one(base, true)}}},
      {"expsum", bfn::to_json(sum)},
      {"zero_report", bfn::to_json(zeros)},
      {"verdicts", std::move(verdicts_json)},
      {"curve", bfn::Json{{"alpha_min", args.alpha_min},
                          {"alpha_max", args.alpha_max},
                          {"alpha_step", args.alpha_step},
                          {"samples", std::move(curve)}}}};
  write_output(doc.dump(2), args.out);
  return kExitOk;
}

struct VerifyArgs {
  int n = 3;
  std::string p_grid = "0.05:0.45:0.05";
  double alpha_step = 1.0 / 64.0;
  bool reduce_symmetry = false;
  int workers = 0;
  bool scan_zeros = false;
  double scan_lo = bfn::kDefaultScanLo;
  double scan_hi = bfn::kDefaultScanHi;
  double scan_step = bfn::kDefaultGridStep;
  std::string format = "json";
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  bfn::VerifyOptions opts;
  opts.n = args.n;
  opts.p_grid = parse_p_grid(args.p_grid);
  opts.alpha_step = args.alpha_step;
  opts.reduce_symmetry = args.reduce_symmetry;
  opts.workers = args.workers > 0
                     ? args.workers
                     : std::max(1u, std::thread::hardware_concurrency());
  opts.scan.enabled = args.scan_zeros;
  opts.scan.lo = args.scan_lo;
  opts.scan.hi = args.scan_hi;
  opts.scan.step = args.scan_step;

  const bfn::VerificationReport report = bfn::verify_all(opts);
  if (args.format == "csv") {
    write_output(bfn::counterexamples_csv(report), args.out);
  } else {
    write_output(bfn::to_json(report).dump(2), args.out);
  }
  return report.all_hold ? kExitOk : kExitCounterexample;
}

struct Figure2Args {
  std::vector<double> p_list{0.21, 0.068, 0.017};
  double alpha_min = -1.0;
  double alpha_max = 3.0;
  double alpha_step = 0.01;
  std::string out = "figure2";
};

// Noise values of the n=3 majority function in closed form, with the
// multiplicity of each value over the symmetrized multiset.
std::vector<std::pair<double, int>> majority3_closed_form(double p) {
  const double q = 1.0 - p;
  return {{q * q * q + 3.0 * p * q * q, 2},
          {q * q * q + q * q * p + 2.0 * q * p * p, 6},
          {2.0 * q * q * p + q * p * p + p * p * p, 6},
          {p * p * p + 3.0 * q * p * p, 2}};
}

int run_figure2(const Figure2Args& args) {
  if (!(args.alpha_step > 0.0) || args.alpha_max < args.alpha_min) {
    throw std::invalid_argument("bad alpha range");
  }
  const bfn::BooleanFunction maj = bfn::BooleanFunction::majority(3);

  bfn::Json checks = bfn::Json::array();
  bfn::Json zero_reports = bfn::Json::object();
  std::vector<std::string> files;

  for (double p : args.p_list) {
    const bfn::NoiseField field = bfn::apply_noise_direct(maj, p);
    const bfn::CurveSpec spec = bfn::CurveSpec::against_dictatorship(field, true);
    const bfn::ExpSum sum = bfn::build_expsum(spec.field_f, spec.field_f0, true);

    std::string csv = "alpha,g_sym\n";
    for (int k = 0;; ++k) {
      const double alpha = args.alpha_min + k * args.alpha_step;
      if (alpha > args.alpha_max + 1e-12) break;
      csv += bfn::format_double(alpha);
      csv += ',';
      csv += bfn::format_double(bfn::curve_value(spec, alpha));
      csv += '\n';
    }
    char tag[32];
    std::snprintf(tag, sizeof(tag), "%g", p);
    const std::string file = args.out + "_p" + tag + ".csv";
    write_output(csv, file);
    files.push_back(file);

    // Closed-form term check: the symmetrized T_p multiset of majority(3)
    // against the displayed polynomials, and the baseline against {p, 1-p}.
    std::vector<double> observed;
    for (double v : field.values) {
      observed.push_back(v);
      observed.push_back(1.0 - v);
    }
    std::sort(observed.begin(), observed.end());
    std::vector<double> expected;
    bfn::Json term_list = bfn::Json::array();
    for (const auto& [value, multiplicity] : majority3_closed_form(p)) {
      term_list.push_back(
          bfn::Json{{"value", value}, {"multiplicity", multiplicity}});
      for (int m = 0; m < multiplicity; ++m) expected.push_back(value);
    }
    std::sort(expected.begin(), expected.end());
    double max_err = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      max_err = std::max(max_err, std::abs(observed[i] - expected[i]));
    }
    std::vector<double> base_observed;
    for (double v : spec.field_f0.values) {
      base_observed.push_back(v);
      base_observed.push_back(1.0 - v);
    }
    std::sort(base_observed.begin(), base_observed.end());
    for (std::size_t i = 0; i < base_observed.size(); ++i) {
      const double expected_base = i < 8 ? p : 1.0 - p;
      max_err = std::max(max_err, std::abs(base_observed[i] - expected_base));
    }
    checks.push_back(bfn::Json{{"p", p},
                               {"closed_form_terms", std::move(term_list)},
                               {"max_abs_error", max_err},
                               {"pass", max_err < 1e-12}});
    zero_reports[tag] = bfn::to_json(
        bfn::find_zeros(sum, bfn::kDefaultScanLo, bfn::kDefaultScanHi));
  }

  bfn::Json doc{{"files", files},
                {"multiset_check", std::move(checks)},
                {"zero_reports", std::move(zero_reports)}};
  write_output(doc.dump(2), args.out + "_multiset_check.json");
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-operator power sums, difference curves and zero bounds "
               "for balanced Boolean functions"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Report curves, exponential-sum zeros and conjecture "
                 "verdicts for one function");
  analyze->add_option("--function", analyze_args.function,
                      "majority or dictatorship:i");
  analyze->add_option("--truth-table", analyze_args.truth_table,
                      "0/1 string (index 0 first) or 0x hex");
  analyze->add_option("--n", analyze_args.n, "dimension");
  analyze->add_option("--p", analyze_args.p, "crossover probability")
      ->required();
  analyze->add_flag("--symmetrized", analyze_args.symmetrized,
                    "use the symmetrized power sum for curve output");
  analyze->add_option("--alpha-min", analyze_args.alpha_min, "curve range");
  analyze->add_option("--alpha-max", analyze_args.alpha_max, "curve range");
  analyze->add_option("--alpha-step", analyze_args.alpha_step, "curve step");
  analyze->add_option("--format", analyze_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--out", analyze_args.out, "output path (default stdout)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Exhaustively verify the four conjectures over balanced "
                "functions");
  verify->add_option("--n", verify_args.n, "dimension")->required();
  verify->add_option("--p-grid", verify_args.p_grid,
                     "comma list or lo:hi:step");
  verify->add_option("--alpha-step", verify_args.alpha_step,
                     "grid step on [1,2]");
  verify->add_flag("--reduce-symmetry", verify_args.reduce_symmetry,
                   "one representative per symmetry orbit");
  verify->add_option("--workers", verify_args.workers,
                     "worker threads (default: hardware)");
  verify->add_flag("--scan-zeros", verify_args.scan_zeros,
                   "also scan the full range and check the zero-count bound");
  verify->add_option("--scan-lo", verify_args.scan_lo, "scan range");
  verify->add_option("--scan-hi", verify_args.scan_hi, "scan range");
  verify->add_option("--scan-step", verify_args.scan_step, "scan step");
  verify->add_option("--format", verify_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", verify_args.out, "output path (default stdout)");

  Figure2Args figure2_args;
  CLI::App* figure2 = app.add_subcommand(
      "figure2", "Symmetrized difference curves for the n=3 majority "
                 "function, one CSV per p");
  figure2->add_option("--p-list", figure2_args.p_list, "p values");
  figure2->add_option("--alpha-min", figure2_args.alpha_min, "curve range");
  figure2->add_option("--alpha-max", figure2_args.alpha_max, "curve range");
  figure2->add_option("--alpha-step", figure2_args.alpha_step, "curve step");
  figure2->add_option("--out", figure2_args.out, "output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (figure2->parsed()) return run_figure2(figure2_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumericRange;
  } catch (const std::overflow_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumericRange;
  }
  return kExitInvalidInput;
}
