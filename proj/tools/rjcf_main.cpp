// rjcf: real Jordan form bundles, codimensions and real-eigenvalue census.
//
//   rjcf schur <matrix-file>
//   rjcf classify <matrix-file> [--method schur|ratio]
//   rjcf codim <structure.json> [--method oracle|closed]
//   rjcf perturb <structure.json> [--p identity|random:<seed>] [--m-grid 10,100,...]
//   rjcf census --n N --trials T [--shift diag-even] [--seed S] [--workers W]
//               [--method schur|ratio] [--out report.json|report.csv] [--format ...]
//
// Reports go to stdout (or --out); diagnostics and errors go to stderr.
// Exit status: 0 success, 1 input error, 2 numerical failure.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rjcf/census.hpp"
#include "rjcf/errors.hpp"
#include "rjcf/io.hpp"
#include "rjcf/jordan.hpp"
#include "rjcf/montecarlo.hpp"
#include "rjcf/perturbation.hpp"
#include "rjcf/schur.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;
constexpr const char* kVersion = "0.1.0";

enum class Format { Json, Csv, Pretty };

struct RunConfig {
  std::string input;
  std::string out;
  std::string format;  // empty: infer from --out, default JSON

  // classify / census
  std::string census_method = "schur";
  // codim
  std::string codim_method = "closed";
  // perturb
  std::string similarity = "identity";
  std::vector<std::size_t> m_grid = rjcf::kDefaultMGrid;
  // census
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::string shift = "none";
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

Format resolve_format(const RunConfig& cfg, bool csv_allowed) {
  std::string f = cfg.format;
  if (f.empty()) {
    const auto dot = cfg.out.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : cfg.out.substr(dot + 1);
    f = ext == "csv" ? "csv" : ext == "txt" ? "pretty" : "json";
  }
  if (f == "json") return Format::Json;
  if (f == "pretty") return Format::Pretty;
  if (f == "csv") {
    if (!csv_allowed) throw rjcf::InputError("CSV output is only available for census");
    return Format::Csv;
  }
  throw rjcf::InputError("unknown format '" + f + "' (expected json|csv|pretty)");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw rjcf::InputError("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos, 10);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s.front() == '-') {
    throw rjcf::InputError(std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

void cmd_schur(const RunConfig& cfg) {
  resolve_format(cfg, false);
  const auto a = rjcf::io::read_matrix_file(cfg.input);
  const auto form = rjcf::real_schur(a);
  emit(cfg, rjcf::io::schur_report_json(a, form));
}

void cmd_classify(const RunConfig& cfg) {
  resolve_format(cfg, false);
  const auto method = rjcf::parse_census_method(cfg.census_method);
  const auto a = rjcf::io::read_matrix_file(cfg.input);
  emit(cfg, rjcf::io::classification_json(rjcf::classify(a, method)));
}

void cmd_codim(const RunConfig& cfg) {
  resolve_format(cfg, false);
  const auto method = rjcf::parse_codim_method(cfg.codim_method);
  const auto js = rjcf::io::read_structure_file(cfg.input);
  const std::size_t orbit = rjcf::codim_orbit(js, method);
  const long long bundle =
      static_cast<long long>(orbit) - static_cast<long long>(js.distinct_eigenvalues());
  emit(cfg, rjcf::io::codim_json(js.dimension(), orbit, bundle, method));
}

void cmd_perturb(const RunConfig& cfg) {
  resolve_format(cfg, false);
  auto js = rjcf::io::read_structure_file(cfg.input);
  const std::size_t n = js.dimension();
  std::optional<rjcf::PerturbationPlan> plan;
  if (cfg.similarity == "identity") {
    plan.emplace(std::move(js), cfg.m_grid);
  } else if (cfg.similarity.rfind("random:", 0) == 0) {
    const std::uint64_t seed = parse_u64(cfg.similarity.substr(7), "similarity seed");
    plan.emplace(std::move(js), rjcf::conditioned_random_p(n, seed), cfg.m_grid);
  } else {
    throw rjcf::InputError("--p expects identity or random:<seed>, got '" + cfg.similarity + "'");
  }
  const auto report = rjcf::verify_sequence(*plan);
  std::string lines;
  for (const auto& step : report.steps) lines += rjcf::io::sequence_step_json(step) + "\n";
  lines += rjcf::io::sequence_summary_json(report, cfg.similarity) + "\n";
  emit(cfg, lines);
}

void cmd_census(RunConfig cfg) {
  const Format format = resolve_format(cfg, true);
  if (const char* env = std::getenv("BUNDLE_CENSUS_SEED"); env != nullptr && *env != '\0') {
    cfg.seed = parse_u64(env, "BUNDLE_CENSUS_SEED");
  }
  rjcf::EnsembleSpec spec;
  spec.n = cfg.n;
  spec.trials = cfg.trials;
  spec.shift = rjcf::parse_shift(cfg.shift);
  spec.seed = cfg.seed;
  spec.workers = cfg.workers;
  spec.method = rjcf::parse_census_method(cfg.census_method);

  const auto start = std::chrono::steady_clock::now();
  const auto report = rjcf::run_census(spec);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "census: n=" << spec.n << " trials=" << spec.trials << " workers=" << spec.workers
            << " elapsed=" << secs << "s\n";

  switch (format) {
    case Format::Json: emit(cfg, rjcf::io::census_json(report)); break;
    case Format::Csv: emit(cfg, rjcf::io::census_csv(report)); break;
    case Format::Pretty: emit(cfg, rjcf::io::census_pretty(report)); break;
  }
}

std::string version_text() {
  const rjcf::SchurOptions schur;
  json doc{{"version", kVersion},
           {"schur",
            {{"deflation_eps", std::numeric_limits<double>::epsilon()},
             {"max_sweeps", schur.max_sweeps},
             {"aggressive_deflation", schur.aggressive_deflation},
             {"aed_min_size", schur.aed_min_size},
             {"exceptional_shifts_at", {10, 20}},
             {"balancing", false}}},
           {"classify", {{"distinctness_threshold", "1e3 * n * eps * ||A||_F"}}},
           {"codim",
            {{"oracle_max_dimension", rjcf::kOracleMaxDimension},
             {"oracle_min_rank_gap", rjcf::kOracleMinRankGap},
             {"rank_tolerance", "max(rows, cols) * eps * sigma_max"}}},
           {"perturb", {{"default_m_grid", rjcf::kDefaultMGrid}, {"random_p_max_condition", 1e3}}},
           {"census", {{"rng", "philox4x32-10, stream = trial index"}, {"normal", "marsaglia-polar"}}}};
  return doc.dump(2);
}

void report_error(const char* kind, const std::exception& e, json extra = json::object()) {
  json err{{"kind", kind}, {"message", e.what()}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cerr << json{{"error", err}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real Jordan form bundles, orbit codimensions and real-eigenvalue census"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print engine parameters and exit");

  RunConfig cfg;
  auto add_output = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
  };

  auto* schur = app.add_subcommand("schur", "Real Schur form: block structure, eigenvalues, residuals");
  schur->add_option("matrix-file", cfg.input, "Matrix in text format")->required();
  add_output(schur);

  auto* classify = app.add_subcommand("classify", "Generic bundle signature of a matrix");
  classify->add_option("matrix-file", cfg.input, "Matrix in text format")->required();
  classify->add_option("--method", cfg.census_method, "schur|ratio")
      ->check(CLI::IsMember({"schur", "ratio"}));
  add_output(classify);

  auto* codim = app.add_subcommand("codim", "Orbit and bundle codimension of a Jordan structure");
  codim->add_option("structure", cfg.input, "Structure JSON file")->required();
  codim->add_option("--method", cfg.codim_method, "oracle|closed")
      ->check(CLI::IsMember({"oracle", "closed"}));
  add_output(codim);

  auto* perturb = app.add_subcommand("perturb", "Classify the perturbation sequence A_m of a structure");
  perturb->add_option("structure", cfg.input, "Structure JSON file")->required();
  perturb->add_option("--p", cfg.similarity, "identity | random:<seed>");
  perturb->add_option("--m-grid", cfg.m_grid, "Strictly increasing m values")->delimiter(',');
  add_output(perturb);

  auto* census = app.add_subcommand("census", "Real eigenvalue counts of Gaussian random matrices");
  census->add_option("--n", cfg.n, "Matrix size")->required()->check(CLI::PositiveNumber);
  census->add_option("--trials", cfg.trials, "Number of matrices")->required()->check(CLI::PositiveNumber);
  census->add_option("--shift", cfg.shift, "none|diag-even")->check(CLI::IsMember({"none", "diag-even"}));
  census->add_option("--seed", cfg.seed, "RNG seed (BUNDLE_CENSUS_SEED overrides)");
  census->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  census->add_option("--method", cfg.census_method, "schur|ratio")
      ->check(CLI::IsMember({"schur", "ratio"}));
  census->add_option("--format", cfg.format, "json|csv|pretty (default: from --out extension)");
  add_output(census);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump() << "\n";
    return kExitInput;
  }

  if (show_version) {
    std::cout << version_text() << "\n";
    return 0;
  }

  try {
    if (schur->parsed()) cmd_schur(cfg);
    else if (classify->parsed()) cmd_classify(cfg);
    else if (codim->parsed()) cmd_codim(cfg);
    else if (perturb->parsed()) cmd_perturb(cfg);
    else if (census->parsed()) cmd_census(cfg);
    else {
      std::cerr << app.help();
      return kExitInput;
    }
  } catch (const rjcf::ConvergenceError& e) {
    report_error("numerical", e,
                 {{"reason", "non-convergence"},
                  {"window", {e.window_begin(), e.window_end()}},
                  {"iterations", e.iterations()}});
    return kExitNumerical;
  } catch (const rjcf::RankError& e) {
    report_error("numerical", e,
                 {{"reason", "ill-determined rank"},
                  {"smallest_accepted", e.smallest_accepted()},
                  {"largest_rejected", e.largest_rejected()}});
    return kExitNumerical;
  } catch (const rjcf::NumericalError& e) {
    report_error("numerical", e);
    return kExitNumerical;
  } catch (const rjcf::InputError& e) {
    report_error("input", e);
    return kExitInput;
  } catch (const std::exception& e) {
    report_error("internal", e);
    return kExitNumerical;
  }
  return 0;
}
