#include "rjcf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "rjcf/errors.hpp"

namespace rjcf::io {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view token, std::size_t line_no) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InputError("matrix line " + std::to_string(line_no) + ": bad number '" +
                     std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw InputError("matrix line " + std::to_string(line_no) + ": non-finite value '" +
                     std::string(token) + "'");
  }
  return value;
}

std::size_t parse_dimension(std::string_view token) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
    throw InputError("matrix header: bad dimension '" + std::string(token) + "'");
  }
  return value;
}

// Finite doubles as numbers, everything else as null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json complex_array(const std::vector<ComplexScalar>& values) {
  json arr = json::array();
  for (const auto& z : values) arr.push_back({{"re", z.real()}, {"im", z.imag()}});
  return arr;
}

json signature_json(const std::optional<BundleSignature>& s) {
  if (!s) return nullptr;
  return {{"n", s->n}, {"t", s->t}};
}

json sizes_from(const json& node, const char* where) {
  if (!node.contains("sizes") || !node.at("sizes").is_array()) {
    throw InputError(std::string("structure: ") + where + " entry needs a 'sizes' array");
  }
  return node.at("sizes");
}

std::vector<std::size_t> parse_sizes(const json& arr, const char* where) {
  std::vector<std::size_t> sizes;
  for (const auto& s : arr) {
    if (!s.is_number_integer() || s.get<long long>() <= 0) {
      throw InputError(std::string("structure: ") + where + " sizes must be positive integers");
    }
    sizes.push_back(s.get<std::size_t>());
  }
  return sizes;
}

double number_field(const json& node, const char* key, const char* where) {
  if (!node.contains(key) || !node.at(key).is_number()) {
    throw InputError(std::string("structure: ") + where + " entry needs numeric '" + key + "'");
  }
  return node.at(key).get<double>();
}

std::string format_double(double x, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::set<std::size_t> census_rows(const CensusReport& r) {
  std::set<std::size_t> ks;
  for (const auto& [k, f] : r.counts) ks.insert(k);
  if (r.reference)
    for (const auto& [k, p] : *r.reference) ks.insert(k);
  return ks;
}

}  // namespace

Matrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_nonblank = [&](std::vector<std::string_view>& tokens) {
    while (std::getline(in, line)) {
      ++line_no;
      tokens = split_ws(line);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  std::vector<std::string_view> tokens;
  if (!next_nonblank(tokens)) throw InputError("matrix: empty input");
  if (tokens.size() != 2) throw InputError("matrix header: expected 'rows cols'");
  const std::size_t rows = parse_dimension(tokens[0]);
  const std::size_t cols = parse_dimension(tokens[1]);

  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!next_nonblank(tokens)) {
      throw InputError("matrix: expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(r));
    }
    if (tokens.size() != cols) {
      throw InputError("matrix line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " values, got " + std::to_string(tokens.size()));
    }
    for (auto tok : tokens) entries.push_back(parse_double(tok, line_no));
  }
  if (next_nonblank(tokens)) {
    throw InputError("matrix line " + std::to_string(line_no) + ": trailing data");
  }
  return Matrix(rows, cols, std::move(entries));
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  return parse_matrix(in);
}

std::string format_matrix(const Matrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ' ';
      out += format_double(a(i, j), "%.17g");
    }
    out += '\n';
  }
  return out;
}

JordanStructure parse_structure(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("structure: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("structure: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "pairs" && key != "reals") throw InputError("structure: unknown key '" + key + "'");
    if (!value.is_array()) throw InputError("structure: '" + key + "' must be an array");
  }
  JordanStructure js;
  if (doc.contains("pairs")) {
    for (const auto& p : doc.at("pairs")) {
      if (!p.is_object()) throw InputError("structure: pair entries must be objects");
      js.pairs.push_back({number_field(p, "a", "pair"), number_field(p, "b", "pair"),
                          parse_sizes(sizes_from(p, "pair"), "pair")});
    }
  }
  if (doc.contains("reals")) {
    for (const auto& r : doc.at("reals")) {
      if (!r.is_object()) throw InputError("structure: real entries must be objects");
      js.reals.push_back({number_field(r, "c", "real"), parse_sizes(sizes_from(r, "real"), "real")});
    }
  }
  js.validate();
  return js;
}

JordanStructure read_structure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open structure file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string structure_to_json(const JordanStructure& js) {
  json pairs = json::array();
  for (const auto& g : js.pairs) pairs.push_back({{"a", g.a}, {"b", g.b}, {"sizes", g.sizes}});
  json reals = json::array();
  for (const auto& g : js.reals) reals.push_back({{"c", g.c}, {"sizes", g.sizes}});
  return json{{"pairs", pairs}, {"reals", reals}}.dump();
}

std::string schur_report_json(const Matrix& a, const RealSchurForm& form) {
  json t = json::array();
  for (std::size_t i = 0; i < form.t.rows(); ++i) {
    auto row = form.t.row(i);
    t.push_back(std::vector<double>(row.begin(), row.end()));
  }
  json doc{{"n", a.rows()},
           {"block_sizes", form.block_sizes},
           {"eigenvalues", complex_array(form.eigenvalues)},
           {"t", t},
           {"orthogonality_residual", orthogonality_residual(form.q)},
           {"reconstruction_residual", reconstruction_residual(a, form.q, form.t)}};
  return doc.dump(2);
}

std::string classification_json(const ClassificationResult& r) {
  json doc{{"n", r.eigenvalues.size()},
           {"signature", signature_json(r.signature)},
           {"real_count", r.real_count},
           {"min_eigengap", number_or_null(r.min_eigengap)},
           {"threshold", r.threshold},
           {"method", to_string(r.method)},
           {"boundary", r.boundary},
           {"eigenvalues", complex_array(r.eigenvalues)}};
  return doc.dump(2);
}

std::string codim_json(std::size_t n, std::size_t orbit, long long bundle, CodimMethod method) {
  json doc{{"n", n}, {"orbit", orbit}, {"bundle", bundle}, {"method", to_string(method)}};
  return doc.dump();
}

std::string sequence_step_json(const SequenceStep& step) {
  json doc{{"m", step.m},
           {"distance_to_limit", step.distance_to_limit},
           {"distance_bound", step.distance_bound}};
  if (step.classification) {
    const auto& c = *step.classification;
    doc["real_count"] = c.real_count;
    doc["boundary"] = c.boundary;
    doc["min_eigengap"] = number_or_null(c.min_eigengap);
    doc["signature"] = signature_json(c.signature);
    doc["error"] = nullptr;
  } else {
    doc["real_count"] = nullptr;
    doc["boundary"] = nullptr;
    doc["min_eigengap"] = nullptr;
    doc["signature"] = nullptr;
    doc["error"] = step.error.value_or("unknown failure");
  }
  return doc.dump();
}

std::string sequence_summary_json(const SequenceReport& report, std::string_view similarity) {
  json doc{{"summary",
            {{"passed", report.passed},
             {"expected", signature_json(report.expected)},
             {"expected_real_count", report.expected_real_count},
             {"p", similarity}}}};
  return doc.dump();
}

std::string census_json(const CensusReport& r) {
  auto keyed = [](const auto& map) {
    json obj = json::object();
    for (const auto& [k, v] : map) obj[std::to_string(k)] = v;
    return obj;
  };
  json doc{{"spec",
            {{"n", r.spec.n},
             {"trials", r.spec.trials},
             {"shift", to_string(r.spec.shift)},
             {"seed", r.spec.seed},
             {"method", to_string(r.spec.method)}}},
           {"counts", keyed(r.counts)},
           {"ratios", keyed(r.ratios)},
           {"mean_real", r.mean_real},
           {"reference", r.reference ? keyed(*r.reference) : json(nullptr)},
           {"z_scores", r.z_scores ? keyed(*r.z_scores) : json(nullptr)},
           {"boundary_count", r.boundary_count},
           {"failures", r.failures}};
  return doc.dump(2) + "\n";
}

std::string census_csv(const CensusReport& r) {
  std::string out = "k,F,F/T,p_ref,z\n";
  for (std::size_t k : census_rows(r)) {
    const auto it = r.counts.find(k);
    const std::uint64_t f = it == r.counts.end() ? 0 : it->second;
    out += std::to_string(k) + "," + std::to_string(f) + "," +
           format_double(static_cast<double>(f) / static_cast<double>(r.spec.trials)) + ",";
    if (r.reference && r.reference->count(k)) {
      out += format_double(r.reference->at(k)) + "," + format_double(r.z_scores->at(k), "%.4f");
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

std::string census_pretty(const CensusReport& r) {
  const auto ks = census_rows(r);
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "n = %zu, trials = %llu, shift = %s, seed = %llu\n", r.spec.n,
                static_cast<unsigned long long>(r.spec.trials),
                std::string(to_string(r.spec.shift)).c_str(),
                static_cast<unsigned long long>(r.spec.seed));
  out += line;
  std::snprintf(line, sizeof line, "%4s  %12s  %12s  %12s  %9s\n", "k", "F", "F/T", "p_ref", "z");
  out += line;
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    const std::size_t k = *it;
    const auto c = r.counts.find(k);
    const std::uint64_t f = c == r.counts.end() ? 0 : c->second;
    const double ratio = static_cast<double>(f) / static_cast<double>(r.spec.trials);
    if (r.reference && r.reference->count(k)) {
      std::snprintf(line, sizeof line, "%4zu  %12llu  %12.3e  %12.3e  %9.3f\n", k,
                    static_cast<unsigned long long>(f), ratio, r.reference->at(k),
                    r.z_scores->at(k));
    } else {
      std::snprintf(line, sizeof line, "%4zu  %12llu  %12.3e  %12s  %9s\n", k,
                    static_cast<unsigned long long>(f), ratio, "-", "-");
    }
    out += line;
  }
  std::snprintf(line, sizeof line, "mean real eigenvalues = %.4f, failures = %llu\n", r.mean_real,
                static_cast<unsigned long long>(r.failures));
  out += line;
  return out;
}

}  // namespace rjcf::io
