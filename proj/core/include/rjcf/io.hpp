#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "rjcf/census.hpp"
#include "rjcf/jordan.hpp"
#include "rjcf/matrix.hpp"
#include "rjcf/montecarlo.hpp"
#include "rjcf/perturbation.hpp"
#include "rjcf/schur.hpp"

namespace rjcf::io {

// Matrix text format: a header line "rows cols", then one line per row with
// cols whitespace-separated decimal numbers. NaN and Inf are rejected.
Matrix parse_matrix(std::istream& in);
Matrix parse_matrix(std::string_view text);
Matrix read_matrix_file(const std::filesystem::path& path);
std::string format_matrix(const Matrix& a);

// {"pairs":[{"a":f,"b":f,"sizes":[...]}],"reals":[{"c":f,"sizes":[...]}]}
JordanStructure parse_structure(std::string_view json);
JordanStructure read_structure_file(const std::filesystem::path& path);
std::string structure_to_json(const JordanStructure& js);

std::string schur_report_json(const Matrix& a, const RealSchurForm& form);
std::string classification_json(const ClassificationResult& r);
std::string codim_json(std::size_t n, std::size_t orbit, long long bundle, CodimMethod method);

/// One JSON line per grid point, compact.
std::string sequence_step_json(const SequenceStep& step);
std::string sequence_summary_json(const SequenceReport& report, std::string_view similarity);

std::string census_json(const CensusReport& report);
/// Columns k, F, F/T, p_ref, z; ascending k.
std::string census_csv(const CensusReport& report);
/// Aligned table, descending k.
std::string census_pretty(const CensusReport& report);

}  // namespace rjcf::io
