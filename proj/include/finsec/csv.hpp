#pragma once

#include <string>
#include <vector>

#include "finsec/finite_section.hpp"

namespace finsec {

// Shortest representation that round-trips a double exactly.
std::string format_double(double value);
// Full-precision scientific notation.
std::string format_double_sci(double value);

std::string section_csv(const DenseMatrix& block);
std::string solution_csv(const SectionSolution& solution);
std::string convergence_csv(const std::vector<ConvergenceRecord>& records);

std::vector<std::string> split_csv_line(const std::string& line);
double parse_double(const std::string& field);

void write_file(const std::string& path, const std::string& contents);

} // namespace finsec
