#include "finsec/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace finsec {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string format_double_sci(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", value);
    return buf;
}

std::string section_csv(const DenseMatrix& block) {
    std::string out;
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
        for (Eigen::Index j = 0; j < block.cols(); ++j) {
            if (j) out += ',';
            out += format_double_sci(block(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string solution_csv(const SectionSolution& solution) {
    std::string out = "index,coefficient\n";
    for (Eigen::Index k = 0; k < solution.coeffs.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += format_double(solution.coeffs(k));
        out += '\n';
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRecord>& records) {
    std::string out = "m,n,error,residual,solution_norm,sigma_min\n";
    for (const ConvergenceRecord& rec : records) {
        out += std::to_string(rec.m);
        out += ',';
        out += std::to_string(rec.n);
        out += ',';
        out += format_double(rec.error_to_reference);
        out += ',';
        out += format_double(rec.residual_norm);
        out += ',';
        out += format_double(rec.solution_norm);
        out += ',';
        out += format_double(rec.sigma_min);
        out += '\n';
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

double parse_double(const std::string& field) {
    try {
        return std::stod(field);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse '" + field + "' as a number");
    }
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << contents;
    if (!out) {
        throw ConfigError("failed writing '" + path + "'");
    }
}

} // namespace finsec
