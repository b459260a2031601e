#include "finsec/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>

#include "finsec/csv.hpp"
#include "finsec/verify.hpp"

namespace finsec {

namespace {

struct TermSpec {
    double coef;
    int index;
};

// Parse "phi2+0.5*phi3"-style linear combinations of basis functions.
std::vector<TermSpec> parse_combo(const std::string& spec) {
    std::vector<TermSpec> terms;
    std::size_t pos = 0;
    double sign = 1.0;
    while (pos < spec.size()) {
        if (spec[pos] == '+') {
            sign = 1.0;
            ++pos;
            continue;
        }
        if (spec[pos] == '-') {
            sign = -1.0;
            ++pos;
            continue;
        }
        std::size_t end = spec.find_first_of("+-", pos);
        if (end == std::string::npos) end = spec.size();
        std::string term = spec.substr(pos, end - pos);
        pos = end;

        double coef = sign;
        if (const auto star = term.find('*'); star != std::string::npos) {
            coef = sign * parse_double(term.substr(0, star));
            term = term.substr(star + 1);
        }
        if (term.rfind("phi", 0) != 0) {
            throw ConfigError("expected a phiK term, got '" + term + "'");
        }
        int index = 0;
        try {
            index = std::stoi(term.substr(3));
        } catch (const std::exception&) {
            throw ConfigError("bad basis index in term '" + term + "'");
        }
        if (index < 1) {
            throw ConfigError("basis index must be >= 1 in term '" + term + "'");
        }
        terms.push_back(TermSpec{coef, index});
        sign = 1.0;
    }
    if (terms.empty()) {
        throw ConfigError("empty function specification '" + spec + "'");
    }
    return terms;
}

// True-solution specifications: "sin3" or a phiK combination.
RealFunction true_solution_function(const std::string& spec, const OrthonormalBasis& basis) {
    if (spec == "sin3") {
        return [](double s) {
            const double v = std::sin(M_PI * s);
            return v * v * v;
        };
    }
    const std::vector<TermSpec> terms = parse_combo(spec);
    return [terms, basis](double s) {
        double sum = 0.0;
        for (const TermSpec& term : terms) {
            sum += term.coef * basis.eval(term.index, s);
        }
        return sum;
    };
}

// Right-hand sides: "eK", "ones", "harmonic", "geometric[:r]",
// "coeffs:v1,v2,...".
CoefficientSource rhs_source(const std::string& spec) {
    if (spec.rfind("coeffs:", 0) == 0) {
        const std::vector<std::string> fields = split_csv_line(spec.substr(7));
        if (fields.empty()) {
            throw ConfigError("coeffs: needs at least one value");
        }
        Vector v(static_cast<Eigen::Index>(fields.size()));
        for (std::size_t k = 0; k < fields.size(); ++k) {
            v(static_cast<Eigen::Index>(k)) = parse_double(fields[k]);
        }
        return CoefficientSource::from_vector(std::move(v));
    }
    if (spec == "ones") {
        return CoefficientSource::from_formula([](int) { return 1.0; });
    }
    if (spec == "harmonic") {
        return CoefficientSource::from_formula([](int k) { return 1.0 / k; });
    }
    if (spec.rfind("geometric", 0) == 0) {
        double ratio = 0.5;
        if (const auto colon = spec.find(':'); colon != std::string::npos) {
            ratio = parse_double(spec.substr(colon + 1));
        }
        return CoefficientSource::from_formula(
            [ratio](int k) { return std::pow(ratio, k - 1); });
    }
    if (spec.size() > 1 && spec[0] == 'e') {
        int index = 0;
        try {
            index = std::stoi(spec.substr(1));
        } catch (const std::exception&) {
            throw ConfigError("bad unit-vector spec '" + spec + "'");
        }
        if (index < 1) {
            throw ConfigError("unit-vector index must be >= 1 in '" + spec + "'");
        }
        return CoefficientSource::from_formula(
            [index](int k) { return k == index ? 1.0 : 0.0; });
    }
    throw ConfigError("unknown right-hand side '" + spec + "'");
}

// Operators: exact fixtures ("identity", "diag-harmonic",
// "scaled-identity[:c]", "shift-banded[:off]") or catalog diffeomorphisms
// ("identity-map", "poly-quadratic", "exp-warp[:gamma]").
InfiniteMatrixRep rep_from_spec(const std::string& spec, const OrthonormalBasis& basis,
                                const QuadratureRule& rule) {
    std::string name = spec;
    std::string param;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        param = spec.substr(colon + 1);
    }
    if (name == "identity") return identity_rep();
    if (name == "diag-harmonic") return harmonic_diagonal_rep();
    if (name == "scaled-identity") {
        return scaled_identity_rep(param.empty() ? 2.0 : parse_double(param));
    }
    if (name == "shift-banded") {
        return shift_banded_rep(param.empty() ? 0.5 : parse_double(param));
    }
    const std::string diffeo_spec = name == "identity-map" ? "identity" : spec;
    return InfiniteMatrixRep::from_operator(
        CompositionOperator(diffeo_from_name(diffeo_spec), basis, basis), rule);
}

SectionMethod method_from_name(const std::string& name) {
    if (name == "over") return SectionMethod::Overdetermined;
    if (name == "under") return SectionMethod::Underdetermined;
    throw ConfigError("unknown method '" + name + "' (expected over or under)");
}

// Schedules: "ratioR:A..B" (doubling sizes A..B with m = R*n or n = R*m)
// or an explicit list "M1xN1,M2xN2,...".
Schedule schedule_from_spec(const std::string& spec, SectionMethod method) {
    if (spec.rfind("ratio", 0) == 0) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("ratio schedule needs ':first..last', got '" + spec + "'");
        }
        int ratio = 0;
        try {
            ratio = std::stoi(spec.substr(5, colon - 5));
        } catch (const std::exception&) {
            throw ConfigError("bad ratio in schedule '" + spec + "'");
        }
        const std::string range = spec.substr(colon + 1);
        const auto dots = range.find("..");
        if (dots == std::string::npos) {
            throw ConfigError("ratio schedule needs 'first..last', got '" + spec + "'");
        }
        int first = 0;
        int last = 0;
        try {
            first = std::stoi(range.substr(0, dots));
            last = std::stoi(range.substr(dots + 2));
        } catch (const std::exception&) {
            throw ConfigError("bad range in schedule '" + spec + "'");
        }
        if (first < 1 || last < first) {
            throw ConfigError("schedule range must satisfy 1 <= first <= last");
        }
        std::vector<int> sizes;
        for (int s = first; s <= last; s *= 2) sizes.push_back(s);
        return ratio_schedule(method, sizes, ratio);
    }

    Schedule schedule;
    for (const std::string& pair : split_csv_line(spec)) {
        const auto x = pair.find('x');
        if (x == std::string::npos) {
            throw ConfigError("schedule entry '" + pair + "' must look like MxN");
        }
        int m = 0;
        int n = 0;
        try {
            m = std::stoi(pair.substr(0, x));
            n = std::stoi(pair.substr(x + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad schedule entry '" + pair + "'");
        }
        schedule.emplace_back(m, n);
    }
    if (schedule.empty()) {
        throw ConfigError("empty schedule '" + spec + "'");
    }
    return schedule;
}

void emit(const std::string& contents, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << contents;
    } else {
        write_file(out_path, contents);
    }
}

struct CommonOptions {
    std::string op = "identity";
    std::string basis = "fourier";
    int quad_panels = 64;
    int quad_nodes = 16;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--op", common.op,
                    "Operator: identity | diag-harmonic | scaled-identity[:c] | "
                    "shift-banded[:off] | identity-map | poly-quadratic | exp-warp[:gamma]");
    cmd->add_option("--basis", common.basis, "Basis pair: fourier | legendre");
    cmd->add_option("--quad-panels", common.quad_panels, "Quadrature panels")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--quad-nodes", common.quad_nodes, "Gauss nodes per panel")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", common.out, "Output CSV path (default: stdout)");
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Finite-section solver for matrix representations of composition operators"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOptions rep_common, solve_common, conv_common;
    int rep_m = 8;
    int rep_n = 8;

    CLI::App* represent = app.add_subcommand(
        "represent", "Write the upper-left m x n section of the matrix representation");
    add_common(represent, rep_common);
    represent->add_option("--m", rep_m, "Rows")->check(CLI::PositiveNumber);
    represent->add_option("--n", rep_n, "Columns")->check(CLI::PositiveNumber);

    std::string solve_method = "over";
    int solve_m = 8;
    int solve_n = 4;
    std::string solve_rhs;
    std::string solve_true;

    CLI::App* solve = app.add_subcommand("solve", "Solve one rectangular finite section");
    add_common(solve, solve_common);
    solve->add_option("--method", solve_method, "over | under");
    solve->add_option("--m", solve_m, "Rows")->check(CLI::PositiveNumber);
    solve->add_option("--n", solve_n, "Columns")->check(CLI::PositiveNumber);
    solve->add_option("--rhs", solve_rhs,
                      "Right-hand side: eK | ones | harmonic | geometric[:r] | coeffs:v1,v2,...");
    solve->add_option("--true-solution", solve_true,
                      "Manufacture y = T f_true: sin3 | phiK combination like phi2+0.5*phi3");

    std::string conv_method = "over";
    std::string conv_schedule = "ratio2:4..64";
    std::string conv_rhs;
    std::string conv_true;
    int conv_ref_size = 0;

    CLI::App* converge = app.add_subcommand(
        "converge", "Run a convergence sweep over a schedule of sections");
    add_common(converge, conv_common);
    converge->add_option("--method", conv_method, "over | under");
    converge->add_option("--schedule", conv_schedule,
                         "ratioR:first..last (doubling) or M1xN1,M2xN2,...");
    converge->add_option("--rhs", conv_rhs, "Right-hand side (see solve)");
    converge->add_option("--true-solution", conv_true,
                         "Manufactured true solution (default sin3 when no --rhs)");
    converge->add_option("--ref-size", conv_ref_size,
                         "Reference resolution (default: twice the largest solution length)");

    std::string verify_suite = "all";
    int verify_trials = 100;
    std::uint64_t verify_seed = 1;
    CommonOptions verify_common;

    CLI::App* verify = app.add_subcommand(
        "verify", "Run verification suites; nonzero exit on any violation");
    verify->add_option("suite", verify_suite,
                       "all | det-theorem | pythagoras | schur | norm-bounds");
    verify->add_option("--trials", verify_trials, "Random trials per check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "Random seed");
    verify->add_option("--quad-panels", verify_common.quad_panels, "Quadrature panels")
        ->check(CLI::PositiveNumber);
    verify->add_option("--quad-nodes", verify_common.quad_nodes, "Gauss nodes per panel")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", verify_common.out, "Output CSV path");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("finsec");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        // Prints help or the parse diagnostic, as appropriate.
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (app.got_subcommand(represent)) {
        const QuadratureRule rule(rep_common.quad_panels, rep_common.quad_nodes);
        const OrthonormalBasis basis = basis_from_name(rep_common.basis);
        const InfiniteMatrixRep rep = rep_from_spec(rep_common.op, basis, rule);
        emit(section_csv(rep.section(rep_m, rep_n)), rep_common.out);
        return kExitOk;
    }

    if (app.got_subcommand(solve)) {
        const QuadratureRule rule(solve_common.quad_panels, solve_common.quad_nodes);
        const OrthonormalBasis basis = basis_from_name(solve_common.basis);
        const InfiniteMatrixRep rep = rep_from_spec(solve_common.op, basis, rule);
        const SectionMethod method = method_from_name(solve_method);

        CoefficientSource y = CoefficientSource::from_formula([](int) { return 0.0; });
        if (!solve_true.empty()) {
            const auto& op = rep.source_operator();
            if (!op) {
                throw ConfigError("--true-solution requires a diffeomorphism operator");
            }
            y = forward_apply(*op, true_solution_function(solve_true, basis), rule);
        } else if (!solve_rhs.empty()) {
            y = rhs_source(solve_rhs);
        } else {
            throw ConfigError("solve needs --rhs or --true-solution");
        }

        const SectionSolution sol = method == SectionMethod::Overdetermined
                                        ? solve_overdetermined(rep, y, solve_m, solve_n)
                                        : solve_underdetermined(rep, y, solve_m, solve_n);
        emit(solution_csv(sol), solve_common.out);
        std::cout << "method=" << method_name(sol.method) << " m=" << sol.m
                  << " n=" << sol.n << " residual_norm=" << format_double(sol.residual_norm)
                  << " solution_norm=" << format_double(sol.solution_norm) << "\n";
        return kExitOk;
    }

    if (app.got_subcommand(converge)) {
        const QuadratureRule rule(conv_common.quad_panels, conv_common.quad_nodes);
        const OrthonormalBasis basis = basis_from_name(conv_common.basis);
        const InfiniteMatrixRep rep = rep_from_spec(conv_common.op, basis, rule);
        const SectionMethod method = method_from_name(conv_method);
        const Schedule schedule = schedule_from_spec(conv_schedule, method);

        int max_solution_len = 0;
        for (const auto& [m, n] : schedule) max_solution_len = std::max(max_solution_len, n);
        int ref_size = conv_ref_size > 0 ? conv_ref_size : 2 * max_solution_len;
        if (ref_size < 2 * max_solution_len) {
            throw ConfigError("--ref-size must be at least twice the largest scheduled n");
        }

        CoefficientSource y = CoefficientSource::from_formula([](int) { return 0.0; });
        Vector reference;
        if (!conv_rhs.empty()) {
            y = rhs_source(conv_rhs);
            // No known solution: use a high-resolution minimum-norm solve
            // as the reference.
            const int ref_n = std::max(256, ref_size);
            reference = solve_underdetermined(rep, y, ref_n / 2, ref_n).coeffs;
        } else {
            const std::string spec = conv_true.empty() ? "sin3" : conv_true;
            const auto& op = rep.source_operator();
            if (!op) {
                throw ConfigError("manufactured problems require a diffeomorphism operator");
            }
            const RealFunction f_true = true_solution_function(spec, basis);
            y = forward_apply(*op, f_true, rule);
            reference = coefficients(f_true, basis, ref_size, rule);
        }

        const std::vector<ConvergenceRecord> records =
            method == SectionMethod::Overdetermined
                ? converge_over(rep, y, schedule, reference)
                : converge_under(rep, y, schedule, reference);
        emit(convergence_csv(records), conv_common.out);
        int failed = 0;
        for (const ConvergenceRecord& rec : records) failed += rec.failed ? 1 : 0;
        std::cout << "rows=" << records.size() << " failed=" << failed
                  << " first_error=" << format_double(records.front().error_to_reference)
                  << " last_error=" << format_double(records.back().error_to_reference)
                  << "\n";
        return kExitOk;
    }

    // verify
    const QuadratureRule rule(verify_common.quad_panels, verify_common.quad_nodes);
    std::vector<CheckRow> rows;
    if (verify_suite == "all") {
        rows = verify_all(verify_trials, verify_seed, rule);
    } else if (verify_suite == "det-theorem") {
        rows = verify_det_theorem(verify_trials, verify_seed);
    } else if (verify_suite == "pythagoras") {
        rows = verify_pythagoras(std::max(verify_trials, 200), verify_seed);
    } else if (verify_suite == "schur") {
        rows = verify_schur(32, rule);
    } else if (verify_suite == "norm-bounds") {
        rows = verify_norm_bounds(64, rule);
    } else {
        throw ConfigError("unknown verify suite '" + verify_suite + "'");
    }
    if (!verify_common.out.empty()) {
        write_file(verify_common.out, verify_csv(rows));
    }
    for (const CheckRow& row : rows) {
        std::cout << (row.pass ? "PASS " : "FAIL ") << row.suite << "/" << row.check
                  << " trials=" << row.trials << " worst=" << format_double(row.worst)
                  << "\n";
    }
    if (!all_pass(rows)) {
        std::cout << "VERIFY FAILED\n";
        return kExitVerifyFailed;
    }
    std::cout << "VERIFY OK\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DimensionMismatch& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const RankDeficient& e) {
        std::cerr << "rank error: " << e.what() << "\n";
        return kExitRankDeficient;
    } catch (const NonFiniteValue& e) {
        std::cerr << "non-finite value: " << e.what() << "\n";
        return kExitNonFinite;
    } catch (const IndexOutOfRange& e) {
        std::cerr << "index error: " << e.what() << "\n";
        return kExitIndex;
    } catch (const InverseNotConverged& e) {
        std::cerr << "inverse iteration error: " << e.what() << "\n";
        return kExitInverse;
    } catch (const TooManyMinors& e) {
        std::cerr << "minor enumeration error: " << e.what() << "\n";
        return kExitMinors;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
}

} // namespace finsec
