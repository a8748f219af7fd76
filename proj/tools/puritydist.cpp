// puritydist: exact purity / linear-entropy densities of bipartite
// Haar-random pure states, exact moments, Monte Carlo validation, and the
// moment-matching reconstruction for p = 4.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "purity/closed_form.hpp"
#include "purity/errors.hpp"
#include "purity/exact_moments.hpp"
#include "purity/json_io.hpp"
#include "purity/mc.hpp"
#include "purity/quadrature.hpp"
#include "purity/solver.hpp"

using namespace purity;

namespace {

struct OutputSpec {
    std::string format = "csv";  // csv | json
    std::string path;            // empty = stdout
    int precision = 17;
};

void add_output_flags(CLI::App* cmd, OutputSpec& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
    cmd->add_option("--precision", out.precision, "Significant digits in numeric output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
}

void write_text(const OutputSpec& out, const std::string& text) {
    if (out.path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream file(out.path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out.path);
    file << text;
}

std::string format_double(double value, int precision) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    return buffer;
}

// Density dispatch: closed forms for p = 2, 3 and (4,4); the moment solver
// for p = 4, q > 4 (or on request for q = 4).
PiecewisePdf dispatch_pdf(int p, int q, bool force_solver, unsigned solver_digits,
                          const std::string& cache_path) {
    const BipartiteDims dims(p, q);
    if (dims.p == 4 && (dims.q > 4 || force_solver)) {
        Solve4xqResult result;
        bool from_cache = false;
        if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
            std::ifstream in(cache_path, std::ios::binary);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            Solve4xqResult cached;
            if (solve_result_from_json(text, cached) && cached.q == q &&
                cached.digits == (solver_digits ? solver_digits
                                                : default_solver_digits(q - 4)))
                result = std::move(cached), from_cache = true;
        }
        if (!from_cache) {
            result = solve_4xq(q, solver_digits);
            if (!cache_path.empty()) {
                std::ofstream outf(cache_path, std::ios::binary);
                outf << solve_result_to_json(result);
            }
        }
        if (result.held_out_max_rel > 1e-8)
            throw NumericalError("solver verification failed: held-out residual " +
                                 std::to_string(result.held_out_max_rel));
        return result.to_pdf();
    }
    if (has_closed_form(dims)) return closed_form_pdf(dims);
    throw CLI::ValidationError(
        "--p/--q",
        "unsupported dimensions (" + std::to_string(p) + "," + std::to_string(q) +
            "); supported: p=2 with q>=2, p=3 with q>=3, p=4 with q>=4 (solver for q>4)");
}

std::string default_cache_path(int q, unsigned digits) {
    const char* dir = std::getenv("PURITYDIST_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return {};
    return std::string(dir) + "/solve4xq_q" + std::to_string(q) + "_prec" +
           std::to_string(digits) + ".json";
}

int cmd_pdf(int p, int q, std::optional<double> at, int grid, const std::string& variable,
            bool force_solver, unsigned solver_digits, std::string cache_path, bool emit_terms,
            const OutputSpec& out) {
    if (cache_path.empty() && p == 4)
        cache_path = default_cache_path(q, solver_digits ? solver_digits
                                                         : default_solver_digits(q - 4));
    PiecewisePdf pdf = dispatch_pdf(p, q, force_solver, solver_digits, cache_path);
    if (variable == "linear-entropy") pdf = to_linear_entropy(pdf);
    const char* var_name = variable == "linear-entropy" ? "S_L" : "R";

    if (emit_terms) {
        write_text(out, pdf_to_json(pdf).dump(2) + "\n");
        return 0;
    }

    std::vector<double> xs;
    if (at.has_value())
        xs.push_back(*at);
    else
        xs = linspace(variable == "linear-entropy" ? 0.0 : pdf.dims().support_lo(), 1.0, grid);
    const std::vector<double> values = eval_grid(pdf, xs);

    if (out.format == "csv") {
        std::string text = std::string(var_name) + ",density,formula\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
            text += format_double(xs[i], out.precision) + "," +
                    format_double(values[i], out.precision) + "," + pdf.formula() + "\n";
        write_text(out, text);
    } else {
        nlohmann::ordered_json j;
        j["p"] = p;
        j["q"] = q;
        j["variable"] = variable;
        j["formula"] = pdf.formula();
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            nlohmann::ordered_json row;
            row[var_name] = format_double(xs[i], out.precision);
            row["density"] = format_double(values[i], out.precision);
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        write_text(out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_moments(int p, int q, int n_max, const OutputSpec& out) {
    const BipartiteDims dims(p, q);
    if (out.format == "csv") {
        std::string text = "n,fraction,decimal\n";
        for (int n = 0; n <= n_max; ++n) {
            const Rational moment = purity_moment(dims, n);
            text += std::to_string(n) + "," + to_fraction_string(moment) + "," +
                    to_decimal_string(moment, out.precision) + "\n";
        }
        write_text(out, text);
    } else {
        nlohmann::ordered_json j;
        j["p"] = p;
        j["q"] = q;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int n = 0; n <= n_max; ++n) {
            const Rational moment = purity_moment(dims, n);
            nlohmann::ordered_json row;
            row["n"] = n;
            row["fraction"] = to_fraction_string(moment);
            row["decimal"] = to_decimal_string(moment, out.precision);
            rows.push_back(std::move(row));
        }
        j["moments"] = std::move(rows);
        write_text(out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_sample(int p, int q, std::size_t count, std::uint64_t seed, const OutputSpec& out) {
    const BipartiteDims dims(p, q);
    const std::vector<double> purities = sample_purities(dims, count, seed);
    std::string text = "purity\n";
    for (double R : purities) text += format_double(R, out.precision) + "\n";
    write_text(out, text);
    return 0;
}

int cmd_validate(int p, int q, std::size_t count, int bins, std::uint64_t seed, int pdf_p,
                 int pdf_q, const OutputSpec& out) {
    const BipartiteDims dims(p, q);
    const BipartiteDims pdf_dims(pdf_p > 0 ? pdf_p : p, pdf_q > 0 ? pdf_q : q);
    const PiecewisePdf pdf = closed_form_pdf(pdf_dims);
    const ValidationReport report = validate(dims, pdf, count, bins, seed);
    write_text(out, report_to_json(report).dump(2) + "\n");
    return report.pass ? 0 : 1;
}

int cmd_solve4xq(int q, unsigned digits, std::string cache_path, const OutputSpec& out) {
    const unsigned effective = digits ? digits : default_solver_digits(q - 4);
    if (cache_path.empty()) cache_path = default_cache_path(q, effective);

    Solve4xqResult result;
    std::string cache_status = "disabled";
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        std::ifstream in(cache_path, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        Solve4xqResult cached;
        if (solve_result_from_json(text, cached) && cached.q == q && cached.digits == effective) {
            result = std::move(cached);
            cache_status = "hit";
        }
    }
    if (cache_status != "hit") {
        result = solve_4xq(q, effective);
        if (!cache_path.empty()) {
            std::ofstream outf(cache_path, std::ios::binary);
            outf << solve_result_to_json(result);
            cache_status = "miss";
        }
    }

    nlohmann::ordered_json j = nlohmann::ordered_json::parse(solve_result_to_json(result));
    j["cache"] = cache_status;

    // summary of the reconstructed density
    const PiecewisePdf pdf = result.to_pdf();
    nlohmann::ordered_json summary;
    summary["breakpoints"] = {0.25, 1.0 / 3.0, 0.5, 1.0};
    summary["normalization"] = pdf_norm(pdf);
    if (q == 4) {
        const PiecewisePdf closed = pdf_4x4();
        double worst = 0.0;
        for (double R : linspace(0.25, 1.0, 300))
            worst = std::max(worst, std::abs(pdf(R) - closed(R)));
        summary["max_abs_deviation_from_closed_form"] = worst;
    }
    j["pdf_summary"] = std::move(summary);
    write_text(out, j.dump(2) + "\n");

    const bool ok = result.held_out_max_rel <= 1e-8;
    if (!ok)
        std::fprintf(stderr, "verification FAILED: held-out residual %.3e > 1e-8\n",
                     result.held_out_max_rel);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Purity and linear-entropy distributions of bipartite random pure states"};
    app.require_subcommand(1);

    // pdf
    auto* pdf_cmd = app.add_subcommand("pdf", "Tabulate an exact density");
    int p = 2, q = 2;
    std::optional<double> at;
    int grid = 201;
    std::string variable = "purity";
    bool force_solver = false;
    unsigned solver_digits = 0;
    std::string cache_path;
    OutputSpec pdf_out;
    pdf_cmd->add_option("--p", p, "Smaller subsystem dimension")->required();
    pdf_cmd->add_option("--q", q, "Larger subsystem dimension")->required();
    pdf_cmd->add_option("--r", at, "Evaluate at a single point instead of a grid");
    pdf_cmd->add_option("--grid", grid, "Number of grid points")->check(CLI::PositiveNumber);
    pdf_cmd->add_option("--variable", variable, "Density variable")
        ->check(CLI::IsMember({"purity", "linear-entropy"}))
        ->capture_default_str();
    pdf_cmd->add_flag("--force-solver", force_solver,
                      "Use the moment solver even where a closed form exists (p=4 only)");
    bool emit_terms = false;
    pdf_cmd->add_flag("--terms", emit_terms,
                      "Emit the piecewise term-list document (JSON) instead of a value table");
    pdf_cmd->add_option("--solver-precision", solver_digits,
                        "Working precision (decimal digits) for the p=4 solver");
    pdf_cmd->add_option("--cache", cache_path, "Solver cache file (p=4 only)");
    add_output_flags(pdf_cmd, pdf_out);

    // moments
    auto* moments_cmd = app.add_subcommand("moments", "Exact purity moments as fractions");
    int mp = 2, mq = 2, n_max = 6;
    OutputSpec moments_out;
    moments_cmd->add_option("--p", mp, "Smaller subsystem dimension")->required();
    moments_cmd->add_option("--q", mq, "Larger subsystem dimension")->required();
    moments_cmd->add_option("--n-max", n_max, "Largest moment order")->check(CLI::PositiveNumber);
    add_output_flags(moments_cmd, moments_out);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Draw purity samples (CSV column)");
    int sp = 2, sq = 2;
    std::size_t count = 100000;
    std::uint64_t seed = 1;
    OutputSpec sample_out;
    sample_cmd->add_option("--p", sp, "Smaller subsystem dimension")->required();
    sample_cmd->add_option("--q", sq, "Larger subsystem dimension")->required();
    sample_cmd->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", seed, "Random seed");
    add_output_flags(sample_cmd, sample_out);

    // validate
    auto* validate_cmd =
        app.add_subcommand("validate", "Monte Carlo vs analytic density (KS + moments)");
    int vp = 2, vq = 2, bins = 200, pdf_p = 0, pdf_q = 0;
    std::size_t vcount = 1000000;
    std::uint64_t vseed = 1;
    OutputSpec validate_out;
    validate_cmd->add_option("--p", vp, "Smaller subsystem dimension")->required();
    validate_cmd->add_option("--q", vq, "Larger subsystem dimension")->required();
    validate_cmd->add_option("--count", vcount, "Number of samples")
        ->check(CLI::PositiveNumber);
    validate_cmd->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);
    validate_cmd->add_option("--seed", vseed, "Random seed");
    validate_cmd->add_option("--pdf-p", pdf_p,
                             "Compare against the density of a different p (negative control)");
    validate_cmd->add_option("--pdf-q", pdf_q,
                             "Compare against the density of a different q (negative control)");
    add_output_flags(validate_cmd, validate_out);

    // solve4xq
    auto* solve_cmd =
        app.add_subcommand("solve4xq", "Reconstruct the p=4 density from exact moments");
    int solve_q = 4;
    unsigned solve_digits = 0;
    std::string solve_cache;
    OutputSpec solve_out;
    solve_cmd->add_option("--q", solve_q, "Larger subsystem dimension (>= 4)")->required();
    solve_cmd->add_option("--precision", solve_digits,
                          "Working precision in decimal digits (0 = per-q default)");
    solve_cmd->add_option("--cache", solve_cache,
                          "Cache file (default: $PURITYDIST_CACHE_DIR/solve4xq_q<q>_prec<digits>)");
    solve_cmd->add_option("-o,--output", solve_out.path, "Output file (default: stdout)");
    solve_cmd->add_option("--format", solve_out.format, "Output format")
        ->check(CLI::IsMember({"json"}))
        ->capture_default_str();
    solve_out.format = "json";

    CLI11_PARSE(app, argc, argv);

    try {
        if (pdf_cmd->parsed())
            return cmd_pdf(p, q, at, grid, variable, force_solver, solver_digits, cache_path,
                           emit_terms, pdf_out);
        if (moments_cmd->parsed()) return cmd_moments(mp, mq, n_max, moments_out);
        if (sample_cmd->parsed()) return cmd_sample(sp, sq, count, seed, sample_out);
        if (validate_cmd->parsed())
            return cmd_validate(vp, vq, vcount, bins, vseed, pdf_p, pdf_q, validate_out);
        if (solve_cmd->parsed()) return cmd_solve4xq(solve_q, solve_digits, solve_cache, solve_out);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
