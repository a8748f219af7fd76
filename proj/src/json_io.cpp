#include "purity/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace purity {

std::string double_string(double value, int sig_digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", sig_digits, value);
    return buffer;
}

nlohmann::ordered_json pdf_to_json(const PiecewisePdf& pdf) {
    nlohmann::ordered_json j;
    j["kind"] = "piecewise_pdf";
    j["p"] = pdf.dims().p;
    j["q"] = pdf.dims().q;
    j["frame"] = pdf.frame() == Frame::Purity ? "purity" : "linear_entropy";
    j["formula"] = pdf.formula();
    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    for (int i = 0; i < static_cast<int>(pdf.pieces().size()); ++i) {
        const Piece& piece = pdf.pieces()[i];
        nlohmann::ordered_json pj;
        pj["lo"] = piece.lo;
        pj["hi"] = piece.hi;
        pj["noise_scale"] = pdf.noise_scale(i);
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const Term& term : piece.terms) {
            nlohmann::ordered_json tj;
            tj["coeff"] = double_string(term.coeff);
            tj["nu"] = term.nu;
            tj["var"] = term.var == RadialVar::R ? "R" : "r";
            tj["basis"] = basis_name(term.basis.tag);
            if (term.basis.tag == Basis::ChiDiff) tj["chi_j2"] = term.basis.chi_j2;
            terms.push_back(std::move(tj));
        }
        pj["terms"] = std::move(terms);
        pieces.push_back(std::move(pj));
    }
    j["pieces"] = std::move(pieces);
    return j;
}

PiecewisePdf pdf_from_json(const nlohmann::json& j) {
    if (j.value("kind", "") != "piecewise_pdf")
        throw std::invalid_argument("pdf_from_json: not a piecewise_pdf document");
    const BipartiteDims dims(j.at("p").get<int>(), j.at("q").get<int>());
    const std::string frame_name = j.at("frame").get<std::string>();
    const Frame frame = frame_name == "purity" ? Frame::Purity : Frame::LinearEntropy;

    std::vector<double> breakpoints;
    std::vector<std::vector<Term>> piece_terms;
    std::vector<double> noise;
    for (const auto& pj : j.at("pieces")) {
        const double lo = pj.at("lo").get<double>();
        if (breakpoints.empty()) breakpoints.push_back(lo);
        breakpoints.push_back(pj.at("hi").get<double>());
        noise.push_back(pj.value("noise_scale", 0.0));
        std::vector<Term> terms;
        for (const auto& tj : pj.at("terms")) {
            Term term;
            term.coeff = std::stod(tj.at("coeff").get<std::string>());
            term.nu = tj.at("nu").get<int>();
            term.var = tj.at("var").get<std::string>() == "R" ? RadialVar::R : RadialVar::r;
            term.basis.tag = basis_from_name(tj.at("basis").get<std::string>());
            if (term.basis.tag == Basis::ChiDiff) term.basis.chi_j2 = tj.at("chi_j2").get<int>();
            terms.push_back(term);
        }
        piece_terms.push_back(std::move(terms));
    }
    return PiecewisePdf(dims, std::move(breakpoints), std::move(piece_terms),
                        j.value("formula", "deserialized"), frame, std::move(noise));
}

nlohmann::ordered_json report_to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["kind"] = "validation_report";
    j["p"] = report.p;
    j["q"] = report.q;
    j["sample_count"] = report.sample_count;
    j["seed"] = report.seed;
    j["alpha"] = report.alpha;
    j["ks_statistic"] = report.ks_statistic;
    j["ks_threshold"] = report.ks_threshold;
    j["pass"] = report.pass;
    nlohmann::ordered_json moments = nlohmann::ordered_json::array();
    for (const MomentDelta& delta : report.moment_deltas) {
        nlohmann::ordered_json mj;
        mj["n"] = delta.n;
        mj["empirical"] = delta.empirical;
        mj["exact"] = delta.exact;
        mj["standard_error"] = delta.standard_error;
        mj["sigmas"] = delta.standard_error > 0
                           ? (delta.empirical - delta.exact) / delta.standard_error
                           : 0.0;
        moments.push_back(std::move(mj));
    }
    j["moments"] = std::move(moments);
    nlohmann::ordered_json histogram;
    histogram["bin_edges"] = report.bin_edges;
    histogram["counts"] = report.bin_counts;
    j["histogram"] = std::move(histogram);
    return j;
}

} // namespace purity
