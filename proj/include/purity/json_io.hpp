#pragma once

#include <json.hpp>

#include "purity/mc.hpp"
#include "purity/piecewise_pdf.hpp"

namespace purity {

/// PiecewisePdf as JSON: interval bounds, term lists with basis tags as
/// strings and coefficients as decimal strings with 17 significant digits.
nlohmann::ordered_json pdf_to_json(const PiecewisePdf& pdf);
PiecewisePdf pdf_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const ValidationReport& report);

/// Decimal string that round-trips the double at the given precision
/// (default 17 significant digits, the full double precision).
std::string double_string(double value, int sig_digits = 17);

} // namespace purity
