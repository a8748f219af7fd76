#pragma once

#include "purity/piecewise_pdf.hpp"

namespace purity {

/// P(R) for p = 2, q >= 2: a single piece on [1/2, 1],
///   (2q-1)!/(2^{q-1}(q-1)!(q-2)!) * (1-R)^{q-2} * sqrt(2R-1).
PiecewisePdf pdf_2xq(int q);

/// P(R) for p = q = 3: two pieces with breakpoint 1/2,
///   70 sqrt(3) * [ 2 pi (R-1/3)^3 ]                                 on [1/3, 1/2]
///   70 sqrt(3) * [ 6 (R-1/3)^3 (pi/3 - arccos(1/sqrt(6R-2)))
///                  + (R-1)(R-5/9) sqrt(6R-3) ]                      on [1/2, 1]
PiecewisePdf pdf_3x3();

/// P(R) for p = 3, q >= 3: the general double-sum form over the chi basis,
/// with d = q - 3. Reduces exactly to pdf_3x3 at q = 3.
PiecewisePdf pdf_3xq(int q);

/// P(R) for p = q = 4: three pieces with breakpoints 1/3 and 1/2, built from
/// (4R-1)^{13/2} monomials, two fixed degree-6 polynomials and the
/// arccos basis terms.
PiecewisePdf pdf_4x4();

/// Closed-form dispatch: p = 2 -> pdf_2xq, p = 3 -> pdf_3x3/pdf_3xq,
/// (4,4) -> pdf_4x4. Throws std::domain_error for anything else
/// (p = 4, q > 4 is served by the moment-matching solver).
PiecewisePdf closed_form_pdf(const BipartiteDims& dims);

/// True if closed_form_pdf supports dims.
bool has_closed_form(const BipartiteDims& dims);

} // namespace purity
