#include "purity/dims.hpp"

namespace purity {

namespace {
constexpr double kDomainSlack = 1e-12;
}

double linear_entropy_from_purity(const BipartiteDims& dims, double R) {
    const double lo = dims.support_lo();
    if (R < lo - kDomainSlack || R > 1.0 + kDomainSlack)
        throw std::domain_error("linear_entropy_from_purity: R=" + std::to_string(R) +
                                " outside [1/" + std::to_string(dims.p) + ", 1]");
    return static_cast<double>(dims.p) / (dims.p - 1) * (1.0 - R);
}

double purity_from_linear_entropy(const BipartiteDims& dims, double s_lin) {
    if (s_lin < -kDomainSlack || s_lin > 1.0 + kDomainSlack)
        throw std::domain_error("purity_from_linear_entropy: S_L=" + std::to_string(s_lin) +
                                " outside [0, 1]");
    return 1.0 - static_cast<double>(dims.p - 1) / dims.p * s_lin;
}

} // namespace purity
