#include "purity/exact_moments.hpp"

#include <mpfr.h>

#include <deque>
#include <stdexcept>

namespace purity {

const mpz_class& factorial(unsigned n) {
    // deque: push_back never invalidates references handed out earlier.
    thread_local std::deque<mpz_class> cache{mpz_class(1), mpz_class(1)};
    while (cache.size() <= n) {
        mpz_class next = cache.back();
        next *= static_cast<unsigned long>(cache.size());
        cache.push_back(std::move(next));
    }
    return cache[n];
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

CompositionEnumerator::CompositionEnumerator(int n, int p) : n_(n), p_(p) {
    if (n < 0) throw std::domain_error("CompositionEnumerator: n must be >= 0");
    if (p < 1) throw std::domain_error("CompositionEnumerator: p must be >= 1");
    done_ = false;
    started_ = false;
    current_.assign(p_, 0);
    current_[p_ - 1] = n_;
}

bool CompositionEnumerator::next(std::vector<int>& parts) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        parts = current_;
        return true;
    }
    if (p_ == 1 || current_[0] == n_) {
        done_ = true;
        return false;
    }
    // Lexicographic successor: move one unit onto the rightmost position that
    // has weight strictly to its right, and flush that remaining weight to
    // the end.
    int suffix = current_[p_ - 1];
    int j = p_ - 2;
    while (suffix == 0) {
        suffix = current_[j];
        --j;
    }
    current_[j] += 1;
    for (int i = j + 1; i < p_ - 1; ++i) current_[i] = 0;
    current_[p_ - 1] = suffix - 1;
    parts = current_;
    return true;
}

mpz_class composition_count(int n, int p) {
    if (n < 0 || p < 1) throw std::domain_error("composition_count: need n >= 0, p >= 1");
    return binomial(static_cast<unsigned>(n + p - 1), static_cast<unsigned>(p - 1));
}

Rational purity_moment(const BipartiteDims& dims, int n) {
    if (n < 0) throw std::domain_error("purity_moment: n must be >= 0");
    const int p = dims.p;
    const int q = dims.q;

    // Every composition contributes a pure integer once the constant
    // denominators are pulled out front:
    //   n!/(prod n_i!) * prod_i (q+2n_i-i)! * prod_{i<j} (2n_i-i-2n_j+j).
    mpz_class sum = 0;
    mpz_class term, vprod;
    std::vector<int> parts;
    CompositionEnumerator comps(n, p);
    while (comps.next(parts)) {
        vprod = 1;
        bool zero = false;
        for (int i = 0; i < p && !zero; ++i) {
            for (int j = i + 1; j < p; ++j) {
                const long factor = 2L * parts[i] - (i + 1) - 2L * parts[j] + (j + 1);
                if (factor == 0) {
                    zero = true;
                    break;
                }
                vprod *= factor;
            }
        }
        if (zero) continue;

        term = factorial(static_cast<unsigned>(n));
        for (int i = 0; i < p; ++i)
            mpz_divexact(term.get_mpz_t(), term.get_mpz_t(),
                         factorial(static_cast<unsigned>(parts[i])).get_mpz_t());
        for (int i = 0; i < p; ++i)
            term *= factorial(static_cast<unsigned>(q + 2 * parts[i] - (i + 1)));
        term *= vprod;
        sum += term;
    }

    mpz_class num = factorial(static_cast<unsigned>(p));
    num *= factorial(static_cast<unsigned>(p * q - 1));
    num *= sum;
    mpz_class den = factorial(static_cast<unsigned>(p * q + 2 * n - 1));
    for (int i = 1; i <= p; ++i) {
        den *= factorial(static_cast<unsigned>(q - i));
        den *= factorial(static_cast<unsigned>(i));
    }
    Rational result(num, den);
    result.canonicalize();
    return result;
}

Rational schmidt_density_normalization(const BipartiteDims& dims) {
    const int p = dims.p;
    const int q = dims.q;
    mpz_class den = 1;
    for (int j = 0; j <= p - 1; ++j) {
        den *= factorial(static_cast<unsigned>(q - j - 1));
        den *= factorial(static_cast<unsigned>(p - j));
    }
    Rational result(factorial(static_cast<unsigned>(p * q - 1)), den);
    result.canonicalize();
    return result;
}

std::string to_fraction_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(const Rational& value, int sig_digits) {
    if (sig_digits < 1) throw std::invalid_argument("to_decimal_string: need >= 1 digit");
    // Evaluate at generous precision, then let mpf print the rounded digits.
    const mp_bitcnt_t bits = static_cast<mp_bitcnt_t>((sig_digits + 8) * 4);
    mpf_class x(value, bits);
    mp_exp_t exp10 = 0;
    std::string digits = x.get_str(exp10, 10, static_cast<std::size_t>(sig_digits));
    bool negative = false;
    if (!digits.empty() && digits[0] == '-') {
        negative = true;
        digits.erase(digits.begin());
    }
    if (digits.empty()) return "0";
    digits.resize(static_cast<std::size_t>(sig_digits), '0');
    std::string out = negative ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exp10 - 1);
    return out;
}

double to_double(const Rational& value) {
    // mpq_get_d truncates toward zero; round to nearest through MPFR instead.
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
    const double result = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return result;
}

} // namespace purity
