#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "purity/dims.hpp"

namespace purity {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). Backed by GMP.
using Rational = mpq_class;

/// n! as an arbitrary-precision integer (cached per thread).
const mpz_class& factorial(unsigned n);

/// Binomial coefficient C(n, k) as an arbitrary-precision integer.
mpz_class binomial(unsigned n, unsigned k);

/// Enumerates all compositions of n into p nonnegative ordered parts,
/// lexicographically ascending: (0,...,0,n) first, (n,0,...,0) last.
class CompositionEnumerator {
public:
    CompositionEnumerator(int n, int p);

    /// Writes the next composition into parts (resized to p) and returns true,
    /// or returns false when the stream is exhausted.
    bool next(std::vector<int>& parts);

private:
    int n_;
    int p_;
    bool done_;
    bool started_;
    std::vector<int> current_;
};

/// Number of compositions of n into p parts, C(n+p-1, p-1).
mpz_class composition_count(int n, int p);

/// Exact n-th moment <R^n> of the purity of a Haar-random p x q pure state:
///
///   <R^n> = p! (pq-1)!/(pq+2n-1)! * sum over compositions n1+...+np = n of
///           n!/(n1!...np!) * prod_i (q+2 n_i - i)!/((q-i)! i!)
///           * prod_{i<j} (2 n_i - i - 2 n_j + j)
///
/// evaluated entirely in integer/rational arithmetic. <R^0> = 1 exactly.
Rational purity_moment(const BipartiteDims& dims, int n);

/// Normalization constant of the joint Schmidt-coefficient density,
///   A = (pq-1)! / prod_{j=0..p-1} (q-j-1)!(p-j)!.
Rational schmidt_density_normalization(const BipartiteDims& dims);

/// "num/den" (canonical form; "x/1" for integers).
std::string to_fraction_string(const Rational& value);

/// Decimal string with the given number of significant digits.
std::string to_decimal_string(const Rational& value, int sig_digits = 17);

/// Nearest double.
double to_double(const Rational& value);

} // namespace purity
