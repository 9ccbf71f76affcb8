#pragma once

#include "atlas/types.hpp"

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace atlas {

struct Cell;
struct LatticePolytope;

using Complex = std::complex<double>;

struct Term {
    LatticePoint exponent;
    Complex coefficient;

    bool operator==(const Term&) const = default;
};

/// Finite sum of monomials a_s x^s with s in Z^n and nonzero complex a_s.
///
/// Terms are kept sorted lexicographically by exponent with like terms merged,
/// so two polynomials compare equal iff their term maps agree.
class LaurentPolynomial {
public:
    /// Merges like terms and drops zero coefficients. Throws InputError when
    /// nothing is left or an exponent has the wrong length.
    LaurentPolynomial(int dimension, std::vector<Term> terms);

    int dimension() const { return dimension_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::vector<LatticePoint> support() const;

    /// Coefficient of x^s, zero when s is not in the support.
    Complex coefficient(const LatticePoint& s) const;

    bool operator==(const LaurentPolynomial&) const = default;

private:
    int dimension_;
    std::vector<Term> terms_;
};

/// Parses `c * x^i * y^j + ...`. Variables are x, y, z or x1..xn; exponents may be
/// negative; coefficients are real literals or `(re,im)`; `/ number` divides a term.
/// `min_dimension` pads the variable count (e.g. 3 for a polynomial in x, y only).
LaurentPolynomial parse_polynomial(std::string_view text, int min_dimension = 0);

/// Canonical text form; parse_polynomial(to_string(f)) == f.
std::string to_string(const LaurentPolynomial& f);

/// Sum of a_s x^s. Throws InputError for a zero coordinate meeting a negative exponent.
Complex evaluate(const LaurentPolynomial& f, std::span<const Complex> x);

/// f^[r] = sum a_s^r x^s with the principal branch of Arg. Requires r > 0; throws
/// InputError when a powered coefficient underflows below 1e-300 or overflows.
LaurentPolynomial hadamard_power(const LaurentPolynomial& f, double r);

LatticePolytope newton_polytope(const LaurentPolynomial& f);

/// Keeps the terms whose exponents lie in the cell (boundary included).
LaurentPolynomial restrict_to_cell(const LaurentPolynomial& f, const Cell& cell);

/// Monomial with its coefficient stored as (log |a|, Arg a). Used wherever
/// Hadamard powers of large order would overflow a double.
struct LogTerm {
    LatticePoint exponent;
    double log_modulus;
    double phase;
};

struct LogPolynomial {
    int dimension = 0;
    std::vector<LogTerm> terms;
};

LogPolynomial to_log_form(const LaurentPolynomial& f);

/// Log form of f^[r]: log moduli scale by r, phases by r. Never materializes a_s^r.
LogPolynomial hadamard_log_form(const LaurentPolynomial& f, double r);

} // namespace atlas
