#pragma once

#include "cyclo/errors.hpp"
#include "cyclo/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace cyclo {

// Dense univariate polynomial over Z, coefficients ascending by degree.
// Always normalized: empty vector is the zero polynomial, otherwise the
// top coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);

    static IntPoly one();
    static IntPoly monomial_minus_one(uint64_t m); // z^m - 1

    bool is_zero() const { return c_.empty(); }
    long degree() const { return long(c_.size()) - 1; } // -1 for zero
    size_t size() const { return c_.size(); }
    const mpz_class& coeff(size_t i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class height() const; // max |coefficient|, 0 for the zero polynomial

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    IntPoly operator+(const IntPoly& other) const;
    IntPoly operator-(const IntPoly& other) const;
    IntPoly operator*(const IntPoly& other) const;

    // Quotient when the division is exact; throws inexact_division otherwise.
    IntPoly exact_div(const IntPoly& divisor) const;

    // p(z^k)
    IntPoly inflate(uint64_t k) const;

    mpz_class eval(const mpz_class& x) const;

    // |p(exp(2*pi*i*a/M))| by complex Horner with a running error bound.
    // Requires M >= 1 and prec >= 64.
    Magnitude eval_unit_circle(const mpz_class& a, const mpz_class& M, mpfr_prec_t prec) const;

private:
    std::vector<mpz_class> c_;
    void normalize();
};

} // namespace cyclo
