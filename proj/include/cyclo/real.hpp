#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace cyclo {

inline constexpr mpfr_prec_t kDefaultPrecisionBits = 256;
inline constexpr mpfr_prec_t kMaxPrecisionBits = 16384;
inline constexpr mpfr_prec_t kErrorTrackPrecision = 64;

// Arbitrary-precision float with a fixed precision chosen at construction.
// Rounds to nearest unless stated otherwise.
class Real {
public:
    explicit Real(mpfr_prec_t prec = kDefaultPrecisionBits);
    Real(double x, mpfr_prec_t prec);
    Real(const mpz_class& x, mpfr_prec_t prec);
    Real(const mpq_class& x, mpfr_prec_t prec);
    Real(const std::string& decimal, mpfr_prec_t prec);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_prec_t precision() const { return mpfr_get_prec(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    // Enough significant digits that parsing at the same precision restores
    // the value exactly.
    std::string to_decimal() const;
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

    // Results carry the larger operand precision.
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }

    static Real pi(mpfr_prec_t prec);
    static Real abs(const Real& a);
    static Real sqrt(const Real& a);
    static Real log(const Real& a);
    static Real pow_ui(const Real& a, unsigned long e);

private:
    mpfr_t x_;
};

// Non-negative value with a proven absolute error bound.  The bound lives at
// a small fixed precision and is always rounded upward, so it stays valid at
// any working precision (including ones whose values underflow double).
struct Magnitude {
    Real value;
    Real abs_error;
    mpfr_prec_t precision_bits;

    explicit Magnitude(mpfr_prec_t prec = kDefaultPrecisionBits);
    static Magnitude exact(Real v);
    static Magnitude exact_ui(unsigned long v, mpfr_prec_t prec);

    Magnitude mul(const Magnitude& other) const;
    Magnitude div(const Magnitude& other) const;
    Magnitude mul_ui(unsigned long u) const;

    Real lower_bound() const; // value - abs_error, rounded down
    Real upper_bound() const; // value + abs_error, rounded up
    // abs_error <= tol * value, checked in mpfr.  Exact zero passes.
    bool rel_error_below(double tol) const;
    std::string to_string() const; // "<value> +/- <error>"
};

// |sin(r*pi/denom)| with the argument reduced exactly in the integers before
// any rounding: |sin| has period denom in r and is symmetric about denom/2,
// so r folds into [0, denom/2] where the angle lies in [0, pi/2].
Magnitude sin_pi_ratio(const mpz_class& r, const mpz_class& denom, mpfr_prec_t prec);

} // namespace cyclo
