#include "cyclo/real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyclo {

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_zero(x_, 1);
}

Real::Real(double x, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_d(x_, x, MPFR_RNDN);
}

Real::Real(const mpz_class& x, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_z(x_, x.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& x, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_q(x_, x.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    if (mpfr_set_str(x_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("Real: unparsable decimal '" + decimal + "'");
}

Real::Real(const Real& other) {
    mpfr_init2(x_, mpfr_get_prec(other.x_));
    mpfr_set(x_, other.x_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(x_, mpfr_get_prec(other.x_));
    mpfr_swap(x_, other.x_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(x_, mpfr_get_prec(other.x_));
        mpfr_set(x_, other.x_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(x_, other.x_);
    return *this;
}

Real::~Real() {
    mpfr_clear(x_);
}

std::string Real::to_decimal() const {
    int digits = int(std::ceil(double(precision()) * 0.30103)) + 3;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {
mpfr_prec_t joint_prec(const Real& a, const Real& b) {
    return std::max(a.precision(), b.precision());
}
} // namespace

Real operator+(const Real& a, const Real& b) {
    Real r(joint_prec(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(joint_prec(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(joint_prec(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(joint_prec(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real Real::pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real Real::abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real Real::sqrt(const Real& a) {
    Real r(a.precision());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real Real::log(const Real& a) {
    Real r(a.precision());
    mpfr_log(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real Real::pow_ui(const Real& a, unsigned long e) {
    Real r(a.precision());
    mpfr_pow_ui(r.get(), a.get(), e, MPFR_RNDN);
    return r;
}

Magnitude::Magnitude(mpfr_prec_t prec)
    : value(prec), abs_error(kErrorTrackPrecision), precision_bits(prec) {}

Magnitude Magnitude::exact(Real v) {
    Magnitude m(v.precision());
    m.value = std::move(v);
    return m;
}

Magnitude Magnitude::exact_ui(unsigned long v, mpfr_prec_t prec) {
    Magnitude m(prec);
    mpfr_set_ui(m.value.get(), v, MPFR_RNDN);
    return m;
}

namespace {

// rop += value * 2^(-prec), rounded up: bound on the nearest-rounding step.
void add_rounding_term(mpfr_ptr rop, mpfr_srcptr value, mpfr_prec_t prec) {
    mpfr_t t;
    mpfr_init2(t, kErrorTrackPrecision);
    mpfr_mul_2si(t, value, -long(prec), MPFR_RNDU);
    mpfr_add(rop, rop, t, MPFR_RNDU);
    mpfr_clear(t);
}

} // namespace

Magnitude Magnitude::mul(const Magnitude& other) const {
    Magnitude c(std::max(precision_bits, other.precision_bits));
    mpfr_mul(c.value.get(), value.get(), other.value.get(), MPFR_RNDN);

    // |ab - a'b'| <= a'*eb + b'*ea + ea*eb, plus the rounding of a'b'.
    mpfr_t t, e;
    mpfr_init2(t, kErrorTrackPrecision);
    mpfr_init2(e, kErrorTrackPrecision);
    mpfr_mul(e, value.get(), other.abs_error.get(), MPFR_RNDU);
    mpfr_mul(t, other.value.get(), abs_error.get(), MPFR_RNDU);
    mpfr_add(e, e, t, MPFR_RNDU);
    mpfr_mul(t, abs_error.get(), other.abs_error.get(), MPFR_RNDU);
    mpfr_add(e, e, t, MPFR_RNDU);
    add_rounding_term(e, c.value.get(), c.precision_bits);
    mpfr_set(c.abs_error.get(), e, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(e);
    return c;
}

Magnitude Magnitude::div(const Magnitude& other) const {
    Magnitude c(std::max(precision_bits, other.precision_bits));
    mpfr_div(c.value.get(), value.get(), other.value.get(), MPFR_RNDN);

    mpfr_t denom, q, e;
    mpfr_init2(denom, kErrorTrackPrecision);
    mpfr_init2(q, kErrorTrackPrecision);
    mpfr_init2(e, kErrorTrackPrecision);
    mpfr_sub(denom, other.value.get(), other.abs_error.get(), MPFR_RNDD);
    if (mpfr_sgn(denom) <= 0) {
        // Divisor interval touches zero: no finite bound.
        mpfr_set_inf(c.abs_error.get(), 1);
    } else {
        // |a/b - a'/b'| <= (ea + (a'/b')*eb) / (b' - eb), plus rounding.
        mpfr_div(q, value.get(), other.value.get(), MPFR_RNDU);
        mpfr_mul(e, q, other.abs_error.get(), MPFR_RNDU);
        mpfr_add(e, e, abs_error.get(), MPFR_RNDU);
        mpfr_div(e, e, denom, MPFR_RNDU);
        add_rounding_term(e, c.value.get(), c.precision_bits);
        mpfr_set(c.abs_error.get(), e, MPFR_RNDU);
    }
    mpfr_clear(denom);
    mpfr_clear(q);
    mpfr_clear(e);
    return c;
}

Magnitude Magnitude::mul_ui(unsigned long u) const {
    Magnitude c(precision_bits);
    mpfr_mul_ui(c.value.get(), value.get(), u, MPFR_RNDN);
    mpfr_mul_ui(c.abs_error.get(), abs_error.get(), u, MPFR_RNDU);
    add_rounding_term(c.abs_error.get(), c.value.get(), c.precision_bits);
    return c;
}

Real Magnitude::lower_bound() const {
    Real r(value.precision());
    mpfr_sub(r.get(), value.get(), abs_error.get(), MPFR_RNDD);
    return r;
}

Real Magnitude::upper_bound() const {
    Real r(value.precision());
    mpfr_add(r.get(), value.get(), abs_error.get(), MPFR_RNDU);
    return r;
}

bool Magnitude::rel_error_below(double tol) const {
    if (mpfr_zero_p(abs_error.get())) return true;
    if (!mpfr_number_p(abs_error.get())) return false;
    if (mpfr_sgn(value.get()) <= 0) return false;
    mpfr_t rhs;
    mpfr_init2(rhs, kErrorTrackPrecision);
    mpfr_mul_d(rhs, value.get(), tol, MPFR_RNDD);
    bool ok = mpfr_cmp(abs_error.get(), rhs) <= 0;
    mpfr_clear(rhs);
    return ok;
}

std::string Magnitude::to_string() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.3Re", abs_error.get());
    std::string err(s);
    mpfr_free_str(s);
    return value.to_decimal() + " +/- " + err;
}

Magnitude sin_pi_ratio(const mpz_class& r, const mpz_class& denom, mpfr_prec_t prec) {
    if (denom <= 0) throw std::invalid_argument("sin_pi_ratio: denominator must be positive");
    // |sin(r*pi/D)| has period D in r and is symmetric about D/2.
    mpz_class r1;
    mpz_mod(r1.get_mpz_t(), r.get_mpz_t(), denom.get_mpz_t());
    if (2 * r1 > denom) r1 = denom - r1;
    Magnitude m(prec);
    if (r1 == 0) return m; // exact zero

    Real angle(prec);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    {
        Real t(r1, prec);
        mpfr_mul(angle.get(), angle.get(), t.get(), MPFR_RNDN);
        Real d(denom, prec);
        mpfr_div(angle.get(), angle.get(), d.get(), MPFR_RNDN);
    }
    mpfr_sin(m.value.get(), angle.get(), MPFR_RNDN);

    // The computed angle is within relative 2^(-prec+2) of the true one; sin
    // is 1-Lipschitz, and the final rounding adds value*2^(-prec).
    mpfr_mul_2si(m.abs_error.get(), angle.get(), -long(prec) + 2, MPFR_RNDU);
    add_rounding_term(m.abs_error.get(), m.value.get(), prec);
    return m;
}

} // namespace cyclo
