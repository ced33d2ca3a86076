#include "cyclo/intpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo {

namespace {

constexpr size_t kKaratsubaThreshold = 512; // min operand size for splitting

size_t count_nonzero(const mpz_class* a, size_t n) {
    size_t k = 0;
    for (size_t i = 0; i < n; ++i)
        if (a[i] != 0) ++k;
    return k;
}

std::vector<mpz_class> mul_school(const mpz_class* a, size_t na, const mpz_class* b, size_t nb) {
    std::vector<mpz_class> r(na + nb - 1);
    // Outer loop over the operand with fewer nonzero terms: products against
    // a binomial like z^m - 1 then cost O(na + nb), not O(na * nb).
    if (count_nonzero(a, na) > count_nonzero(b, nb)) {
        std::swap(a, b);
        std::swap(na, nb);
    }
    for (size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < nb; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

std::vector<mpz_class> mul_any(const mpz_class* a, size_t na, const mpz_class* b, size_t nb);

std::vector<mpz_class> mul_karatsuba(const mpz_class* a, size_t na, const mpz_class* b, size_t nb) {
    size_t m = std::max(na, nb) / 2;
    // a = a0 + a1 z^m, b = b0 + b1 z^m
    size_t na0 = std::min(na, m), nb0 = std::min(nb, m);
    size_t na1 = na - na0, nb1 = nb - nb0;

    std::vector<mpz_class> z0 = mul_any(a, na0, b, nb0);
    std::vector<mpz_class> z2 = mul_any(a + na0, na1, b + nb0, nb1);

    std::vector<mpz_class> as(std::max(na0, na1)), bs(std::max(nb0, nb1));
    for (size_t i = 0; i < na0; ++i) as[i] = a[i];
    for (size_t i = 0; i < na1; ++i) as[i] += a[na0 + i];
    for (size_t i = 0; i < nb0; ++i) bs[i] = b[i];
    for (size_t i = 0; i < nb1; ++i) bs[i] += b[nb0 + i];
    std::vector<mpz_class> z1 = mul_any(as.data(), as.size(), bs.data(), bs.size());
    for (size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

    std::vector<mpz_class> r(na + nb - 1);
    for (size_t i = 0; i < z0.size(); ++i) r[i] = z0[i];
    for (size_t i = 0; i < z1.size(); ++i) r[m + i] += z1[i];
    for (size_t i = 0; i < z2.size(); ++i) r[2 * m + i] += z2[i];
    return r;
}

std::vector<mpz_class> mul_any(const mpz_class* a, size_t na, const mpz_class* b, size_t nb) {
    if (na == 0 || nb == 0) return {};
    if (std::min(na, nb) < kKaratsubaThreshold ||
        std::min(count_nonzero(a, na), count_nonzero(b, nb)) <= 8)
        return mul_school(a, na, b, nb);
    return mul_karatsuba(a, na, b, nb);
}

const mpz_class kZero = 0;

} // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::one() {
    return IntPoly({mpz_class(1)});
}

IntPoly IntPoly::monomial_minus_one(uint64_t m) {
    if (m == 0) throw std::invalid_argument("monomial_minus_one: exponent must be >= 1");
    if (m > (uint64_t(1) << 30))
        throw capacity_exceeded("monomial_minus_one: exponent too large to materialize");
    std::vector<mpz_class> c(size_t(m) + 1);
    c[0] = -1;
    c[size_t(m)] = 1;
    return IntPoly(std::move(c));
}

const mpz_class& IntPoly::coeff(size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

mpz_class IntPoly::height() const {
    mpz_class h = 0;
    for (const auto& c : c_) {
        mpz_class a = ::abs(c);
        if (a > h) h = a;
    }
    return h;
}

IntPoly IntPoly::operator+(const IntPoly& other) const {
    std::vector<mpz_class> r(std::max(c_.size(), other.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < other.c_.size(); ++i) r[i] += other.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& other) const {
    std::vector<mpz_class> r(std::max(c_.size(), other.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < other.c_.size(); ++i) r[i] -= other.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& other) const {
    if (is_zero() || other.is_zero()) return IntPoly();
    return IntPoly(mul_any(c_.data(), c_.size(), other.c_.data(), other.c_.size()));
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw inexact_division("division by zero polynomial");
    if (is_zero()) return IntPoly();
    if (degree() < divisor.degree())
        throw inexact_division("divisor degree exceeds dividend degree");

    std::vector<mpz_class> rem = c_;
    const size_t db = divisor.c_.size() - 1;
    const mpz_class& lead = divisor.c_.back();
    std::vector<size_t> lower; // nonzero divisor terms below the top
    for (size_t j = 0; j < db; ++j)
        if (divisor.c_[j] != 0) lower.push_back(j);

    std::vector<mpz_class> q(rem.size() - db);
    for (size_t k = q.size(); k-- > 0;) {
        mpz_class& top = rem[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw inexact_division("leading coefficient does not divide");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        top = 0;
        for (size_t j : lower) rem[k + j] -= q[k] * divisor.c_[j];
    }
    for (size_t i = 0; i < db; ++i)
        if (rem[i] != 0) throw inexact_division("nonzero remainder");
    return IntPoly(std::move(q));
}

IntPoly IntPoly::inflate(uint64_t k) const {
    if (k == 0) throw std::invalid_argument("inflate: k must be >= 1");
    if (k == 1 || is_zero()) return *this;
    uint64_t new_deg = uint64_t(degree()) * k;
    if (new_deg > (uint64_t(1) << 30))
        throw capacity_exceeded("inflate: resulting degree too large to materialize");
    std::vector<mpz_class> r(size_t(new_deg) + 1);
    for (size_t i = 0; i < c_.size(); ++i) r[i * size_t(k)] = c_[i];
    return IntPoly(std::move(r));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

Magnitude IntPoly::eval_unit_circle(const mpz_class& a, const mpz_class& M, mpfr_prec_t prec) const {
    if (M < 1) throw std::invalid_argument("eval_unit_circle: modulus must be >= 1");
    if (prec < 64) throw std::invalid_argument("eval_unit_circle: precision must be >= 64");
    if (prec > kMaxPrecisionBits)
        throw precision_exceeded("eval_unit_circle: precision above cap");
    Magnitude out(prec);
    if (is_zero()) return out;

    mpz_class ared;
    mpz_mod(ared.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());

    // z = exp(2*pi*i*ared/M); each component is off by at most 2^(-prec+6).
    Real theta(prec), zc(prec), zs(prec);
    mpfr_const_pi(theta.get(), MPFR_RNDN);
    mpfr_mul_2ui(theta.get(), theta.get(), 1, MPFR_RNDN);
    mpfr_mul_z(theta.get(), theta.get(), ared.get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(theta.get(), theta.get(), M.get_mpz_t(), MPFR_RNDN);
    mpfr_sin_cos(zs.get(), zc.get(), theta.get(), MPFR_RNDN);

    Real re(prec), im(prec), t0(prec), t1(prec), t2(prec);
    mpfr_set_z(re.get(), c_.back().get_mpz_t(), MPFR_RNDN);

    // B bounds |h|, E bounds how far the computed h drifted from the true one.
    Real B(kErrorTrackPrecision), E(kErrorTrackPrecision);
    Real u(kErrorTrackPrecision), step(kErrorTrackPrecision), zb(kErrorTrackPrecision);
    mpz_class cabs = ::abs(c_.back());
    mpfr_set_z(B.get(), cabs.get_mpz_t(), MPFR_RNDU);
    mpfr_mul_2si(E.get(), B.get(), -long(prec), MPFR_RNDU);
    // |z| computed <= 1 + 2^(-57) for any prec >= 64
    mpfr_set_ui_2exp(zb.get(), 1, -57, MPFR_RNDU);
    mpfr_add_ui(zb.get(), zb.get(), 1, MPFR_RNDU);

    for (size_t i = c_.size() - 1; i-- > 0;) {
        mpfr_mul(t0.get(), re.get(), zc.get(), MPFR_RNDN);
        mpfr_mul(t1.get(), im.get(), zs.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), re.get(), zs.get(), MPFR_RNDN);
        mpfr_mul(im.get(), im.get(), zc.get(), MPFR_RNDN);
        mpfr_sub(t0.get(), t0.get(), t1.get(), MPFR_RNDN);
        mpfr_add(im.get(), im.get(), t2.get(), MPFR_RNDN);
        mpfr_add_z(re.get(), t0.get(), c_[i].get_mpz_t(), MPFR_RNDN);

        cabs = ::abs(c_[i]);
        mpfr_set_z(u.get(), cabs.get_mpz_t(), MPFR_RNDU);
        // E += (B + |c_i|) * 2^(-prec+8): covers the inexact z, the complex
        // multiply roundings, and the coefficient add.
        mpfr_add(step.get(), B.get(), u.get(), MPFR_RNDU);
        mpfr_mul_2si(step.get(), step.get(), -long(prec) + 8, MPFR_RNDU);
        mpfr_add(E.get(), E.get(), step.get(), MPFR_RNDU);
        mpfr_mul(B.get(), B.get(), zb.get(), MPFR_RNDU);
        mpfr_add(B.get(), B.get(), u.get(), MPFR_RNDU);
    }

    mpfr_hypot(out.value.get(), re.get(), im.get(), MPFR_RNDN);
    mpfr_set(out.abs_error.get(), E.get(), MPFR_RNDU);
    {
        Real r(kErrorTrackPrecision);
        mpfr_mul_2si(r.get(), out.value.get(), -long(prec), MPFR_RNDU);
        mpfr_add(out.abs_error.get(), out.abs_error.get(), r.get(), MPFR_RNDU);
    }
    return out;
}

} // namespace cyclo
