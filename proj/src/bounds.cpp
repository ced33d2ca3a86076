#include "cyclo/bounds.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"

#include <stdexcept>

namespace cyclo {

namespace {

// The doubly exponential exponents below overflow memory quickly; desk-scale
// tuples never get near this.
constexpr unsigned kMaxTupleSize = 24;

void validate_tuple(const std::vector<uint64_t>& primes, unsigned min_size) {
    if (primes.size() < min_size)
        throw bad_tuple("tuple needs at least " + std::to_string(min_size) + " primes");
    if (primes.size() > kMaxTupleSize)
        throw capacity_exceeded("tuple size beyond supported bound");
    uint64_t prev = 0;
    for (uint64_t p : primes) {
        if (p == 2) throw bad_tuple("tuple must contain odd primes only");
        if (!is_prime(p)) throw bad_tuple(std::to_string(p) + " is not prime");
        if (p <= prev) throw bad_tuple("primes must be strictly ascending");
        prev = p;
    }
}

} // namespace

mpq_class ck_constant(unsigned k) {
    if (k == 0) throw std::invalid_argument("ck_constant: k must be >= 1");
    if (k > kMaxTupleSize) throw capacity_exceeded("ck_constant: k beyond supported bound");
    if (k <= 2) return 1;
    if (k <= 4) return mpq_class(3, 4);
    unsigned long e = 1ul << (k - 5);
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), 3, e);
    mpz_ui_pow_ui(den.get_mpz_t(), 8, e);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class ek_exponent(unsigned k) {
    if (k == 0) throw std::invalid_argument("ek_exponent: k must be >= 1");
    if (k > kMaxTupleSize) throw capacity_exceeded("ek_exponent: k beyond supported bound");
    mpz_class num = (mpz_class(1) << (k - 1)) - k;
    mpq_class q(num, mpz_class(k));
    q.canonicalize();
    return q;
}

mpz_class bateman_bound(const std::vector<uint64_t>& primes) {
    validate_tuple(primes, 1);
    unsigned k = unsigned(primes.size());
    mpz_class b = 1;
    for (unsigned l = 1; l + 2 <= k; ++l) {
        unsigned long e = (1ul << (k - 1 - l)) - 1;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), primes[l - 1], e);
        b *= t;
    }
    return b;
}

Interval rational_power(const mpz_class& base, const mpq_class& e, mpfr_prec_t prec) {
    if (base < 1) throw std::invalid_argument("rational_power: base must be >= 1");
    if (e < 0) throw std::invalid_argument("rational_power: exponent must be >= 0");
    Interval iv;
    iv.lo = Real(prec);
    iv.hi = Real(prec);
    // log, scale, exp are all monotone here, so one directed chain per end.
    Real t(prec), q(prec);
    mpfr_set_z(t.get(), base.get_mpz_t(), MPFR_RNDD);
    mpfr_log(t.get(), t.get(), MPFR_RNDD);
    mpfr_set_q(q.get(), e.get_mpq_t(), MPFR_RNDD);
    mpfr_mul(t.get(), t.get(), q.get(), MPFR_RNDD);
    mpfr_exp(iv.lo.get(), t.get(), MPFR_RNDD);

    mpfr_set_z(t.get(), base.get_mpz_t(), MPFR_RNDU);
    mpfr_log(t.get(), t.get(), MPFR_RNDU);
    mpfr_set_q(q.get(), e.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(t.get(), t.get(), q.get(), MPFR_RNDU);
    mpfr_exp(iv.hi.get(), t.get(), MPFR_RNDU);
    return iv;
}

bool bridging_inequality_holds(const std::vector<uint64_t>& primes) {
    validate_tuple(primes, 1);
    unsigned k = unsigned(primes.size());
    mpz_class n = 1;
    for (uint64_t p : primes) n *= mpz_class(p);
    // bateman <= n^{(2^(k-1)-k)/k}  <=>  bateman^k <= n^(2^(k-1)-k)
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), bateman_bound(primes).get_mpz_t(), k);
    unsigned long e = (1ul << (k - 1)) - k;
    mpz_pow_ui(rhs.get_mpz_t(), n.get_mpz_t(), e);
    return lhs <= rhs;
}

BoundReport bound_report(const std::vector<uint64_t>& primes, double d_k) {
    validate_tuple(primes, 1);
    if (!(d_k >= 0))
        throw std::invalid_argument("bound_report: d_k must be >= 0");
    BoundReport r;
    r.k = unsigned(primes.size());
    r.primes = primes;
    r.n = 1;
    for (uint64_t p : primes) r.n *= mpz_class(p);
    r.bateman = bateman_bound(primes);
    r.c_k = ck_constant(r.k);
    r.refined = r.c_k * mpq_class(r.bateman);
    r.e_k = ek_exponent(r.k);

    Interval pw = rational_power(r.n, r.e_k);
    mpfr_mul_q(r.power_bound.lo.get(), pw.lo.get(), r.c_k.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.power_bound.hi.get(), pw.hi.get(), r.c_k.get_mpq_t(), MPFR_RNDU);
    mpfr_mul_d(r.lower_target.lo.get(), pw.lo.get(), d_k, MPFR_RNDD);
    mpfr_mul_d(r.lower_target.hi.get(), pw.hi.get(), d_k, MPFR_RNDU);

    r.bridging_holds = bridging_inequality_holds(primes);
    return r;
}

} // namespace cyclo
