#include "cyclo/witness.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cyclo {

namespace {

constexpr unsigned kMaxTupleSize = 24;

mpz_class tuple_phi(const PrimeTuple& t) {
    mpz_class phi = 1;
    for (uint64_t p : t.primes) phi *= mpz_class(p - 1);
    return phi;
}

} // namespace

PrimeTuple classify(const std::vector<uint64_t>& primes) {
    if (primes.size() < 2) throw bad_tuple("tuple needs at least 2 primes");
    if (primes.size() > kMaxTupleSize)
        throw capacity_exceeded("tuple size beyond supported bound");
    uint64_t prev = 0;
    for (uint64_t p : primes) {
        if (p == 2) throw bad_tuple("tuple must contain odd primes only");
        if (!is_prime(p)) throw bad_tuple(std::to_string(p) + " is not prime");
        if (p <= prev) throw bad_tuple("primes must be strictly ascending");
        prev = p;
    }
    PrimeTuple t;
    t.primes = primes;
    t.n = 1;
    for (uint64_t p : primes) t.n *= mpz_class(p);
    t.M = t.n / mpz_class(primes.back());
    t.half_gaps.reserve(primes.size());
    for (uint64_t p : primes) t.half_gaps.push_back((p - primes.front()) / 2);
    t.case_tag = (t.half_gaps[1] % 2 == 1) ? CaseTag::case1 : CaseTag::case2;
    t.window = primes.back() - primes.front();
    return t;
}

mpz_class f_value(unsigned l, const PrimeTuple& tuple) {
    unsigned k1 = tuple.k() / 2;
    if (l < 1 || l > k1)
        throw std::invalid_argument("f_value: l must be in [1, floor(k/2)]");
    unsigned long e = 2ul * l - 1;
    uint64_t q = tuple.case_tag == CaseTag::case1 ? tuple.primes[1] : tuple.primes[1] - 2;
    mpz_class x, y;
    mpz_ui_pow_ui(x.get_mpz_t(), tuple.primes[0], e);
    mpz_ui_pow_ui(y.get_mpz_t(), q, e);
    mpz_class s = x + y;
    // p_1 + q is 0 mod 4 in both cases and divides p_1^e + q^e (e odd).
    if (!mpz_divisible_ui_p(s.get_mpz_t(), 4))
        throw std::logic_error("f_value: sum not divisible by 4; case classification broken");
    return s / 4;
}

WitnessPoint witness_point(const PrimeTuple& tuple) {
    WitnessPoint w;
    w.M = tuple.M;
    w.a = 0;
    for (unsigned l = 1; l <= tuple.k() / 2; ++l) w.a += f_value(l, tuple);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), w.a.get_mpz_t(), w.M.get_mpz_t());
    w.coprime = (g == 1);
    return w;
}

std::vector<SineFactor> enumerate_factors(const PrimeTuple& tuple, const WitnessPoint& point,
                                          mpfr_prec_t prec) {
    unsigned k = tuple.k();
    std::vector<SineFactor> out;
    out.reserve((size_t(1) << k) - 2);
    for (uint64_t mask = 1; mask < (uint64_t(1) << (k - 1)); ++mask) {
        std::vector<unsigned> subset;
        mpz_class denomprod = 1;
        for (unsigned s = 0; s + 1 < k; ++s)
            if (mask & (uint64_t(1) << s)) {
                subset.push_back(s + 1);
                denomprod *= mpz_class(tuple.primes[s]);
            }
        bool odd = std::popcount(mask) % 2 == 1;
        mpz_class two_d = 2 * denomprod;
        for (uint64_t mult : {uint64_t(1), tuple.pk()}) {
            SineFactor f;
            f.subset = subset;
            f.multiplier = mult;
            f.exponent = ((mult == 1) == odd) ? +1 : -1;
            f.denomprod = denomprod;
            mpz_class am = point.a * mpz_class(mult);
            mpz_mod(f.residue.get_mpz_t(), am.get_mpz_t(), two_d.get_mpz_t());
            f.magnitude = sin_pi_ratio(f.residue, denomprod, prec);
            out.push_back(std::move(f));
        }
    }
    return out;
}

Magnitude eval_product(const PrimeTuple& tuple, const WitnessPoint& point, mpfr_prec_t prec) {
    if (!point.coprime)
        throw degenerate_point("witness point has gcd(a, M) > 1; use direct evaluation");
    if (prec < 64) throw std::invalid_argument("eval_product: precision must be >= 64");
    for (mpfr_prec_t p = prec; p <= kMaxPrecisionBits; p *= 2) {
        std::vector<SineFactor> factors = enumerate_factors(tuple, point, p);
        Magnitude acc = Magnitude::exact_ui(tuple.pk(), p);
        for (const SineFactor& f : factors) {
            if (f.magnitude.value.is_zero())
                throw std::logic_error("zero sine factor at a point flagged coprime");
            acc = f.exponent > 0 ? acc.mul(f.magnitude) : acc.div(f.magnitude);
        }
        if (acc.rel_error_below(1e-10)) return acc;
    }
    throw precision_exceeded("eval_product: relative error above 1e-10 at the precision cap");
}

Magnitude direct_eval(const PrimeTuple& tuple, const WitnessPoint& point, mpfr_prec_t prec,
                      uint64_t degree_cap) {
    if (!tuple.n.fits_ulong_p())
        throw capacity_exceeded("direct_eval: n too large to materialize");
    CyclotomicRecord rec = cyclotomic(tuple.n.get_ui(), degree_cap);
    return rec.poly.eval_unit_circle(point.a, point.M, prec);
}

WitnessCertificate certificate(const PrimeTuple& tuple, const CertificateOptions& opt) {
    WitnessCertificate c;
    c.tuple = tuple;
    c.point = witness_point(tuple);
    c.degenerate = !c.point.coprime;
    c.a_lower = Real(opt.precision);

    if (!c.degenerate) c.product_value = eval_product(tuple, c.point, opt.precision);

    bool materializable = tuple.n.fits_ulong_p() && tuple_phi(tuple) <= opt.degree_cap;
    if (c.degenerate || (opt.with_direct && materializable)) {
        if (!materializable)
            throw capacity_exceeded("certificate: degenerate tuple needs direct evaluation "
                                    "but the polynomial exceeds the degree cap");
        c.direct_value = direct_eval(tuple, c.point, opt.precision, opt.degree_cap);
    }

    if (c.product_value && c.direct_value) {
        // The two pipelines compute the same number; disagreement beyond the
        // tracked bounds means a broken implementation, not bad input.
        Real diff(kErrorTrackPrecision), combined(kErrorTrackPrecision);
        mpfr_sub(diff.get(), c.product_value->value.get(), c.direct_value->value.get(),
                 MPFR_RNDU);
        mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
        mpfr_add(combined.get(), c.product_value->abs_error.get(),
                 c.direct_value->abs_error.get(), MPFR_RNDU);
        if (mpfr_cmp(diff.get(), combined.get()) > 0)
            throw std::logic_error("sine product and direct evaluation disagree "
                                   "beyond combined error bounds");
    }

    const Magnitude& value = c.product_value ? *c.product_value : *c.direct_value;
    Real lb = value.lower_bound();
    mpfr_div_z(c.a_lower.get(), lb.get(), tuple.n.get_mpz_t(), MPFR_RNDD);

    Real pw(opt.precision);
    mpfr_ui_pow_ui(pw.get(), tuple.p1(), 1ul << (tuple.k() - 1), MPFR_RNDN);
    c.growth_ratio = (value.value / pw).to_double();

    Interval nek = rational_power(tuple.n, ek_exponent(tuple.k()), 128);
    Real mid = (nek.lo + nek.hi) / Real(2.0, 128);
    c.dk_estimate = (c.a_lower / mid).to_double();

    if (opt.with_height && materializable) {
        c.height = coefficient_height(tuple.n.get_ui(), opt.degree_cap);
        mpz_class na = tuple.n * *c.height;
        c.chain_holds = mpfr_cmp_z(lb.get(), na.get_mpz_t()) <= 0;
    }
    return c;
}

WitnessCertificate certificate(const PrimeTuple& tuple, mpfr_prec_t precision, bool with_height) {
    CertificateOptions opt;
    opt.precision = precision;
    opt.with_height = with_height;
    return certificate(tuple, opt);
}

namespace {

bool factor_selector(SelectorKind k) {
    return k == SelectorKind::odd_factor || k == SelectorKind::even_factor ||
           k == SelectorKind::pk_odd_factor || k == SelectorKind::pk_even_factor;
}

bool numerator_selector(SelectorKind k) {
    return k == SelectorKind::odd_factor || k == SelectorKind::pk_even_factor;
}

void validate_selector(const Selector& sel, unsigned k) {
    if (!factor_selector(sel.kind)) {
        if (!sel.subset.empty())
            throw std::invalid_argument("selector: ratio selectors take no subset");
        return;
    }
    if (sel.subset.empty())
        throw std::invalid_argument("selector: factor selectors need a nonempty subset");
    unsigned prev = 0;
    for (unsigned s : sel.subset) {
        if (s < 1 || s > k - 1)
            throw std::invalid_argument("selector: subset indices must lie in [1, k-1]");
        if (s <= prev) throw std::invalid_argument("selector: subset must be strictly ascending");
        prev = s;
    }
    bool odd = sel.subset.size() % 2 == 1;
    bool wants_odd =
        sel.kind == SelectorKind::odd_factor || sel.kind == SelectorKind::pk_odd_factor;
    if (odd != wants_odd)
        throw std::invalid_argument("selector: subset parity does not match the selector kind");
}

} // namespace

AsymptSeries asymptotic_series(const std::vector<uint64_t>& pattern, uint64_t p1_min,
                               size_t count, const Selector& sel, mpfr_prec_t prec) {
    if (pattern.empty())
        throw std::invalid_argument("asymptotic_series: pattern needs at least j_2");
    uint64_t prev = 0;
    for (uint64_t j : pattern) {
        if (j == 0 || j <= prev)
            throw std::invalid_argument("asymptotic_series: pattern must be strictly "
                                        "increasing positive half-gaps");
        prev = j;
    }
    unsigned k = unsigned(pattern.size()) + 1;
    validate_selector(sel, k);

    AsymptSeries out;
    out.selector = sel;
    if (count == 0) return out;

    uint64_t start = std::max<uint64_t>(p1_min, 3);
    constexpr uint64_t kChunk = uint64_t(1) << 20;
    for (uint64_t lo = start; lo < kSieveCapacity && out.rows.size() < count; ) {
        uint64_t hi = std::min(lo + kChunk - 1, kSieveCapacity - 1);
        for (uint64_t p1 : primes_in(lo, hi)) {
            if (p1 == 2) continue;
            bool all_prime = true;
            std::vector<uint64_t> ps{p1};
            for (uint64_t j : pattern) {
                uint64_t q = p1 + 2 * j;
                if (!is_prime(q)) { all_prime = false; break; }
                ps.push_back(q);
            }
            if (!all_prime) continue;

            PrimeTuple t = classify(ps);
            WitnessPoint w = witness_point(t);
            if (!w.coprime) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), w.a.get_mpz_t(), w.M.get_mpz_t());
                out.skips.push_back({p1, "gcd(a, M) = " + g.get_str()});
                continue;
            }

            AsymptRow row;
            row.p1 = p1;
            row.primes = ps;
            row.observable = Real(prec);
            if (factor_selector(sel.kind)) {
                bool use_pk = sel.kind == SelectorKind::pk_odd_factor ||
                              sel.kind == SelectorKind::pk_even_factor;
                uint64_t mult = use_pk ? t.pk() : 1;
                mpz_class denomprod = 1;
                for (unsigned s : sel.subset) denomprod *= mpz_class(t.primes[s - 1]);
                mpz_class am = w.a * mpz_class(mult);
                mpz_class residue, two_d = 2 * denomprod;
                mpz_mod(residue.get_mpz_t(), am.get_mpz_t(), two_d.get_mpz_t());
                row.raw = sin_pi_ratio(residue, denomprod, prec);
                if (numerator_selector(sel.kind)) {
                    mpfr_ui_sub(row.observable.get(), 1, row.raw.value.get(), MPFR_RNDN);
                } else {
                    mpfr_mul_ui(row.observable.get(), row.raw.value.get(), p1, MPFR_RNDN);
                }
            } else {
                row.raw = eval_product(t, w, prec);
                if (sel.kind == SelectorKind::growth_ratio) {
                    Real pw(prec);
                    mpfr_ui_pow_ui(pw.get(), p1, 1ul << (k - 1), MPFR_RNDN);
                    row.observable = row.raw.value / pw;
                } else {
                    Real a_lower(prec);
                    Real lb = row.raw.lower_bound();
                    mpfr_div_z(a_lower.get(), lb.get(), t.n.get_mpz_t(), MPFR_RNDD);
                    Interval nek = rational_power(t.n, ek_exponent(k), 128);
                    Real mid = (nek.lo + nek.hi) / Real(2.0, 128);
                    row.observable = a_lower / mid;
                }
            }
            out.rows.push_back(std::move(row));
            if (out.rows.size() == count) break;
        }
        if (hi == kSieveCapacity - 1) break;
        lo = hi + 1;
    }
    if (out.rows.size() < count)
        throw capacity_exceeded("asymptotic_series: sieve capacity exhausted after " +
                                std::to_string(out.rows.size()) + " of " +
                                std::to_string(count) + " rows");
    return out;
}

} // namespace cyclo
