#pragma once

#include "cyclo/bounds.hpp"
#include "cyclo/cyclo.hpp"
#include "cyclo/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclo {

enum class CaseTag { case1, case2 };

// Ascending distinct odd primes p_1 < ... < p_k, k >= 2, with their half-gap
// signature.  case1 iff j_2 is odd iff 4 | p_1+p_2.
struct PrimeTuple {
    std::vector<uint64_t> primes;
    mpz_class n;                     // product of the primes
    mpz_class M;                     // n / p_k
    std::vector<uint64_t> half_gaps; // j_l with p_l = p_1 + 2*j_l; j_1 = 0
    CaseTag case_tag = CaseTag::case1;
    uint64_t window = 0;             // p_k - p_1

    unsigned k() const { return unsigned(primes.size()); }
    uint64_t p1() const { return primes.front(); }
    uint64_t pk() const { return primes.back(); }
};

struct WitnessPoint {
    mpz_class a;
    mpz_class M;
    bool coprime = false; // gcd(a, M) = 1
};

// One factor of the sine product: |sin(a*multiplier*pi / denomprod)| for a
// nonempty subset U of {1..k-1}, with multiplier 1 or p_k.
struct SineFactor {
    std::vector<unsigned> subset; // 1-based indices into p_1..p_{k-1}
    uint64_t multiplier = 1;      // 1 or p_k
    int exponent = 1;             // +1 numerator, -1 denominator
    mpz_class denomprod;          // prod_{s in U} p_s
    mpz_class residue;            // a*multiplier mod 2*denomprod
    Magnitude magnitude;
};

struct WitnessCertificate {
    PrimeTuple tuple;
    WitnessPoint point;
    bool degenerate = false;               // gcd(a, M) > 1
    std::optional<Magnitude> product_value; // sine product; absent when degenerate
    std::optional<Magnitude> direct_value;  // Horner cross-check
    std::optional<mpz_class> height;        // A(n), when requested and in cap
    std::optional<bool> chain_holds;        // n*A(n) >= value - error
    Real a_lower;                           // (value - error)/n, lower bound for A(n)
    double growth_ratio = 0.0;              // value / p_1^(2^(k-1))
    double dk_estimate = 0.0;               // a_lower / n^{e_k}
};

struct CertificateOptions {
    mpfr_prec_t precision = kDefaultPrecisionBits;
    bool with_height = false;
    bool with_direct = true;
    uint64_t degree_cap = kDefaultDegreeCap;
};

// Rejects tuples containing 2, composites, or out-of-order primes.
PrimeTuple classify(const std::vector<uint64_t>& primes);

// Case 1: (p_1^(2l-1) + p_2^(2l-1)) / 4;  Case 2 replaces p_2 by p_2 - 2.
// The quotient is exact in both cases; 1 <= l <= floor(k/2).
mpz_class f_value(unsigned l, const PrimeTuple& tuple);

// a = sum of f_value(l) over l = 1..floor(k/2).  Non-coprime a is a flagged
// state, not an error: the construction does not guarantee gcd(a, M) = 1.
WitnessPoint witness_point(const PrimeTuple& tuple);

// All 2^k - 2 factors: for each nonempty U, multiplier 1 is a numerator
// factor iff |U| is odd, multiplier p_k iff |U| is even.  Residues are
// reduced exactly in the integers before any floating-point work.
std::vector<SineFactor> enumerate_factors(const PrimeTuple& tuple, const WitnessPoint& point,
                                          mpfr_prec_t prec = kDefaultPrecisionBits);

// p_k times the signed sine product = |Phi_n(e^(2*pi*i*a/M))|.  Requires a
// coprime point.  Doubles the precision and retries until the relative error
// bound is <= 1e-10 (cap kMaxPrecisionBits).
Magnitude eval_product(const PrimeTuple& tuple, const WitnessPoint& point,
                       mpfr_prec_t prec = kDefaultPrecisionBits);

// |Phi_n(e^(2*pi*i*a/M))| by materializing Phi_n and running complex Horner.
// Defined for non-coprime points too.
Magnitude direct_eval(const PrimeTuple& tuple, const WitnessPoint& point,
                      mpfr_prec_t prec = kDefaultPrecisionBits,
                      uint64_t degree_cap = kDefaultDegreeCap);

WitnessCertificate certificate(const PrimeTuple& tuple, const CertificateOptions& opt);
WitnessCertificate certificate(const PrimeTuple& tuple,
                               mpfr_prec_t precision = kDefaultPrecisionBits,
                               bool with_height = false);

enum class SelectorKind {
    odd_factor,     // multiplier 1,  |U| odd  (numerator)
    even_factor,    // multiplier 1,  |U| even (denominator)
    pk_odd_factor,  // multiplier p_k, |U| odd  (denominator)
    pk_even_factor, // multiplier p_k, |U| even (numerator)
    growth_ratio,
    dk_estimate,
};

struct Selector {
    SelectorKind kind = SelectorKind::growth_ratio;
    std::vector<unsigned> subset; // required for factor kinds, empty otherwise
};

struct AsymptRow {
    uint64_t p1 = 0;
    std::vector<uint64_t> primes;
    Magnitude raw;   // the factor magnitude or the full ratio value
    Real observable; // 1-raw (numerator), p1*raw (denominator), else raw
};

struct AsymptSkip {
    uint64_t p1 = 0;
    std::string reason;
};

struct AsymptSeries {
    Selector selector;
    std::vector<AsymptRow> rows;   // ascending p1
    std::vector<AsymptSkip> skips; // non-coprime tuples, with reasons
};

// Scans p_1 upward for primes matching the half-gap pattern (j_2..j_k) and
// emits `count` rows of the selected observable.  Throws capacity_exceeded
// if the sieve range is exhausted first.
AsymptSeries asymptotic_series(const std::vector<uint64_t>& pattern, uint64_t p1_min,
                               size_t count, const Selector& sel,
                               mpfr_prec_t prec = kDefaultPrecisionBits);

} // namespace cyclo
