#pragma once

#include "cyclo/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace cyclo {

// Enclosure of a nonnegative quantity computed with directed rounding.
struct Interval {
    Real lo;
    Real hi;
    Interval() : lo(128), hi(128) {}
};

struct BoundReport {
    mpz_class n;
    unsigned k = 0;
    std::vector<uint64_t> primes;
    mpz_class bateman;      // prod p_l^(2^(k-1-l)-1), l = 1..k-2
    mpq_class c_k;
    mpq_class refined;      // c_k * bateman
    mpq_class e_k;          // 2^(k-1)/k - 1
    Interval power_bound;   // c_k * n^{e_k}
    Interval lower_target;  // d_k * n^{e_k}
    bool bridging_holds = false; // bateman <= n^{e_k}, decided exactly
};

// c_1 = c_2 = 1, c_3 = c_4 = 3/4, c_k = (3/8)^(2^(k-5)) for k >= 5.
mpq_class ck_constant(unsigned k);

// (2^(k-1) - k) / k, the exponent in n^{2^(k-1)/k - 1}.
mpq_class ek_exponent(unsigned k);

// prod_{l=1}^{k-2} p_l^(2^(k-1-l) - 1); 1 for k <= 2.
// Requires ascending distinct odd primes.
mpz_class bateman_bound(const std::vector<uint64_t>& primes);

// Enclosure of base^e for base >= 1, e >= 0, at the given precision.
Interval rational_power(const mpz_class& base, const mpq_class& e, mpfr_prec_t prec = 128);

// bateman_bound(primes) <= n^{e_k}, decided exactly in the integers by
// comparing bateman^k with n^(2^(k-1)-k), so equality cases are handled.
bool bridging_inequality_holds(const std::vector<uint64_t>& primes);

BoundReport bound_report(const std::vector<uint64_t>& primes, double d_k = 0.0);

} // namespace cyclo
