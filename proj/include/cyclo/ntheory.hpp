#ifndef CYCLO_NTHEORY_HPP
#define CYCLO_NTHEORY_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cyclo/errors.hpp"

namespace cyclo {

// Highest value primes_in / segmented scans will sieve up to.
inline constexpr uint64_t kSieveCapacity = uint64_t(1) << 32;

// Prime factorization with strictly increasing primes and exponents >= 1.
// n == 1 has an empty factor list.
struct Factorization {
    mpz_class n;
    std::vector<std::pair<mpz_class, unsigned>> factors;

    bool operator==(const Factorization&) const = default;
};

Factorization factorize(const mpz_class& n);
Factorization factorize(uint64_t n);

// 0 if n is not squarefree, else (-1)^(number of prime factors).
int mobius(const mpz_class& n);
int mobius(uint64_t n);

mpz_class euler_phi(const mpz_class& n);
uint64_t euler_phi(uint64_t n);

// Product of the distinct primes dividing n; radical(1) == 1.
mpz_class radical(const mpz_class& n);
uint64_t radical(uint64_t n);

// Deterministic for all 64-bit inputs (fixed Miller-Rabin witness set).
bool is_prime(uint64_t n);

// All primes in [lo, hi], ascending. Throws capacity_exceeded above
// kSieveCapacity. Memory stays proportional to one segment.
std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi);

// Segment-level access to the same sieve: fn(seg_lo, seg_hi, primes) is
// called once per segment in ascending order. Segments are independent
// work items; a caller may fan them out as long as results are merged
// back in order.
void for_each_prime_segment(uint64_t lo, uint64_t hi,
                            const std::function<void(uint64_t, uint64_t, const std::vector<uint64_t>&)>& fn);

// All divisors of n, ascending.
std::vector<uint64_t> divisors(uint64_t n);

} // namespace cyclo

#endif
