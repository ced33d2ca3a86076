#pragma once

#include "cyclo/intpoly.hpp"
#include "cyclo/ntheory.hpp"

#include <cstdint>

namespace cyclo {

inline constexpr uint64_t kDefaultDegreeCap = 1'000'000;

struct CyclotomicRecord {
    uint64_t n = 0;
    IntPoly poly;
    mpz_class height;   // measured from the materialized coefficients
    unsigned k = 0;     // number of distinct prime factors of n
};

// nth cyclotomic polynomial: product of (z^(n/d) - 1) over squarefree d | n
// with mobius +1, then exact division by the mobius -1 factors, then
// inflation by n/rad(n).  Throws capacity_exceeded when phi(n) > degree_cap.
CyclotomicRecord cyclotomic(uint64_t n, uint64_t degree_cap = kDefaultDegreeCap);

// Same polynomial by a different route, for cross-checking: walk the distinct
// primes p of n ascending with Phi_{mp}(z) = Phi_m(z^p) / Phi_m(z), where the
// divisor is dense, then inflate.  Slower by design; shares no code path with
// cyclotomic() beyond the polynomial arithmetic.
IntPoly cyclotomic_alt(uint64_t n, uint64_t degree_cap = kDefaultDegreeCap);

// Height A(n) = max |coefficient| of the nth cyclotomic polynomial.
// Memoized on rad(n), since inflation preserves coefficients.
mpz_class coefficient_height(uint64_t n, uint64_t degree_cap = kDefaultDegreeCap);

} // namespace cyclo
