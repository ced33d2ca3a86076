#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclo {

struct SuiteResult {
    std::string suite;
    uint64_t checked = 0;
    uint64_t failed = 0;
    std::vector<std::string> failures; // first few, for diagnostics
    bool pass() const { return failed == 0; }
};

// prod_{d|n} Phi_d(z) = z^n - 1 for every n <= max_n, exact.
SuiteResult check_identity(uint64_t max_n);

// The two construction routes agree coefficient-for-coefficient on every
// squarefree odd n <= max_n.
SuiteResult check_oracle_equivalence(uint64_t max_n);

// A(n) = 1 below 105, A(105) = 2, and A(np) = A(n) for p | n, n <= max_n
// (pairs capped at phi(np) <= 1e5), heights measured from materialized
// coefficients on both sides.
SuiteResult check_heights(uint64_t max_n);

// A(n) <= bateman, A(n) <= c_k * bateman (exact rational), and the bridging
// inequality, for every odd squarefree n <= max_n.
SuiteResult check_bounds(uint64_t max_n);

// Divisor-sum identities for mobius and phi up to max_n, plus fixed prime
// counting values.
SuiteResult check_ntheory(uint64_t max_n);

} // namespace cyclo
