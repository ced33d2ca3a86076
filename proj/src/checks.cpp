#include "cyclo/checks.hpp"

#include "cyclo/bounds.hpp"
#include "cyclo/cyclo.hpp"
#include "cyclo/ntheory.hpp"

#include <map>

namespace cyclo {

namespace {

constexpr uint64_t kInflationPhiCap = 100000;

void note_failure(SuiteResult& r, const std::string& msg) {
    ++r.failed;
    if (r.failures.size() < 10) r.failures.push_back(msg);
}

} // namespace

SuiteResult check_identity(uint64_t max_n) {
    SuiteResult res;
    res.suite = "identity";
    std::map<uint64_t, IntPoly> memo;
    auto phi_d = [&](uint64_t d) -> const IntPoly& {
        auto it = memo.find(d);
        if (it == memo.end()) it = memo.emplace(d, cyclotomic(d).poly).first;
        return it->second;
    };
    for (uint64_t n = 1; n <= max_n; ++n) {
        IntPoly prod = IntPoly::one();
        for (uint64_t d : divisors(n)) prod = prod * phi_d(d);
        ++res.checked;
        if (!(prod == IntPoly::monomial_minus_one(n)))
            note_failure(res, "product over divisors of " + std::to_string(n) +
                                  " is not z^n - 1");
    }
    return res;
}

SuiteResult check_oracle_equivalence(uint64_t max_n) {
    SuiteResult res;
    res.suite = "oracle";
    for (uint64_t n = 1; n <= max_n; n += 2) {
        if (mobius(n) == 0) continue;
        ++res.checked;
        if (!(cyclotomic(n).poly == cyclotomic_alt(n)))
            note_failure(res, "construction routes disagree at n = " + std::to_string(n));
    }
    return res;
}

SuiteResult check_heights(uint64_t max_n) {
    SuiteResult res;
    res.suite = "heights";
    for (uint64_t n = 1; n < 105 && n <= max_n; ++n) {
        ++res.checked;
        if (cyclotomic(n).height != 1)
            note_failure(res, "A(" + std::to_string(n) + ") != 1");
    }
    if (max_n >= 105) {
        ++res.checked;
        if (cyclotomic(105).height != 2) note_failure(res, "A(105) != 2");
    }
    for (uint64_t n = 2; n <= max_n; ++n) {
        Factorization f = factorize(n);
        mpz_class base_height;
        bool have_base = false;
        for (const auto& [pz, e] : f.factors) {
            uint64_t p = pz.get_ui();
            if (euler_phi(n) * p > kInflationPhiCap) continue;
            if (!have_base) {
                base_height = cyclotomic(n).height;
                have_base = true;
            }
            ++res.checked;
            if (cyclotomic(n * p).height != base_height)
                note_failure(res, "A(" + std::to_string(n * p) + ") != A(" +
                                      std::to_string(n) + ")");
        }
    }
    return res;
}

SuiteResult check_bounds(uint64_t max_n) {
    SuiteResult res;
    res.suite = "bounds";
    for (uint64_t n = 3; n <= max_n; n += 2) {
        Factorization f = factorize(n);
        bool squarefree = true;
        std::vector<uint64_t> primes;
        for (const auto& [pz, e] : f.factors) {
            if (e > 1) { squarefree = false; break; }
            primes.push_back(pz.get_ui());
        }
        if (!squarefree) continue;
        ++res.checked;
        mpz_class a = coefficient_height(n);
        BoundReport rep = bound_report(primes, 0.0);
        if (a > rep.bateman)
            note_failure(res, "A(" + std::to_string(n) + ") exceeds the integer bound");
        if (mpq_class(a) > rep.refined)
            note_failure(res, "A(" + std::to_string(n) + ") exceeds the refined bound");
        if (!rep.bridging_holds)
            note_failure(res, "bridging inequality fails at n = " + std::to_string(n));
    }
    return res;
}

SuiteResult check_ntheory(uint64_t max_n) {
    SuiteResult res;
    res.suite = "ntheory";
    for (uint64_t n = 1; n <= max_n; ++n) {
        int mu_sum = 0;
        uint64_t phi_sum = 0;
        for (uint64_t d : divisors(n)) {
            mu_sum += mobius(d);
            phi_sum += euler_phi(d);
        }
        ++res.checked;
        if (mu_sum != (n == 1 ? 1 : 0))
            note_failure(res, "mobius divisor sum wrong at n = " + std::to_string(n));
        ++res.checked;
        if (phi_sum != n)
            note_failure(res, "phi divisor sum wrong at n = " + std::to_string(n));
    }
    ++res.checked;
    if (primes_in(1, 10000).size() != 1229)
        note_failure(res, "prime count below 10^4 is not 1229");
    ++res.checked;
    if (!is_prime(2305843009213693951ull) || is_prime(561))
        note_failure(res, "primality spot checks failed");
    return res;
}

} // namespace cyclo
