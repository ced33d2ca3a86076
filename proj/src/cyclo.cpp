#include "cyclo/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cyclo {

namespace {

struct Shape {
    uint64_t rad = 1;
    uint64_t phi = 1;
    std::vector<uint64_t> primes;
};

Shape shape_of(uint64_t n) {
    Shape s;
    Factorization f = factorize(n);
    for (const auto& [pz, e] : f.factors) {
        uint64_t p = pz.get_ui();
        s.primes.push_back(p);
        s.rad *= p;
        s.phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) s.phi *= p;
    }
    return s;
}

void check_cap(uint64_t n, uint64_t phi, uint64_t degree_cap) {
    if (phi > degree_cap)
        throw capacity_exceeded("cyclotomic: phi(" + std::to_string(n) + ") = " +
                                std::to_string(phi) + " exceeds degree cap " +
                                std::to_string(degree_cap));
}

// Phi_r for squarefree r given its prime list.
IntPoly squarefree_cyclotomic(uint64_t r, const std::vector<uint64_t>& primes) {
    std::vector<uint64_t> num_exp, den_exp; // exponents n/d by mobius sign of d
    size_t k = primes.size();
    for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
        uint64_t d = 1;
        for (size_t i = 0; i < k; ++i)
            if (mask & (uint64_t(1) << i)) d *= primes[i];
        (__builtin_popcountll(mask) % 2 == 0 ? num_exp : den_exp).push_back(r / d);
    }
    std::sort(num_exp.rbegin(), num_exp.rend());
    std::sort(den_exp.rbegin(), den_exp.rend());

    IntPoly acc = IntPoly::monomial_minus_one(num_exp[0]);
    for (size_t i = 1; i < num_exp.size(); ++i)
        acc = acc * IntPoly::monomial_minus_one(num_exp[i]);
    for (uint64_t e : den_exp)
        acc = acc.exact_div(IntPoly::monomial_minus_one(e));
    return acc;
}

std::map<uint64_t, mpz_class> g_height_memo; // keyed on rad(n)
std::mutex g_height_mtx;

} // namespace

CyclotomicRecord cyclotomic(uint64_t n, uint64_t degree_cap) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n must be >= 1");
    Shape s = shape_of(n);
    check_cap(n, s.phi, degree_cap);

    CyclotomicRecord rec;
    rec.n = n;
    rec.k = unsigned(s.primes.size());
    rec.poly = squarefree_cyclotomic(s.rad, s.primes).inflate(n / s.rad);
    rec.height = rec.poly.height();
    return rec;
}

IntPoly cyclotomic_alt(uint64_t n, uint64_t degree_cap) {
    if (n == 0) throw std::invalid_argument("cyclotomic_alt: n must be >= 1");
    Shape s = shape_of(n);
    check_cap(n, s.phi, degree_cap);

    IntPoly f({mpz_class(-1), mpz_class(1)}); // z - 1
    for (uint64_t p : s.primes)
        f = f.inflate(p).exact_div(f);
    return f.inflate(n / s.rad);
}

mpz_class coefficient_height(uint64_t n, uint64_t degree_cap) {
    if (n == 0) throw std::invalid_argument("coefficient_height: n must be >= 1");
    Shape s = shape_of(n);
    // Only Phi_rad(n) is ever materialized here, so cap on its degree.
    uint64_t phi_rad = 1;
    for (uint64_t p : s.primes) phi_rad *= p - 1;
    check_cap(s.rad, phi_rad, degree_cap);
    {
        std::lock_guard<std::mutex> lock(g_height_mtx);
        auto it = g_height_memo.find(s.rad);
        if (it != g_height_memo.end()) return it->second;
    }
    mpz_class h = squarefree_cyclotomic(s.rad, s.primes).height();
    std::lock_guard<std::mutex> lock(g_height_mtx);
    g_height_memo.emplace(s.rad, h);
    return h;
}

} // namespace cyclo
