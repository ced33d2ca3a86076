#pragma once

#include "cyclo/witness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

// One stored result row: tuple identity, witness data, and derived metrics.
// Serialized as one line of line-delimited JSON; exact integers as decimal
// strings, high-precision values as decimal strings with an explicit error.
struct ScanRecord {
    int64_t timestamp = 0;
    std::vector<uint64_t> primes;
    mpz_class n;
    unsigned k = 0;
    uint64_t window = 0;
    CaseTag case_tag = CaseTag::case1;
    mpz_class a;
    bool coprime = false;
    std::optional<std::string> value;     // |Phi_n(eps^a)|, decimal
    std::optional<std::string> value_err; // absolute error bound, decimal
    std::optional<mpz_class> height;
    mpz_class bateman;
    double growth_ratio = 0.0;
    double dk_estimate = 0.0;

    bool operator==(const ScanRecord& other) const = default;
};

struct PatternScan {
    std::vector<uint64_t> p1s;
    bool admissible = true;
    uint64_t covering_prime = 0; // set when inadmissible: all residues covered mod this
};

enum class BestMetric { growth_ratio, dk_estimate };

// All ascending k-subsets of odd primes with p_k - p_1 <= window_L and p_1 in
// [p1_min, p1_max], ascending by p_1.  Requires window_L >= 2(k-1).
std::vector<PrimeTuple> find_tuples(unsigned k, uint64_t window_L, uint64_t p1_min,
                                    uint64_t p1_max);

// Every p_1 in range with p_1 + 2*j prime for each half-gap j in the pattern.
// An inadmissible pattern (covering all residues mod some prime <= k) is
// reported in the result, not an error: sporadic small solutions can exist.
PatternScan find_pattern(const std::vector<uint64_t>& pattern, uint64_t p1_min,
                         uint64_t p1_max);

std::string serialize(const ScanRecord& r);
ScanRecord parse_record(const std::string& line, size_t line_number = 0);

void record_append(const std::string& store_path, const ScanRecord& r);
std::vector<ScanRecord> record_read_all(const std::string& store_path);

// Top records with matching k by the metric, descending, ties to smaller n.
std::vector<ScanRecord> record_best(const std::string& store_path, unsigned k,
                                    BestMetric metric, size_t top);

// Timestamp comes from the CYCLOTOOL_TIMESTAMP environment variable when set
// (for reproducible stores), otherwise the wall clock.
ScanRecord make_record(const WitnessCertificate& cert);

} // namespace cyclo
