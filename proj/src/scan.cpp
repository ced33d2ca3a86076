#include "cyclo/scan.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>

namespace cyclo {

namespace {

using nlohmann::json;

void validate_pattern(const std::vector<uint64_t>& pattern) {
    if (pattern.empty())
        throw std::invalid_argument("pattern needs at least j_2");
    uint64_t prev = 0;
    for (uint64_t j : pattern) {
        if (j == 0 || j <= prev)
            throw std::invalid_argument("pattern must be strictly increasing positive half-gaps");
        prev = j;
    }
}

// Emit all ascending (k-1)-subsets of cands combined with p1.
void emit_combinations(uint64_t p1, const std::vector<uint64_t>& cands, unsigned choose,
                       std::vector<uint64_t>& picked, size_t from,
                       std::vector<PrimeTuple>& out) {
    if (picked.size() == choose) {
        std::vector<uint64_t> tuple{p1};
        tuple.insert(tuple.end(), picked.begin(), picked.end());
        out.push_back(classify(tuple));
        return;
    }
    for (size_t i = from; i + (choose - picked.size()) <= cands.size(); ++i) {
        picked.push_back(cands[i]);
        emit_combinations(p1, cands, choose, picked, i + 1, out);
        picked.pop_back();
    }
}

} // namespace

std::vector<PrimeTuple> find_tuples(unsigned k, uint64_t window_L, uint64_t p1_min,
                                    uint64_t p1_max) {
    if (k < 2) throw std::invalid_argument("find_tuples: k must be >= 2");
    if (window_L < 2 * uint64_t(k - 1))
        throw std::invalid_argument("find_tuples: window must be >= 2(k-1)");
    if (p1_min > p1_max) throw std::invalid_argument("find_tuples: empty range");
    if (p1_max > kSieveCapacity - window_L)
        throw capacity_exceeded("find_tuples: range end beyond sieve capacity");

    std::vector<PrimeTuple> out;
    std::vector<uint64_t> buf; // primes not yet fully processed
    size_t head = 0;
    uint64_t lo = std::max<uint64_t>(p1_min, 3);
    for_each_prime_segment(lo, p1_max + window_L,
                           [&](uint64_t, uint64_t seg_hi, const std::vector<uint64_t>& seg) {
        buf.insert(buf.end(), seg.begin(), seg.end());
        // p1 is ready once every prime <= p1 + L has been sieved.
        while (head < buf.size() && buf[head] <= p1_max && buf[head] + window_L <= seg_hi) {
            uint64_t p1 = buf[head];
            std::vector<uint64_t> cands;
            for (size_t i = head + 1; i < buf.size() && buf[i] <= p1 + window_L; ++i)
                cands.push_back(buf[i]);
            std::vector<uint64_t> picked;
            emit_combinations(p1, cands, k - 1, picked, 0, out);
            ++head;
        }
        if (head > 4096) {
            buf.erase(buf.begin(), buf.begin() + long(head));
            head = 0;
        }
    });
    return out;
}

PatternScan find_pattern(const std::vector<uint64_t>& pattern, uint64_t p1_min,
                         uint64_t p1_max) {
    validate_pattern(pattern);
    if (p1_min > p1_max) throw std::invalid_argument("find_pattern: empty range");
    if (p1_max >= kSieveCapacity)
        throw capacity_exceeded("find_pattern: range end beyond sieve capacity");

    PatternScan result;
    unsigned k = unsigned(pattern.size()) + 1;
    for (uint64_t q = 2; q <= k; ++q) {
        if (!is_prime(q)) continue;
        std::set<uint64_t> residues{0};
        for (uint64_t j : pattern) residues.insert((2 * j) % q);
        if (residues.size() == q) {
            result.admissible = false;
            result.covering_prime = q;
            break;
        }
    }

    for_each_prime_segment(std::max<uint64_t>(p1_min, 3), p1_max,
                           [&](uint64_t, uint64_t, const std::vector<uint64_t>& seg) {
        for (uint64_t p1 : seg) {
            bool hit = true;
            for (uint64_t j : pattern)
                if (!is_prime(p1 + 2 * j)) { hit = false; break; }
            if (hit) result.p1s.push_back(p1);
        }
    });
    return result;
}

std::string serialize(const ScanRecord& r) {
    json j;
    j["timestamp"] = r.timestamp;
    j["primes"] = r.primes;
    j["n"] = r.n.get_str();
    j["k"] = r.k;
    j["window"] = r.window;
    j["case"] = r.case_tag == CaseTag::case1 ? "case1" : "case2";
    j["a"] = r.a.get_str();
    j["coprime"] = r.coprime;
    if (r.value) {
        j["value"] = *r.value;
        j["value_err"] = r.value_err ? *r.value_err : "0";
    }
    if (r.height) j["height"] = r.height->get_str();
    j["bateman"] = r.bateman.get_str();
    j["growth_ratio"] = r.growth_ratio;
    j["dk_estimate"] = r.dk_estimate;
    return j.dump();
}

ScanRecord parse_record(const std::string& line, size_t line_number) {
    try {
        json j = json::parse(line);
        ScanRecord r;
        r.timestamp = j.at("timestamp").get<int64_t>();
        r.primes = j.at("primes").get<std::vector<uint64_t>>();
        r.n = mpz_class(j.at("n").get<std::string>());
        r.k = j.at("k").get<unsigned>();
        r.window = j.at("window").get<uint64_t>();
        std::string tag = j.at("case").get<std::string>();
        if (tag == "case1") r.case_tag = CaseTag::case1;
        else if (tag == "case2") r.case_tag = CaseTag::case2;
        else throw store_parse_error("unknown case tag '" + tag + "'", line_number);
        r.a = mpz_class(j.at("a").get<std::string>());
        r.coprime = j.at("coprime").get<bool>();
        if (j.contains("value")) {
            r.value = j.at("value").get<std::string>();
            r.value_err = j.at("value_err").get<std::string>();
        }
        if (j.contains("height")) r.height = mpz_class(j.at("height").get<std::string>());
        r.bateman = mpz_class(j.at("bateman").get<std::string>());
        r.growth_ratio = j.at("growth_ratio").get<double>();
        r.dk_estimate = j.at("dk_estimate").get<double>();
        return r;
    } catch (const store_parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw store_parse_error(e.what(), line_number);
    }
}

void record_append(const std::string& store_path, const ScanRecord& r) {
    std::ofstream out(store_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open store for append: " + store_path);
    out << serialize(r) << '\n';
    if (!out) throw std::runtime_error("write failed: " + store_path);
}

std::vector<ScanRecord> record_read_all(const std::string& store_path) {
    std::ifstream in(store_path);
    if (!in) throw std::runtime_error("cannot open store: " + store_path);
    std::vector<ScanRecord> out;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        out.push_back(parse_record(line, line_number));
    }
    return out;
}

std::vector<ScanRecord> record_best(const std::string& store_path, unsigned k,
                                    BestMetric metric, size_t top) {
    std::vector<ScanRecord> all = record_read_all(store_path);
    std::vector<ScanRecord> sel;
    for (auto& r : all)
        if (r.k == k) sel.push_back(std::move(r));
    auto key = [metric](const ScanRecord& r) {
        return metric == BestMetric::growth_ratio ? r.growth_ratio : r.dk_estimate;
    };
    std::stable_sort(sel.begin(), sel.end(), [&](const ScanRecord& x, const ScanRecord& y) {
        if (key(x) != key(y)) return key(x) > key(y);
        return x.n < y.n;
    });
    if (sel.size() > top) sel.resize(top);
    return sel;
}

ScanRecord make_record(const WitnessCertificate& cert) {
    ScanRecord r;
    if (const char* ts = std::getenv("CYCLOTOOL_TIMESTAMP"))
        r.timestamp = std::strtoll(ts, nullptr, 10);
    else
        r.timestamp = int64_t(std::time(nullptr));
    r.primes = cert.tuple.primes;
    r.n = cert.tuple.n;
    r.k = cert.tuple.k();
    r.window = cert.tuple.window;
    r.case_tag = cert.tuple.case_tag;
    r.a = cert.point.a;
    r.coprime = cert.point.coprime;
    const Magnitude* v = cert.product_value ? &*cert.product_value
                        : cert.direct_value ? &*cert.direct_value
                                            : nullptr;
    if (v) {
        r.value = v->value.to_decimal();
        r.value_err = v->abs_error.to_decimal();
    }
    if (cert.height) r.height = *cert.height;
    r.bateman = bateman_bound(cert.tuple.primes);
    r.growth_ratio = cert.growth_ratio;
    r.dk_estimate = cert.dk_estimate;
    return r;
}

} // namespace cyclo
