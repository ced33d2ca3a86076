#include "cyclo/bounds.hpp"
#include "cyclo/checks.hpp"
#include "cyclo/cyclo.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"
#include "cyclo/scan.hpp"
#include "cyclo/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using cyclo::Magnitude;
using nlohmann::json;
using nlohmann::ordered_json;

// Shortest round-trip rendering; shared by every output format so CSV and
// structured rows carry identical digits.
std::string fmt_double(double x) {
    return json(x).dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join_u64(const std::vector<uint64_t>& v, const char* sep = ",") {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

// One result row as ordered (key, value, quoted-in-structured?) triples.
struct Row {
    std::vector<std::string> keys;
    std::vector<std::string> values;
    std::vector<bool> as_string; // structured: emit as JSON string vs raw token
    void add(const std::string& k, const std::string& v, bool str = true) {
        keys.push_back(k);
        values.push_back(v);
        as_string.push_back(str);
    }
};

void print_rows(const std::string& format, const std::vector<Row>& rows) {
    if (rows.empty()) return;
    if (format == "text") {
        for (const Row& r : rows) {
            for (size_t i = 0; i < r.keys.size(); ++i)
                std::cout << r.keys[i] << " = " << r.values[i] << "\n";
            if (rows.size() > 1) std::cout << "\n";
        }
    } else if (format == "csv") {
        for (size_t i = 0; i < rows[0].keys.size(); ++i)
            std::cout << (i ? "," : "") << csv_escape(rows[0].keys[i]);
        std::cout << "\n";
        for (const Row& r : rows) {
            for (size_t i = 0; i < r.values.size(); ++i)
                std::cout << (i ? "," : "") << csv_escape(r.values[i]);
            std::cout << "\n";
        }
    } else { // structured
        for (const Row& r : rows) {
            ordered_json j;
            for (size_t i = 0; i < r.keys.size(); ++i) {
                if (r.as_string[i])
                    j[r.keys[i]] = r.values[i];
                else
                    j[r.keys[i]] = json::parse(r.values[i]);
            }
            std::cout << j.dump() << "\n";
        }
    }
}

mpfr_prec_t env_precision() {
    if (const char* s = std::getenv("CYCLOTOOL_PRECISION")) {
        long p = std::strtol(s, nullptr, 10);
        if (p >= 64 && p <= cyclo::kMaxPrecisionBits) return mpfr_prec_t(p);
        throw std::invalid_argument("CYCLOTOOL_PRECISION out of range [64, 16384]");
    }
    return cyclo::kDefaultPrecisionBits;
}

std::string* add_format(CLI::App* cmd) {
    auto fmt = new std::string("text");
    cmd->add_option("--format", *fmt, "Output format")
        ->check(CLI::IsMember({"text", "csv", "structured"}))
        ->capture_default_str();
    return fmt;
}

void add_witness_rows(Row& row, const cyclo::WitnessCertificate& c) {
    row.add("primes", join_u64(c.tuple.primes));
    row.add("n", c.tuple.n.get_str());
    row.add("k", std::to_string(c.tuple.k()), false);
    row.add("window", std::to_string(c.tuple.window), false);
    row.add("case", c.tuple.case_tag == cyclo::CaseTag::case1 ? "case1" : "case2");
    row.add("a", c.point.a.get_str());
    row.add("M", c.point.M.get_str());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.point.a.get_mpz_t(), c.point.M.get_mpz_t());
    row.add("status", c.degenerate ? "DEGENERATE(gcd=" + g.get_str() + ")" : "ok");
    row.add("value", c.product_value ? c.product_value->value.to_decimal() : "");
    row.add("value_err", c.product_value ? c.product_value->abs_error.to_decimal() : "");
    row.add("direct", c.direct_value ? c.direct_value->value.to_decimal() : "");
    row.add("direct_err", c.direct_value ? c.direct_value->abs_error.to_decimal() : "");
    row.add("a_lower", c.a_lower.to_decimal());
    row.add("growth_ratio", fmt_double(c.growth_ratio), false);
    row.add("dk_estimate", fmt_double(c.dk_estimate), false);
    if (c.height) row.add("height", c.height->get_str());
    if (c.chain_holds) row.add("chain", *c.chain_holds ? "holds" : "violated");
}

int run(int argc, char** argv) {
    CLI::App app{"Cyclotomic polynomial toolkit: exact heights, sine-product "
                 "witness evaluation, and prime-constellation scans"};
    app.require_subcommand(1);

    // poly
    auto* poly = app.add_subcommand("poly", "Coefficients of the nth cyclotomic polynomial");
    uint64_t poly_n = 0;
    uint64_t poly_cap = cyclo::kDefaultDegreeCap;
    poly->add_option("n", poly_n, "Index n")->required()->check(CLI::PositiveNumber);
    poly->add_option("--degree-cap", poly_cap, "Refuse degrees above this")
        ->capture_default_str();
    auto poly_fmt = add_format(poly);
    poly->callback([&] {
        cyclo::CyclotomicRecord rec = cyclo::cyclotomic(poly_n, poly_cap);
        if (*poly_fmt == "text") {
            const auto& cs = rec.poly.coeffs();
            for (size_t i = 0; i < cs.size(); ++i)
                std::cout << (i ? " " : "") << cs[i].get_str();
            std::cout << "\n";
        } else if (*poly_fmt == "csv") {
            std::cout << "index,coefficient\n";
            const auto& cs = rec.poly.coeffs();
            for (size_t i = 0; i < cs.size(); ++i)
                std::cout << i << "," << cs[i].get_str() << "\n";
        } else {
            ordered_json j;
            j["n"] = rec.n;
            j["degree"] = rec.poly.degree();
            j["height"] = rec.height.get_str();
            std::vector<std::string> cs;
            for (const auto& c : rec.poly.coeffs()) cs.push_back(c.get_str());
            j["coefficients"] = cs;
            std::cout << j.dump() << "\n";
        }
    });

    // height
    auto* height = app.add_subcommand("height", "Coefficient height A(n)");
    uint64_t height_n = 0;
    uint64_t height_cap = cyclo::kDefaultDegreeCap;
    height->add_option("n", height_n, "Index n")->required()->check(CLI::PositiveNumber);
    height->add_option("--degree-cap", height_cap, "Refuse degrees above this")
        ->capture_default_str();
    auto height_fmt = add_format(height);
    height->callback([&] {
        mpz_class a = cyclo::coefficient_height(height_n, height_cap);
        if (*height_fmt == "text") {
            std::cout << a.get_str() << "\n";
        } else {
            Row row;
            row.add("n", std::to_string(height_n), false);
            row.add("height", a.get_str());
            print_rows(*height_fmt, {row});
        }
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Exact upper bounds for A(n) on a prime tuple");
    std::vector<uint64_t> bounds_primes;
    double bounds_dk = 0.0;
    bounds->add_option("primes", bounds_primes, "Comma-separated ascending odd primes")
        ->required()
        ->delimiter(',');
    bounds->add_option("--dk", bounds_dk, "Lower-target constant d_k")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    auto bounds_fmt = add_format(bounds);
    bounds->callback([&] {
        cyclo::BoundReport rep = cyclo::bound_report(bounds_primes, bounds_dk);
        Row row;
        row.add("primes", join_u64(rep.primes));
        row.add("n", rep.n.get_str());
        row.add("k", std::to_string(rep.k), false);
        row.add("bateman", rep.bateman.get_str());
        row.add("c_k", rep.c_k.get_str());
        row.add("refined", rep.refined.get_str());
        row.add("e_k", rep.e_k.get_str());
        row.add("power_bound_lo", rep.power_bound.lo.to_decimal());
        row.add("power_bound_hi", rep.power_bound.hi.to_decimal());
        row.add("lower_target_lo", rep.lower_target.lo.to_decimal());
        row.add("lower_target_hi", rep.lower_target.hi.to_decimal());
        row.add("bridging", rep.bridging_holds ? "holds" : "violated");
        print_rows(*bounds_fmt, {row});
    });

    // witness
    auto* witness = app.add_subcommand("witness", "Witness point and |Phi_n| certificate");
    std::vector<uint64_t> wit_primes;
    uint64_t wit_prec = 0;
    bool wit_height = false;
    uint64_t wit_cap = cyclo::kDefaultDegreeCap;
    witness->add_option("primes", wit_primes, "Comma-separated ascending odd primes")
        ->required()
        ->delimiter(',');
    witness->add_option("--precision", wit_prec, "Working precision in bits (default 256 or CYCLOTOOL_PRECISION)");
    witness->add_flag("--with-height", wit_height, "Also compute A(n) and check the chain");
    witness->add_option("--degree-cap", wit_cap, "Refuse degrees above this")
        ->capture_default_str();
    auto wit_fmt = add_format(witness);
    witness->callback([&] {
        cyclo::CertificateOptions opt;
        opt.precision = wit_prec ? mpfr_prec_t(wit_prec) : env_precision();
        opt.with_height = wit_height;
        opt.degree_cap = wit_cap;
        cyclo::WitnessCertificate c =
            cyclo::certificate(cyclo::classify(wit_primes), opt);
        Row row;
        add_witness_rows(row, c);
        print_rows(*wit_fmt, {row});
    });

    // scan
    auto* scan = app.add_subcommand("scan", "Find prime tuples and emit certificate records");
    unsigned scan_k = 0;
    uint64_t scan_window = 0;
    std::vector<uint64_t> scan_pattern;
    uint64_t scan_min = 3, scan_max = 0;
    std::string scan_store;
    auto* scan_k_opt = scan->add_option("--k", scan_k, "Tuple size");
    auto* scan_window_opt = scan->add_option("--window", scan_window, "Window p_k - p_1 <= L");
    auto* scan_pattern_opt =
        scan->add_option("--pattern", scan_pattern, "Half-gap pattern j_2,...,j_k")
            ->delimiter(',');
    scan_window_opt->excludes(scan_pattern_opt);
    scan->add_option("--min", scan_min, "Smallest p_1")->capture_default_str();
    scan->add_option("--max", scan_max, "Largest p_1")->required();
    scan->add_option("--store", scan_store, "Append records to this file");
    auto scan_fmt = add_format(scan);
    scan->callback([&] {
        mpfr_prec_t prec = env_precision();
        std::vector<cyclo::PrimeTuple> tuples;
        if (!scan_pattern.empty()) {
            unsigned k = unsigned(scan_pattern.size()) + 1;
            if (*scan_k_opt && scan_k != k)
                throw CLI::ValidationError("scan", "--k disagrees with the pattern length");
            cyclo::PatternScan pat = cyclo::find_pattern(scan_pattern, scan_min, scan_max);
            if (!pat.admissible)
                std::cerr << "warning: pattern covers all residues mod "
                          << pat.covering_prime << "; only sporadic solutions exist\n";
            for (uint64_t p1 : pat.p1s) {
                std::vector<uint64_t> ps{p1};
                for (uint64_t j : scan_pattern) ps.push_back(p1 + 2 * j);
                tuples.push_back(cyclo::classify(ps));
            }
        } else if (*scan_window_opt) {
            if (!*scan_k_opt)
                throw CLI::RequiredError("scan: --k (with --window)");
            tuples = cyclo::find_tuples(scan_k, scan_window, scan_min, scan_max);
        } else {
            throw CLI::RequiredError("scan: --window or --pattern");
        }

        std::vector<Row> rows;
        for (const cyclo::PrimeTuple& t : tuples) {
            cyclo::ScanRecord rec;
            try {
                cyclo::CertificateOptions opt;
                opt.precision = prec;
                opt.with_direct = false;
                rec = cyclo::make_record(cyclo::certificate(t, opt));
            } catch (const cyclo::capacity_exceeded&) {
                // Degenerate tuple too large to evaluate directly: record the
                // tuple and point anyway, without a value.
                cyclo::WitnessCertificate stub;
                stub.tuple = t;
                stub.point = cyclo::witness_point(t);
                stub.degenerate = !stub.point.coprime;
                rec = cyclo::make_record(stub);
            }
            if (!scan_store.empty()) cyclo::record_append(scan_store, rec);
            if (*scan_fmt == "structured") {
                std::cout << cyclo::serialize(rec) << "\n";
                continue;
            }
            Row row;
            row.add("timestamp", std::to_string(rec.timestamp), false);
            row.add("primes", join_u64(rec.primes));
            row.add("n", rec.n.get_str());
            row.add("k", std::to_string(rec.k), false);
            row.add("window", std::to_string(rec.window), false);
            row.add("case", rec.case_tag == cyclo::CaseTag::case1 ? "case1" : "case2");
            row.add("a", rec.a.get_str());
            row.add("coprime", rec.coprime ? "true" : "false", false);
            row.add("value", rec.value ? *rec.value : "");
            row.add("value_err", rec.value_err ? *rec.value_err : "");
            row.add("height", rec.height ? rec.height->get_str() : "");
            row.add("bateman", rec.bateman.get_str());
            row.add("growth_ratio", fmt_double(rec.growth_ratio), false);
            row.add("dk_estimate", fmt_double(rec.dk_estimate), false);
            rows.push_back(std::move(row));
        }
        print_rows(*scan_fmt, rows);
    });

    // asympt
    auto* asympt = app.add_subcommand("asympt", "Asymptotic observables along a gap pattern");
    std::vector<uint64_t> as_pattern;
    std::string as_selector;
    std::vector<unsigned> as_subset;
    uint64_t as_count = 20, as_min = 3;
    uint64_t as_prec = 0;
    asympt->add_option("--pattern", as_pattern, "Half-gap pattern j_2,...,j_k")
        ->required()
        ->delimiter(',');
    asympt->add_option("--selector", as_selector, "Observable to emit")
        ->required()
        ->check(CLI::IsMember({"odd_factor", "even_factor", "pk_odd_factor",
                               "pk_even_factor", "growth_ratio", "dk_estimate"}));
    asympt->add_option("--subset", as_subset, "Factor subset indices (1-based)")
        ->delimiter(',');
    asympt->add_option("--count", as_count, "Rows to emit")->capture_default_str();
    asympt->add_option("--min", as_min, "Smallest p_1")->capture_default_str();
    asympt->add_option("--precision", as_prec, "Working precision in bits");
    auto as_fmt = add_format(asympt);
    asympt->callback([&] {
        cyclo::Selector sel;
        if (as_selector == "odd_factor") sel.kind = cyclo::SelectorKind::odd_factor;
        else if (as_selector == "even_factor") sel.kind = cyclo::SelectorKind::even_factor;
        else if (as_selector == "pk_odd_factor") sel.kind = cyclo::SelectorKind::pk_odd_factor;
        else if (as_selector == "pk_even_factor") sel.kind = cyclo::SelectorKind::pk_even_factor;
        else if (as_selector == "growth_ratio") sel.kind = cyclo::SelectorKind::growth_ratio;
        else sel.kind = cyclo::SelectorKind::dk_estimate;
        sel.subset = as_subset;
        mpfr_prec_t prec = as_prec ? mpfr_prec_t(as_prec) : env_precision();
        cyclo::AsymptSeries series =
            cyclo::asymptotic_series(as_pattern, as_min, as_count, sel, prec);
        for (const auto& s : series.skips)
            std::cerr << "skip p1=" << s.p1 << ": " << s.reason << "\n";
        std::vector<Row> rows;
        for (const auto& r : series.rows) {
            Row row;
            row.add("p1", std::to_string(r.p1), false);
            row.add("primes", join_u64(r.primes));
            row.add("raw", r.raw.value.to_decimal());
            row.add("raw_err", r.raw.abs_error.to_decimal());
            row.add("observable", r.observable.to_decimal());
            rows.push_back(std::move(row));
        }
        print_rows(*as_fmt, rows);
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    std::string suite;
    uint64_t verify_max = 0;
    verify->add_option("--suite", suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"identity", "oracle", "heights", "bounds", "ntheory"}));
    verify->add_option("--max-n", verify_max, "Upper limit (suite-specific default)");
    verify->callback([&] {
        cyclo::SuiteResult res;
        if (suite == "identity") res = cyclo::check_identity(verify_max ? verify_max : 2000);
        else if (suite == "oracle")
            res = cyclo::check_oracle_equivalence(verify_max ? verify_max : 20000);
        else if (suite == "heights") res = cyclo::check_heights(verify_max ? verify_max : 5000);
        else if (suite == "bounds") res = cyclo::check_bounds(verify_max ? verify_max : 20000);
        else res = cyclo::check_ntheory(verify_max ? verify_max : 10000);
        for (const auto& f : res.failures) std::cerr << "failure: " << f << "\n";
        std::cout << (res.pass() ? "PASS " : "FAIL ") << (res.checked - res.failed) << "/"
                  << res.checked << "\n";
        if (!res.pass()) throw std::runtime_error("suite " + suite + " failed");
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
