#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclo/errors.hpp"
#include "cyclo/witness.hpp"

#include <vector>

using namespace cyclo;

TEST_CASE("classify") {
    PrimeTuple t = classify({3, 5, 7});
    CHECK(t.n == 105);
    CHECK(t.M == 15);
    CHECK(t.k() == 3);
    CHECK(t.window == 4);
    CHECK(t.half_gaps == std::vector<uint64_t>{0, 1, 2});
    CHECK(t.case_tag == CaseTag::case1); // 4 | 3+5

    PrimeTuple u = classify({3, 7, 11});
    CHECK(u.case_tag == CaseTag::case2); // j_2 = 2 even
    CHECK(u.half_gaps == std::vector<uint64_t>{0, 2, 4});

    CHECK_THROWS_AS(classify({7}), bad_tuple);
    CHECK_THROWS_AS(classify({2, 3}), bad_tuple);
    CHECK_THROWS_AS(classify({3, 3}), bad_tuple);
    CHECK_THROWS_AS(classify({5, 3}), bad_tuple);
    CHECK_THROWS_AS(classify({3, 15}), bad_tuple);
}

TEST_CASE("f_value") {
    CHECK(f_value(1, classify({3, 5, 7})) == 2);           // (3+5)/4
    CHECK(f_value(2, classify({5, 7, 11, 13})) == 117);    // (5^3+7^3)/4
    CHECK(f_value(1, classify({3, 7})) == 2);              // case2: (3+7-2)/4
    CHECK_THROWS_AS(f_value(2, classify({3, 5, 7})), std::invalid_argument);
    CHECK_THROWS_AS(f_value(0, classify({3, 5, 7})), std::invalid_argument);
}

TEST_CASE("witness_point") {
    WitnessPoint w = witness_point(classify({3, 5, 7}));
    CHECK(w.a == 2);
    CHECK(w.M == 15);
    CHECK(w.coprime);

    WitnessPoint d = witness_point(classify({5, 7, 11, 13}));
    CHECK(d.a == 120);
    CHECK(d.M == 385);
    CHECK_FALSE(d.coprime); // gcd = 5

    WitnessPoint big = witness_point(classify({11, 13, 17, 19, 23}));
    CHECK(big.a == 888);
    CHECK(big.M == 46189);
    CHECK(big.coprime);
}

TEST_CASE("enumerate_factors structure for (3,5,7)") {
    PrimeTuple t = classify({3, 5, 7});
    auto fs = enumerate_factors(t, witness_point(t), 128);
    REQUIRE(fs.size() == 6); // 2^3 - 2
    int numerators = 0, denominators = 0;
    bool saw_num_1_mod3 = false, saw_den_2_mod15 = false;
    for (const auto& f : fs) {
        CHECK((f.multiplier == 1 || f.multiplier == 7));
        CHECK(f.residue >= 0);
        CHECK(f.residue < 2 * f.denomprod);
        CHECK_FALSE(f.magnitude.value.is_zero());
        if (f.exponent == 1) ++numerators;
        else ++denominators;
        // numerator parity rule
        bool odd = f.subset.size() % 2 == 1;
        CHECK(f.exponent == ((f.multiplier == 1) == odd ? 1 : -1));
        if (f.exponent == 1 && f.denomprod == 3 && f.residue == 2) saw_num_1_mod3 = true;
        if (f.exponent == -1 && f.denomprod == 15 && f.residue == 2) saw_den_2_mod15 = true;
    }
    CHECK(numerators == 3);
    CHECK(denominators == 3);
    CHECK(saw_num_1_mod3);   // sin(2*pi/3) upstairs
    CHECK(saw_den_2_mod15);  // sin(2*pi/15) downstairs
}

TEST_CASE("eval_product matches frozen value for (3,5,7)") {
    PrimeTuple t = classify({3, 5, 7});
    Magnitude v = eval_product(t, witness_point(t), 256);
    Real frozen("5.78963640699641253702978600779444049117134643128464363085399703291160834943682638",
                320);
    CHECK(Real::abs(v.value - frozen) <= v.abs_error + Real("1e-70", 64));
    CHECK(v.rel_error_below(1e-10));

    Magnitude w = eval_product(classify({5, 7, 11}), witness_point(classify({5, 7, 11})), 256);
    Real frozen2("9.20633703903035378750168552078102693392425689624545879624162", 256);
    CHECK(Real::abs(w.value - frozen2) <= w.abs_error + Real("1e-55", 64));
}

TEST_CASE("eval_product precision honesty") {
    PrimeTuple t = classify({11, 13, 17, 19, 23});
    WitnessPoint w = witness_point(t);
    Magnitude lo = eval_product(t, w, 64);
    Magnitude hi = eval_product(t, w, 1024);
    CHECK(Real::abs(lo.value - hi.value) <= lo.abs_error + hi.abs_error);
    CHECK(hi.abs_error <= lo.abs_error);
    Real frozen("56378.3871069131271384518088421271271542658833872423689827642", 256);
    CHECK(Real::abs(hi.value - frozen) <= hi.abs_error + Real("1e-50", 64));
}

TEST_CASE("eval_product rejects degenerate points") {
    PrimeTuple t = classify({5, 7, 11, 13});
    CHECK_THROWS_AS(eval_product(t, witness_point(t), 128), degenerate_point);
}

TEST_CASE("direct_eval agrees with the product") {
    PrimeTuple t = classify({3, 5, 7});
    WitnessPoint w = witness_point(t);
    Magnitude p = eval_product(t, w, 256);
    Magnitude d = direct_eval(t, w, 256);
    CHECK(Real::abs(p.value - d.value) <= p.abs_error + d.abs_error);

    // degenerate point still evaluates directly
    PrimeTuple dt = classify({5, 7, 11, 13});
    Magnitude dv = direct_eval(dt, witness_point(dt), 256);
    CHECK(Real::abs(dv.value - Real(3.3184626280, 256)) <= Real("1e-8", 64));
}

TEST_CASE("certificate for a coprime tuple") {
    CertificateOptions opt;
    opt.with_height = true;
    WitnessCertificate c = certificate(classify({3, 5, 7}), opt);
    CHECK_FALSE(c.degenerate);
    REQUIRE(c.product_value.has_value());
    REQUIRE(c.direct_value.has_value());
    REQUIRE(c.height.has_value());
    CHECK(*c.height == 2);
    REQUIRE(c.chain_holds.has_value());
    CHECK(*c.chain_holds);
    CHECK(c.a_lower.to_double() == doctest::Approx(0.055139394352346786).epsilon(1e-12));
    CHECK(c.growth_ratio == doctest::Approx(0.071476992678968056).epsilon(1e-12));
    CHECK(c.dk_estimate == doctest::Approx(0.011687785299852623).epsilon(1e-12));
}

TEST_CASE("certificate for a degenerate tuple") {
    WitnessCertificate c = certificate(classify({5, 7, 11, 13}));
    CHECK(c.degenerate);
    CHECK_FALSE(c.product_value.has_value());
    REQUIRE(c.direct_value.has_value());
    CHECK(c.direct_value->value.to_double() == doctest::Approx(3.3184626280).epsilon(1e-8));
}

TEST_CASE("asymptotic_series factor selectors") {
    Selector odd;
    odd.kind = SelectorKind::odd_factor;
    odd.subset = {1};
    AsymptSeries s = asymptotic_series({1, 3}, 3, 4, odd, 192);
    REQUIRE(s.rows.size() == 4);
    CHECK(s.rows[0].p1 == 5);
    CHECK(s.rows[1].p1 == 11);
    CHECK(s.rows[2].p1 == 17);
    CHECK(s.rows[3].p1 == 41);
    CHECK(s.skips.empty());
    // raw = sin(a*pi/p1) = cos(pi/(2 p1)) since a = (p1+1)/2
    for (const auto& r : s.rows) {
        mpfr_t ref;
        mpfr_init2(ref, 192);
        mpfr_const_pi(ref, MPFR_RNDN);
        mpfr_div_ui(ref, ref, 2 * r.p1, MPFR_RNDN);
        mpfr_cos(ref, ref, MPFR_RNDN);
        Real rr(192);
        mpfr_set(rr.get(), ref, MPFR_RNDN);
        mpfr_clear(ref);
        CHECK(Real::abs(r.raw.value - rr) <= r.raw.abs_error + Real("1e-40", 64));
        // observable = 1 - raw
        CHECK(Real::abs((Real(1.0, 192) - r.raw.value) - r.observable) <= Real("1e-40", 64));
    }

    Selector even;
    even.kind = SelectorKind::even_factor;
    even.subset = {1, 2};
    AsymptSeries e = asymptotic_series({1, 3}, 3, 3, even, 192);
    REQUIRE(e.rows.size() == 3);
    for (const auto& r : e.rows) {
        // observable = p1 * raw, tends to pi/2
        CHECK(r.observable.to_double() > 0.5);
        CHECK(r.observable.to_double() < 12.0);
    }
}

TEST_CASE("asymptotic_series ratio selectors and skips") {
    Selector g;
    g.kind = SelectorKind::growth_ratio;
    // pattern (1,3,4) hits (5,7,11,13) first, which is degenerate
    AsymptSeries s = asymptotic_series({1, 3, 4}, 3, 2, g, 192);
    REQUIRE(s.skips.size() >= 1);
    CHECK(s.skips[0].p1 == 5);
    CHECK(s.skips[0].reason.find("gcd") != std::string::npos);
    REQUIRE(s.rows.size() == 2);
    CHECK(s.rows[0].p1 == 11);
    // raw is the full product; observable divides out p1^(2^(k-1)) = 11^8
    CHECK(s.rows[0].observable.to_double() ==
          doctest::Approx(s.rows[0].raw.value.to_double() / 214358881.0).epsilon(1e-12));
    CHECK(s.rows[0].observable.to_double() > 0.0);

    Selector d;
    d.kind = SelectorKind::dk_estimate;
    AsymptSeries ds = asymptotic_series({1, 3}, 3, 1, d, 192);
    REQUIRE(ds.rows.size() == 1);
    CHECK(ds.rows[0].observable.to_double() > 0.0);
}

TEST_CASE("asymptotic_series selector validation") {
    Selector bad;
    bad.kind = SelectorKind::odd_factor; // no subset
    CHECK_THROWS_AS(asymptotic_series({1, 3}, 3, 1, bad, 128), std::invalid_argument);
    bad.subset = {1, 2}; // even-sized subset for an odd selector
    CHECK_THROWS_AS(asymptotic_series({1, 3}, 3, 1, bad, 128), std::invalid_argument);
    bad.subset = {3}; // index out of range for k = 3 (valid indices 1..2)
    CHECK_THROWS_AS(asymptotic_series({1, 3}, 3, 1, bad, 128), std::invalid_argument);
    Selector ratio;
    ratio.kind = SelectorKind::growth_ratio;
    ratio.subset = {1};
    CHECK_THROWS_AS(asymptotic_series({1, 3}, 3, 1, ratio, 128), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_series({}, 3, 1, ratio, 128), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_series({3, 1}, 3, 1, ratio, 128), std::invalid_argument);
}
