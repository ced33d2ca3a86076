#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclo/bounds.hpp"
#include "cyclo/errors.hpp"

#include <vector>

using namespace cyclo;

TEST_CASE("ck_constant") {
    CHECK(ck_constant(1) == mpq_class(1));
    CHECK(ck_constant(2) == mpq_class(1));
    CHECK(ck_constant(3) == mpq_class(3, 4));
    CHECK(ck_constant(4) == mpq_class(3, 4));
    CHECK(ck_constant(5) == mpq_class(3, 8));
    CHECK(ck_constant(6) == mpq_class(9, 64));
    CHECK(ck_constant(7) == mpq_class(81, 4096));
    CHECK_THROWS_AS(ck_constant(0), std::invalid_argument);
}

TEST_CASE("ek_exponent") {
    CHECK(ek_exponent(1) == 0);
    CHECK(ek_exponent(2) == 0);
    CHECK(ek_exponent(3) == mpq_class(1, 3));
    CHECK(ek_exponent(4) == 1);
    CHECK(ek_exponent(5) == mpq_class(11, 5));
}

TEST_CASE("bateman_bound") {
    CHECK(bateman_bound({7}) == 1);
    CHECK(bateman_bound({3, 5}) == 1);
    CHECK(bateman_bound({3, 5, 7}) == 3);
    CHECK(bateman_bound({3, 5, 7, 11}) == 135);   // 3^3 * 5
    CHECK(bateman_bound({5, 7, 11, 13}) == 875);  // 5^3 * 7
    CHECK_THROWS_AS(bateman_bound({2, 3}), bad_tuple);
    CHECK_THROWS_AS(bateman_bound({3, 9}), bad_tuple);
    CHECK_THROWS_AS(bateman_bound({5, 3}), bad_tuple);
    CHECK_THROWS_AS(bateman_bound({3, 3}), bad_tuple);
    std::vector<uint64_t> huge = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                  47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    CHECK_THROWS_AS(bateman_bound(huge), capacity_exceeded);
}

TEST_CASE("rational_power encloses known roots") {
    Interval c = rational_power(105, mpq_class(1, 3));
    Real ref("4.7176939803165333573205293439828518986784025321983", 192);
    CHECK(c.lo <= ref);
    CHECK(ref <= c.hi);
    CHECK(c.hi - c.lo <= Real("1e-30", 64));

    Interval one = rational_power(105, 0);
    CHECK(one.lo <= Real(1.0, 64));
    CHECK(Real(1.0, 64) <= one.hi);

    Interval unit = rational_power(1, mpq_class(7, 3));
    CHECK(unit.lo <= Real(1.0, 64));
    CHECK(Real(1.0, 64) <= unit.hi);

    Interval sq = rational_power(7, 2);
    CHECK(sq.lo <= Real(49.0, 64));
    CHECK(Real(49.0, 64) <= sq.hi);
    CHECK(sq.hi - sq.lo <= Real("1e-25", 64));
}

TEST_CASE("bridging inequality") {
    CHECK(bridging_inequality_holds({3, 5, 7}));     // 3 <= 105^(1/3)
    CHECK(bridging_inequality_holds({3, 5}));        // equality: 1 <= 105^0
    CHECK(bridging_inequality_holds({7}));
    CHECK(bridging_inequality_holds({3, 5, 7, 11})); // 135 <= 1155
    CHECK(bridging_inequality_holds({11, 13, 17, 19, 23}));
}

TEST_CASE("bound_report") {
    BoundReport r = bound_report({3, 5, 7}, 0.0107);
    CHECK(r.n == 105);
    CHECK(r.k == 3);
    CHECK(r.bateman == 3);
    CHECK(r.c_k == mpq_class(3, 4));
    CHECK(r.refined == mpq_class(9, 4));
    CHECK(r.e_k == mpq_class(1, 3));
    CHECK(r.bridging_holds);
    // power bound = (3/4) * 105^(1/3)
    Real ref("3.5382704852374000179903970079871389240088018991487", 192);
    CHECK(r.power_bound.lo <= ref);
    CHECK(ref <= r.power_bound.hi);
    CHECK(r.power_bound.hi - r.power_bound.lo <= Real("1e-25", 64));
    CHECK(r.lower_target.lo <= r.lower_target.hi);
    // d_k * 105^(1/3) ~ 0.0504793
    CHECK(r.lower_target.lo >= Real(0.0504, 64));
    CHECK(r.lower_target.hi <= Real(0.0505, 64));

    BoundReport single = bound_report({7});
    CHECK(single.k == 1);
    CHECK(single.bateman == 1);
    CHECK(single.e_k == 0);

    CHECK_THROWS_AS(bound_report({3, 5, 7}, -1.0), std::invalid_argument);
}
