#include <maassclass/bounds.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace maassclass;

namespace {

BoundInputs inputs(int k, int64_t m, int64_t D, double c = 1.5) {
    BoundInputs in;
    in.k = k;
    in.m = m;
    in.a.assign(static_cast<size_t>(m), Rational(1));
    in.D = D;
    in.c = c;
    return in;
}

} // namespace

TEST_CASE("pochhammer") {
    PrecisionScope scope(128);
    CHECK(pochhammer(Real(3), 2) == 12);
    CHECK(pochhammer(Real("2.5"), 0) == 1);
    CHECK(pochhammer(Real(-2), 1) == -2);
    CHECK(pochhammer_i64(3, 2) == 12);
    CHECK(pochhammer_i64(-2, 1) == -2);
    CHECK(pochhammer_i64(5, 0) == 1);
}

TEST_CASE("zeta at integer arguments") {
    PrecisionScope scope(300);
    Real z2 = zeta_int(2, 256);
    Real pi = real_pi();
    CHECK(abs(z2 - pi * pi / 6) < Real("1e-20"));

    Real z3 = zeta_int(3, 256);
    CHECK(z3 > Real("1.2020569"));
    CHECK(z3 < Real("1.2020570"));

    CHECK(zeta_int(3) > zeta_int(5));
    CHECK(zeta_int(5) > zeta_int(9));
    CHECK(zeta_int(9) > zeta_int(13));
    CHECK(zeta_int(13) > 1);
    CHECK_THROWS_AS(zeta_int(1), std::invalid_argument);

    // precision-doubling stability
    CHECK(abs(zeta_int(3, 128) - zeta_int(3, 256)) < ldexp(Real(1), -120));
}

TEST_CASE("exact B constants sit below the printed majorants") {
    PrecisionScope scope(300);
    Real pi = real_pi();
    Real sqrt3 = sqrt(Real(3));
    for (int k = 1; k <= 6; ++k) {
        for (int64_t m = 1; m <= 6; ++m) {
            BConstants b = b_constants(k, m, -20, 256);
            Real mk = pow_si(Real(m), 1 + 2 * k);
            CHECK(b.b0 <= 1064 * mk);
            Real b1_majorant = 189 * pow(Real(m), Real(k) + Real(3) / 2) *
                               pow_si(1 + k / (sqrt3 * pi), k) *
                               exp(4 * pi * m / sqrt3);
            CHECK(b.b1 <= b1_majorant);
            CHECK(b.b2 <= 245 * mk * pow_si(k / (sqrt3 * pi), k));
        }
    }
}

TEST_CASE("the two-term Pochhammer sum at k = m = 1, D = -15") {
    PrecisionScope scope(300);
    Real expected = abs(1 - 1 / (sqrt(Real(15)) * real_pi()));
    CHECK(abs(pochhammer_sum(1, 1, -15, 256) - expected) < Real("1e-60"));
}

TEST_CASE("theorem criterion at the example parameters") {
    TheoremResult r20 = theorem_criterion(inputs(1, 1, -20));
    CHECK(r20.applicable);
    CHECK(r20.guaranteed);

    // stability under precision doubling
    TheoremResult lo = theorem_criterion(inputs(1, 1, -20), 128);
    TheoremResult hi = theorem_criterion(inputs(1, 1, -20), 256);
    PrecisionScope scope(300);
    CHECK(abs(lo.rhs - hi.rhs) < Real("1e-25"));
}

TEST_CASE("monotone takeover of the theorem inequality") {
    BoundInputs in = inputs(1, 1, -20);
    std::optional<int64_t> crossover = theorem_takeover(in, -20000, 96);
    REQUIRE(crossover.has_value());
    CHECK(crossover.value() >= -20000);

    // far samples: first fundamental discriminants at and beyond 1e5, 1e6
    int checked = 0;
    for (int64_t base : {-100000, -400000, -1000000}) {
        for (int64_t D = base; D >= base - 50; --D) {
            if (mod4(D) != 0 && mod4(D) != 1) continue;
            if (!Discriminant(D).is_fundamental()) continue;
            in.D = D;
            TheoremResult r = theorem_criterion(in, 96);
            CHECK(r.guaranteed);
            // the rhs stays bounded while sqrt(-D) grows
            CHECK(r.rhs < 10);
            ++checked;
            break;
        }
    }
    CHECK(checked == 3);
}

TEST_CASE("corollary criterion reproduces the 4.45366 threshold") {
    PrecisionScope scope(300);
    CorollaryResult r = corollary_criterion(inputs(1, 1, -20, 1.5));
    CHECK(abs(r.rhs1 - 3 / real_pi()) < Real("1e-60")); // c/(pi(c-1)) at c=3/2
    Real threshold = std::max(r.rhs1, r.rhs2);
    CHECK(abs(threshold - Real("4.45366")) < Real("5e-5"));
    CHECK(r.guaranteed); // sqrt(20) > 4.454

    CorollaryResult r15 = corollary_criterion(inputs(1, 1, -15, 1.5));
    CHECK_FALSE(r15.guaranteed); // sqrt(15) = 3.873 < 4.45366

    CHECK_THROWS_AS(corollary_criterion(inputs(1, 1, -15, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(corollary_criterion(inputs(1, 1, -15, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("the c grid search beats the reference choice but cannot reach "
          "sqrt(15)") {
    PrecisionScope scope(256);
    auto [best_c, best] = optimize_c(inputs(1, 1, -20));
    Real at_reference =
        std::max(corollary_criterion(inputs(1, 1, -20, 1.5)).rhs1,
                 corollary_criterion(inputs(1, 1, -20, 1.5)).rhs2);
    CHECK(best <= at_reference);
    CHECK(best_c > 1.0);
    CHECK(best_c < 1.5);
    // rhs2 > (2/pi) log(615 (1 + 1/(sqrt3 pi))) > sqrt(15) for every c > 1,
    // so no choice of c rescues D = -15
    CHECK(best > sqrt(Real(15)));
    CHECK(best < Real("4.45366"));
}

TEST_CASE("corollary limit structure in c") {
    PrecisionScope scope(300);
    CorollaryResult big = corollary_criterion(inputs(1, 1, -20, 1e9));
    CHECK(abs(big.rhs1 - 1 / real_pi()) < Real("1e-6")); // k/(m pi (2^{1/k}-1))
    CorollaryResult mid = corollary_criterion(inputs(1, 1, -20, 1.5));
    CHECK(big.rhs2 > mid.rhs2);

    CorollaryResult k2 = corollary_criterion(inputs(2, 1, -20, 1e9));
    Real limit2 = 2 / (real_pi() * (sqrt(Real(2)) - 1));
    CHECK(abs(k2.rhs1 - limit2) < Real("1e-5"));
}

TEST_CASE("corollary guarantee implies theorem guarantee (sampled grid)") {
    for (int k = 1; k <= 3; ++k)
        for (int64_t m = 1; m <= 2; ++m)
            for (int64_t D : {-15, -20, -24, -40, -84, -120, -163, -499})
                for (double c : {1.2, 1.5, 3.0, 10.0}) {
                    if (!Discriminant(D).is_fundamental()) continue;
                    BoundInputs in = inputs(k, m, D, c);
                    CorollaryResult cr = corollary_criterion(in, 128);
                    if (!cr.guaranteed) continue;
                    TheoremResult tr = theorem_criterion(in, 128);
                    INFO("k=" << k << " m=" << m << " D=" << D << " c=" << c);
                    CHECK(tr.applicable);
                    CHECK(tr.guaranteed);
                }
}

TEST_CASE("report invariants") {
    BoundReport rep = bound_report(inputs(1, 1, -20));
    PrecisionScope scope(300);
    CHECK(abs(rep.B - (rep.constants.b0 + rep.constants.b1 + rep.constants.b2 +
                       rep.constants.b3 + rep.constants.b4)) < Real("1e-40"));
    CHECK(rep.theorem.guaranteed == (rep.sqrt_minus_d > rep.theorem.rhs));
    bool cor = rep.sqrt_minus_d > std::max(rep.corollary.rhs1, rep.corollary.rhs2);
    CHECK(rep.corollary.guaranteed == cor);
    CHECK_THROWS_AS(bound_report(inputs(1, 1, -12)), std::invalid_argument);
    CHECK_THROWS_AS(bound_report(inputs(0, 1, -15)), std::invalid_argument);
}
