#include <maassclass/qseries.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace maassclass;

namespace {

// random sparse Laurent series for the ring-axiom checks
QSeries random_series(std::mt19937_64& rng, int weight) {
    std::uniform_int_distribution<int64_t> val_dist(-2, 2);
    std::uniform_int_distribution<int64_t> num(-9, 9);
    std::uniform_int_distribution<int64_t> den(1, 4);
    int64_t val = val_dist(rng);
    int64_t order = val + 12;
    std::vector<Rational> coeffs;
    for (int64_t n = val; n <= order; ++n)
        coeffs.emplace_back(Rational(num(rng), den(rng)));
    if (coeffs[0].is_zero()) coeffs[0] = 1;
    return QSeries(val, std::move(coeffs), order, weight);
}

bool agree_on_overlap(const QSeries& f, const QSeries& g) {
    int64_t hi = std::min(f.trunc_order(), g.trunc_order());
    int64_t lo = std::min(f.is_zero() ? hi : f.valuation(),
                          g.is_zero() ? hi : g.valuation());
    for (int64_t n = lo; n <= hi; ++n)
        if (f.coeff(n) != g.coeff(n)) return false;
    return true;
}

} // namespace

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(10) == Rational(5, 66));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(3) == Rational(0));
}

TEST_CASE("Eisenstein series expansions") {
    QSeries e4 = eisenstein(4, 16);
    CHECK(e4.coeff(0) == 1);
    CHECK(e4.coeff(1) == 240);
    CHECK(e4.coeff(2) == 2160);
    CHECK(e4.weight() == 4);

    CHECK(eisenstein(2, 8).coeff(1) == -24);
    CHECK(eisenstein(6, 8).coeff(0) == 1);
    CHECK(eisenstein(6, 8).coeff(1) == -504);
    CHECK(eisenstein(10, 8).coeff(1) == -264);

    CHECK_THROWS_AS(eisenstein(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(eisenstein(0, 8), std::invalid_argument);
}

TEST_CASE("delta expansion and the E4^3 - E6^2 route") {
    QSeries d = delta(16);
    CHECK(d.valuation() == 1);
    CHECK(d.weight() == 12);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
    CHECK(d.coeff(4) == -1472);

    QSeries alt = (power(eisenstein(4, 16), 3) - power(eisenstein(6, 16), 2)) *
                  Rational(1, 1728);
    CHECK(agree_on_overlap(d, alt));
}

TEST_CASE("j invariant") {
    QSeries j = j_function(8);
    CHECK(j.valuation() == -1);
    CHECK(j.weight() == 0);
    CHECK(j.trunc_order() == 8);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
}

TEST_CASE("arithmetic basics") {
    QSeries d = delta(20);
    QSeries unit = d * invert(d);
    CHECK(unit.valuation() == 0);
    CHECK(unit.coeff(0) == 1);
    for (int64_t n = 1; n <= unit.trunc_order(); ++n) CHECK(unit.coeff(n) == 0);

    QSeries one = power(eisenstein(4, 10), 0);
    CHECK(one.coeff(0) == 1);
    CHECK(one.weight() == 0);

    CHECK((eisenstein(4, 10) * eisenstein(6, 10)).coeff(1) == -264);

    CHECK_THROWS_AS(invert(QSeries(0, 10)), std::domain_error);
    CHECK_THROWS_AS(eisenstein(4, 10) + eisenstein(6, 10), WeightMismatchError);
}

TEST_CASE("E10 = E4 * E6 (classical identity, used as the E10 oracle)") {
    QSeries lhs = eisenstein(10, 24);
    QSeries rhs = eisenstein(4, 24) * eisenstein(6, 24);
    CHECK(lhs == rhs);
}

TEST_CASE("Ramanujan consistency D(E4) = (E2 E4 - E6)/3") {
    int64_t N = 24;
    QSeries lhs = q_derivative(eisenstein(4, N));
    QSeries rhs = (eisenstein(2, N) * eisenstein(4, N) - eisenstein(6, N)) *
                  Rational(1, 3);
    CHECK(agree_on_overlap(lhs, rhs));
}

TEST_CASE("truncation stability of the named series") {
    CHECK(eisenstein(4, 32).truncate(10) == eisenstein(4, 10));
    CHECK(delta(32).truncate(10) == delta(10));
    CHECK(j_function(32).truncate(10) == j_function(10));
}

TEST_CASE("j * Delta = E4^3 (second route to the j identity)") {
    QSeries lhs = j_function(24) * delta(24);
    CHECK(agree_on_overlap(lhs, power(eisenstein(4, 24), 3)));
}

TEST_CASE("ring axioms on random series (up to truncation)") {
    std::mt19937_64 rng(0x5eed0003);
    for (int trial = 0; trial < 60; ++trial) {
        QSeries f = random_series(rng, 0);
        QSeries g = random_series(rng, 0);
        QSeries h = random_series(rng, 0);
        CHECK(agree_on_overlap((f * g) * h, f * (g * h)));
        CHECK(agree_on_overlap(f * (g + h), f * g + f * h));
        CHECK(agree_on_overlap(f * g, g * f));
        CHECK(agree_on_overlap((f + g) + h, f + (g + h)));
    }
}

TEST_CASE("principal parts") {
    QSeries f = eisenstein(10, 20) * invert(delta(20));
    PrincipalPart p = principal_part(f);
    CHECK(p.m == 1);
    CHECK(p.a == std::vector<Rational>{Rational(1)});
    CHECK(f.coeff(0) == -240);
    CHECK(f.coeff(1) == -141444);

    PrincipalPart pj = principal_part(j_function(10));
    CHECK(pj.m == 1);
    CHECK(pj.a == std::vector<Rational>{Rational(1)});

    CHECK_THROWS_AS(principal_part(eisenstein(4, 10)), NoPrincipalPartError);
}

TEST_CASE("E4^3/Delta^2 principal part, cross-checked at two orders") {
    for (int64_t N : {16, 32}) {
        QSeries f = power(eisenstein(4, N + 4), 3) * power(invert(delta(N + 4)), 2);
        PrincipalPart p = principal_part(f);
        REQUIRE(p.m == 2);
        CHECK(p.a[1] == 1);   // a_2, the leading pole
        CHECK(p.a[0] == 768); // a_1 from the expansion itself
        // second route: j / Delta
        QSeries alt = j_function(N + 4) * invert(delta(N + 4));
        CHECK(agree_on_overlap(f, alt));
    }
}
