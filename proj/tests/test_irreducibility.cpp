#include <maassclass/irreducibility.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace maassclass;

namespace {

RationalPolynomial poly(std::vector<int64_t> ascending) {
    RationalPolynomial p;
    for (int64_t c : ascending) p.coeffs.emplace_back(c);
    return p;
}

// Naive re-check of a mod-p certificate: no monic factor of degree <= half
// the degree divides f mod p. Exhaustive over all candidate factors.
bool no_small_factor_mod_p(const RationalPolynomial& f, int64_t p) {
    std::vector<Int> model = detail::primitive_integer_model(f);
    detail::ModPoly fp = detail::reduce_mod(model, p);
    int64_t half = fp.degree() / 2;
    for (int64_t deg = 1; deg <= half; ++deg) {
        std::vector<int64_t> cand(static_cast<size_t>(deg) + 1, 0);
        cand.back() = 1;
        // odometer over the deg lower coefficients
        for (;;) {
            detail::ModPoly g{p, cand};
            g.trim();
            if (detail::mod_rem(fp, g).c.empty()) return false;
            int64_t pos = 0;
            while (pos < deg && ++cand[static_cast<size_t>(pos)] == p) {
                cand[static_cast<size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == deg) break;
        }
    }
    return true;
}

} // namespace

TEST_CASE("the D = -15 polynomial is irreducible") {
    Verdict v = irreducible_over_q(poly({9890505, 176625, 1}));
    REQUIRE(v.kind == Verdict::Kind::Irreducible);
    CHECK(v.certificate_prime > 0);
    CHECK(no_small_factor_mod_p(poly({9890505, 176625, 1}), v.certificate_prime));
}

TEST_CASE("x^2 - 1 is reducible with an exactly dividing factor") {
    Verdict v = irreducible_over_q(poly({-1, 0, 1}));
    REQUIRE(v.kind == Verdict::Kind::Reducible);
    auto [q, r] = detail::divmod(poly({-1, 0, 1}), v.factor);
    CHECK(detail::is_zero_poly(r));
    CHECK(v.factor.degree() == 1);
}

TEST_CASE("x^4 + 1: reducible mod every prime, resolved by the fallback") {
    Verdict v = irreducible_over_q(poly({1, 0, 0, 0, 1}));
    REQUIRE(v.kind == Verdict::Kind::Irreducible);
    CHECK(v.certificate_prime == 0); // no prime can certify this one
    CHECK(v.certificate.find("subset") != std::string::npos);
    CHECK(v.primes_tried.size() == 25);
}

TEST_CASE("assorted small cases") {
    CHECK(irreducible_over_q(poly({5, 3})).certificate == "degree 1");

    Verdict quad = irreducible_over_q(poly({1, 0, 1})); // x^2 + 1
    REQUIRE(quad.kind == Verdict::Kind::Irreducible);
    CHECK(quad.certificate_prime == 3); // p=2 divides the discriminant

    // (x^2 + 3x + 1)(x^2 + 2)
    Verdict v = irreducible_over_q(poly({2, 6, 3, 3, 1}));
    REQUIRE(v.kind == Verdict::Kind::Reducible);
    auto [q, r] = detail::divmod(poly({2, 6, 3, 3, 1}), v.factor);
    CHECK(detail::is_zero_poly(r));

    // (x - 3)(x^2 + x + 41)
    Verdict lin = irreducible_over_q(poly({-123, 38, -2, 1}));
    REQUIRE(lin.kind == Verdict::Kind::Reducible);
    CHECK(lin.factor.coeffs == std::vector<Rational>{Rational(-3), Rational(1)});

    // repeated factor (x - 2)^2
    Verdict rep = irreducible_over_q(poly({4, -4, 1}));
    REQUIRE(rep.kind == Verdict::Kind::Reducible);

    CHECK_THROWS_AS(irreducible_over_q(poly({})), std::invalid_argument);
    CHECK_THROWS_AS(irreducible_over_q(poly({7})), std::invalid_argument);
}

TEST_CASE("rational coefficients are cleared first") {
    RationalPolynomial p;
    p.coeffs = {Rational(1, 2), Rational(3, 4), Rational(1, 4)}; // (x+1)(x+2)/4
    Verdict v = irreducible_over_q(p);
    REQUIRE(v.kind == Verdict::Kind::Reducible);
}

TEST_CASE("independent naive mod-p recheck on certified classics") {
    for (auto coeffs : {std::vector<int64_t>{-1728, 1},
                        std::vector<int64_t>{1, 1, 1, 1},
                        std::vector<int64_t>{7, 0, 0, 5, 1}}) {
        Verdict v = irreducible_over_q(poly(coeffs));
        if (v.kind == Verdict::Kind::Irreducible && v.certificate_prime > 0)
            CHECK(no_small_factor_mod_p(poly(coeffs), v.certificate_prime));
    }
}

TEST_CASE("splitting fields of quadratics") {
    CHECK(quadratic_splitting_field(poly({9890505, 176625, 1})) == 5);
    CHECK(quadratic_splitting_field(poly({1, 0, 1})) == -1);
    CHECK(quadratic_splitting_field(poly({-15, 0, 1})) == 15); // disc 60
    CHECK(quadratic_splitting_field(poly({2, 2, 1})) == -1);   // disc -4
    CHECK_THROWS_AS(quadratic_splitting_field(poly({1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(quadratic_splitting_field(poly({-1, 0, 1})),
                    std::invalid_argument); // square discriminant
}
