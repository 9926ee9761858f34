#ifndef MAASSCLASS_IRREDUCIBILITY_HPP
#define MAASSCLASS_IRREDUCIBILITY_HPP

// Irreducibility certification over Q for the recognized class polynomials.
// Primary route: irreducibility mod p for a prime not dividing the leading
// coefficient (with p skipped when the reduction is not squarefree), which
// yields an auditable certificate. Polynomials of degree <= 4 that are
// reducible mod every tested prime (e.g. x^4+1) fall back to an exhaustive
// search for rational factors of degree <= 2 built from root subsets; every
// candidate factor is verified by exact division before it is believed.

#include "classpoly.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maassclass {

struct Verdict {
    enum class Kind { Irreducible, Reducible, Inconclusive };

    Kind kind = Kind::Inconclusive;
    std::string certificate;            // Irreducible: "degree 1", "mod p", ...
    int64_t certificate_prime = 0;      // set when certified mod p
    RationalPolynomial factor;          // Reducible: exact divisor
    std::vector<int64_t> primes_tried;  // Inconclusive

    bool irreducible() const { return kind == Kind::Irreducible; }
};

namespace detail {

inline std::vector<int64_t> small_primes(size_t count) {
    std::vector<int64_t> out;
    for (int64_t n = 2; out.size() < count; ++n) {
        bool prime = true;
        for (int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(n);
    }
    return out;
}

// Primitive integer model: clear denominators, divide by content, make the
// leading coefficient positive.
inline std::vector<Int> primitive_integer_model(const RationalPolynomial& p) {
    Int lcm_den(1);
    for (const auto& c : p.coeffs)
        lcm_den = lcm(lcm_den, Int(denominator(c)));
    std::vector<Int> v;
    v.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs) v.push_back(Int(Rational(c * lcm_den)));
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    if (v.empty()) return v;
    Int content(0);
    for (const auto& c : v) content = gcd(content, c);
    if (v.back() < 0) content = -content;
    for (auto& c : v) c /= content;
    return v;
}

struct ModPoly {
    int64_t p;
    std::vector<int64_t> c; // ascending, trimmed

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int64_t degree() const { return static_cast<int64_t>(c.size()) - 1; }
};

inline int64_t mod_pow(int64_t base, int64_t exp, int64_t p) {
    int64_t acc = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}

inline int64_t mod_inv(int64_t a, int64_t p) { return mod_pow(a, p - 2, p); }

inline ModPoly reduce_mod(const std::vector<Int>& f, int64_t p) {
    ModPoly out{p, {}};
    out.c.reserve(f.size());
    for (const auto& c : f) out.c.push_back(static_cast<int64_t>(((c % p) + p) % p));
    out.trim();
    return out;
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& b) {
    int64_t p = b.p;
    int64_t lead_inv = mod_inv(b.c.back(), p);
    while (a.degree() >= b.degree() && !a.c.empty()) {
        int64_t shift = a.degree() - b.degree();
        int64_t scale = a.c.back() * lead_inv % p;
        for (int64_t i = 0; i <= b.degree(); ++i) {
            int64_t& t = a.c[static_cast<size_t>(i + shift)];
            t = ((t - scale * b.c[static_cast<size_t>(i)]) % p + p) % p;
        }
        a.trim();
    }
    return a;
}

inline ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) {
    ModPoly prod{m.p, std::vector<int64_t>(a.c.size() + b.c.size(), 0)};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            prod.c[i + j] = (prod.c[i + j] + a.c[i] * b.c[j]) % m.p;
    }
    prod.trim();
    return mod_rem(std::move(prod), m);
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b) {
    while (!b.c.empty()) {
        ModPoly r = mod_rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline ModPoly mod_derivative(const ModPoly& f) {
    ModPoly d{f.p, {}};
    for (size_t i = 1; i < f.c.size(); ++i)
        d.c.push_back(f.c[i] * static_cast<int64_t>(i % f.p) % f.p);
    d.trim();
    return d;
}

// x^(p^i) mod f by iterated Frobenius; returns x^(p^i) for i = 1..count.
inline std::vector<ModPoly> frobenius_powers(const ModPoly& f, int64_t count) {
    ModPoly x{f.p, {0, 1}};
    std::vector<ModPoly> out;
    ModPoly cur = x;
    for (int64_t i = 0; i < count; ++i) {
        // cur := cur^p mod f
        ModPoly acc{f.p, {1}};
        ModPoly base = cur;
        int64_t e = f.p;
        while (e > 0) {
            if (e & 1) acc = mod_mulmod(acc, base, f);
            base = mod_mulmod(base, base, f);
            e >>= 1;
        }
        cur = std::move(acc);
        out.push_back(cur);
    }
    return out;
}

// True iff f is squarefree and has no irreducible factor of degree <= deg/2,
// i.e. f is irreducible mod p.
inline bool irreducible_mod_p(const ModPoly& f) {
    if (f.degree() < 1) return false;
    ModPoly d = mod_derivative(f);
    if (d.c.empty()) return false;
    if (mod_gcd(f, d).degree() != 0) return false; // not squarefree
    int64_t half = f.degree() / 2;
    std::vector<ModPoly> frob = frobenius_powers(f, half);
    for (int64_t i = 1; i <= half; ++i) {
        ModPoly diff = frob[static_cast<size_t>(i - 1)];
        // subtract x
        if (diff.c.size() < 2) diff.c.resize(2, 0);
        diff.c[1] = ((diff.c[1] - 1) % f.p + f.p) % f.p;
        diff.trim();
        ModPoly g = mod_gcd(f, diff);
        if (g.degree() != 0) return false;
    }
    return true;
}

// ---- exact rational polynomial helpers ----

inline std::pair<RationalPolynomial, RationalPolynomial>
divmod(const RationalPolynomial& f, const RationalPolynomial& g) {
    RationalPolynomial q, r = f;
    size_t dg = g.degree();
    if (g.coeffs.empty() || g.coeffs.back().is_zero())
        throw std::invalid_argument("division by zero polynomial");
    if (r.coeffs.size() < g.coeffs.size()) {
        q.coeffs = {Rational(0)};
        return {q, r};
    }
    q.coeffs.assign(r.coeffs.size() - dg, Rational(0));
    for (size_t i = r.coeffs.size(); i-- > dg;) {
        Rational scale = r.coeffs[i] / g.coeffs.back();
        if (scale.is_zero()) continue;
        q.coeffs[i - dg] = scale;
        for (size_t j = 0; j <= dg; ++j)
            r.coeffs[i - dg + j] -= scale * g.coeffs[j];
    }
    while (r.coeffs.size() > 1 && r.coeffs.back().is_zero()) r.coeffs.pop_back();
    return {q, r};
}

inline bool is_zero_poly(const RationalPolynomial& f) {
    for (const auto& c : f.coeffs)
        if (!c.is_zero()) return false;
    return true;
}

inline RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b) {
    auto normalize = [](RationalPolynomial& f) {
        while (f.coeffs.size() > 1 && f.coeffs.back().is_zero())
            f.coeffs.pop_back();
        if (!f.coeffs.empty() && !f.coeffs.back().is_zero()) {
            Rational lead = f.coeffs.back();
            for (auto& c : f.coeffs) c /= lead;
        }
    };
    normalize(a);
    normalize(b);
    while (!is_zero_poly(b)) {
        RationalPolynomial r = divmod(a, b).second;
        a = std::move(b);
        normalize(r);
        b = std::move(r);
    }
    normalize(a);
    return a;
}

inline RationalPolynomial from_integer_coeffs(const std::vector<Int>& v) {
    RationalPolynomial p;
    p.coeffs.reserve(v.size());
    for (const auto& c : v) p.coeffs.emplace_back(c);
    return p;
}

// Weierstrass / Durand-Kerner iteration on a monic polynomial. The class
// polynomials this sees have well separated roots.
inline std::vector<Complex> all_roots(const std::vector<Real>& monic,
                                      unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    size_t d = monic.size() - 1;
    Real radius(1);
    for (size_t i = 0; i < d; ++i) {
        Real candidate = 2 * pow(abs(Complex(monic[i], Real(0))) + 1,
                                 Real(1) / static_cast<int>(d - i));
        radius = std::max(radius, candidate);
    }
    std::vector<Complex> z(d);
    Complex seed = Complex(Real("0.4"), Real("0.9")); // not a root of unity
    Complex acc = seed;
    for (size_t i = 0; i < d; ++i) {
        z[i] = acc * radius;
        acc *= seed;
    }
    auto eval = [&](const Complex& x) {
        Complex v(Real(1), Real(0));
        for (size_t i = monic.size() - 1; i-- > 0;) {
            v = v * x;
            v.re += monic[i];
        }
        return v;
    };
    Real tol = ldexp(Real(1), -static_cast<int>(precision_bits) + 16);
    for (int iter = 0; iter < 1000; ++iter) {
        Real worst(0);
        for (size_t i = 0; i < d; ++i) {
            Complex denom(Real(1), Real(0));
            for (size_t j = 0; j < d; ++j)
                if (j != i) denom *= z[i] - z[j];
            Complex delta = eval(z[i]) / denom;
            z[i] -= delta;
            worst = std::max(worst, abs(delta));
        }
        if (worst < tol * std::max(Real(1), radius)) break;
    }
    return z;
}

// Exhaustive search for a monic rational factor of degree 1 or 2 via root
// subsets; decisive for degree <= 4. Returns an exactly verified factor.
inline std::optional<RationalPolynomial>
subset_factor_search(const std::vector<Int>& f, unsigned precision_bits) {
    size_t d = f.size() - 1;
    std::vector<Real> monic(f.size());
    PrecisionScope scope(precision_bits);
    Real lead = Real(f.back());
    for (size_t i = 0; i < f.size(); ++i) monic[i] = Real(f[i]) / lead;
    std::vector<Complex> roots = all_roots(monic, precision_bits);
    RationalPolynomial poly = from_integer_coeffs(f);
    Int denom_bound = Int(f.back()) * 1000000; // factor denominators divide lc
    Real accept = ldexp(Real(1), -static_cast<int>(precision_bits) / 3);

    auto try_candidate = [&](const RationalPolynomial& candidate)
        -> std::optional<RationalPolynomial> {
        auto [q, r] = divmod(poly, candidate);
        (void)q;
        if (is_zero_poly(r)) return candidate;
        return std::nullopt;
    };

    // linear factors x - root
    for (size_t i = 0; i < d; ++i) {
        if (abs(roots[i].im) > accept) continue;
        auto [value, dist] = nearest_rational(roots[i].re, denom_bound);
        if (dist > accept) continue;
        RationalPolynomial cand;
        cand.coeffs = {-value, Rational(1)};
        if (auto hit = try_candidate(cand)) return hit;
    }
    // quadratic factors (x - r_i)(x - r_j)
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
            Complex sum = roots[i] + roots[j];
            Complex prod = roots[i] * roots[j];
            if (abs(sum.im) > accept || abs(prod.im) > accept) continue;
            auto [s, ds] = nearest_rational(sum.re, denom_bound);
            auto [p, dp] = nearest_rational(prod.re, denom_bound);
            if (ds > accept || dp > accept) continue;
            RationalPolynomial cand;
            cand.coeffs = {p, -s, Rational(1)};
            if (auto hit = try_candidate(cand)) return hit;
        }
    return std::nullopt;
}

// Divisor-based rational root test, used when the constant term is small
// enough to enumerate.
inline std::optional<RationalPolynomial>
divisor_rational_root(const std::vector<Int>& f) {
    const Int& c0 = f.front();
    const Int& lead = f.back();
    if (c0.is_zero()) {
        RationalPolynomial x;
        x.coeffs = {Rational(0), Rational(1)};
        return x;
    }
    if (abs(c0) > 1000000 || abs(lead) > 1000000) return std::nullopt;
    auto divisors = [](int64_t n) {
        std::vector<int64_t> out;
        n = std::abs(n);
        for (int64_t d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                out.push_back(d);
                if (d != n / d) out.push_back(n / d);
            }
        return out;
    };
    RationalPolynomial poly = from_integer_coeffs(f);
    for (int64_t num : divisors(c0.convert_to<int64_t>()))
        for (int64_t den : divisors(lead.convert_to<int64_t>()))
            for (int sign : {1, -1}) {
                Rational root(sign * num, den);
                RationalPolynomial cand;
                cand.coeffs = {-root, Rational(1)};
                if (is_zero_poly(divmod(poly, cand).second)) return cand;
            }
    return std::nullopt;
}

} // namespace detail

inline Verdict irreducible_over_q(const RationalPolynomial& input,
                                  unsigned precision_bits = 256,
                                  size_t prime_budget = 25) {
    std::vector<Int> f = detail::primitive_integer_model(input);
    if (f.empty()) throw std::invalid_argument("zero polynomial");
    if (f.size() == 1) throw std::invalid_argument("constant polynomial");
    Verdict v;
    if (f.size() == 2) {
        v.kind = Verdict::Kind::Irreducible;
        v.certificate = "degree 1";
        return v;
    }

    // repeated factor over Q: gcd(f, f') is a proper divisor
    RationalPolynomial fq = detail::from_integer_coeffs(f);
    RationalPolynomial fprime;
    fprime.coeffs.resize(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i)
        fprime.coeffs[i - 1] = Rational(f[i]) * static_cast<int64_t>(i);
    RationalPolynomial g = detail::poly_gcd(fq, fprime);
    if (g.degree() >= 1) {
        v.kind = Verdict::Kind::Reducible;
        v.factor = g;
        return v;
    }

    if (auto root = detail::divisor_rational_root(f)) {
        v.kind = Verdict::Kind::Reducible;
        v.factor = *root;
        return v;
    }

    size_t degree = f.size() - 1;
    for (int64_t p : detail::small_primes(prime_budget + 16)) {
        if (v.primes_tried.size() >= prime_budget) break;
        if (f.back() % p == 0) continue;
        detail::ModPoly fp = detail::reduce_mod(f, p);
        if (fp.degree() != static_cast<int64_t>(degree)) continue;
        detail::ModPoly d = detail::mod_derivative(fp);
        if (d.c.empty() || detail::mod_gcd(fp, d).degree() != 0)
            continue; // p divides the discriminant
        v.primes_tried.push_back(p);
        if (detail::irreducible_mod_p(fp)) {
            v.kind = Verdict::Kind::Irreducible;
            v.certificate = "mod " + std::to_string(p);
            v.certificate_prime = p;
            return v;
        }
    }

    if (degree <= 4) {
        if (auto factor = detail::subset_factor_search(f, precision_bits)) {
            v.kind = Verdict::Kind::Reducible;
            v.factor = *factor;
            return v;
        }
        v.kind = Verdict::Kind::Irreducible;
        v.certificate = "no rational factor of degree <= 2 "
                        "(exhaustive root-subset search)";
        return v;
    }

    v.kind = Verdict::Kind::Inconclusive;
    return v;
}

// Squarefree part of the discriminant of an irreducible integer quadratic;
// its roots generate Q(sqrt(result)).
inline Int quadratic_splitting_field(const RationalPolynomial& input) {
    std::vector<Int> f = detail::primitive_integer_model(input);
    if (f.size() != 3)
        throw std::invalid_argument("splitting field requires degree exactly 2");
    Int disc = f[1] * f[1] - 4 * f[2] * f[0];
    if (disc.is_zero())
        throw std::invalid_argument("degenerate quadratic (square)");
    Int abs_disc = abs(disc);
    Int square_root = sqrt(abs_disc);
    if (square_root * square_root == abs_disc && disc > 0)
        throw std::invalid_argument("reducible quadratic (square discriminant)");
    Int core(1);
    Int rest = abs_disc;
    for (int64_t d = 2; d <= 1000000 && Int(d) * d <= rest; ++d) {
        int count = 0;
        while (rest % d == 0) {
            rest /= d;
            ++count;
        }
        if (count % 2 == 1) core *= d;
    }
    if (rest > 1) {
        Int s = sqrt(rest);
        if (s * s != rest) core *= rest; // p or pq with p,q beyond trial range
    }
    return disc < 0 ? -core : core;
}

} // namespace maassclass

#endif
