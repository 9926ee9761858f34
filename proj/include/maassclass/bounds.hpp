#ifndef MAASSCLASS_BOUNDS_HPP
#define MAASSCLASS_BOUNDS_HPP

// Explicit irreducibility criteria for class polynomials of raised forms.
// The five constants B0..B4 are kept in their exact defining form; the
// simplified numeric majorants (1064 m^{1+2k} and friends) are only used as
// cross-checks in the tests. All arithmetic runs at >= 64 decimal digits.

#include "numeric.hpp"
#include "qseries.hpp" // exact Bernoulli numbers for the zeta tail
#include "quadforms.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace maassclass {

inline Real pochhammer(const Real& a, unsigned n) {
    Real acc(1);
    for (unsigned i = 0; i < n; ++i) acc *= a + static_cast<int>(i);
    return acc;
}

inline Int factorial_int(unsigned n) {
    Int acc(1);
    for (unsigned i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// zeta(s) for integer s >= 2 by Euler-Maclaurin summation: direct sum to M,
// integral tail, and Bernoulli correction terms until they fall below the
// precision target. The remainder is bounded by the first omitted term.
// Values are cached; bound sweeps ask for the same (s, precision) thousands
// of times.
inline Real zeta_int(unsigned s, unsigned precision_bits = 256) {
    if (s < 2) throw std::invalid_argument("zeta_int requires s >= 2");
    static std::map<std::pair<unsigned, unsigned>, Real> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({s, precision_bits});
        if (it != cache.end()) return it->second;
    }
    PrecisionScope scope(precision_bits + 16);
    unsigned M = 16 + precision_bits / 8;
    Real sum(0);
    for (unsigned n = 1; n < M; ++n) sum += 1 / pow_si(Real(n), s);
    Real Mr(M);
    sum += pow_si(Mr, 1 - static_cast<long>(s)) / (static_cast<long>(s) - 1);
    sum += pow_si(Mr, -static_cast<long>(s)) / 2;
    Real target = ldexp(Real(1), -static_cast<int>(precision_bits) - 8);
    for (unsigned j = 1; j < 512; ++j) {
        Rational b = bernoulli(2 * j);
        Real term = to_real(b / Rational(factorial_int(2 * j))) *
                    pochhammer(Real(s), 2 * j - 1) *
                    pow_si(Mr, 1 - static_cast<long>(s) - 2 * static_cast<long>(j));
        sum += term;
        if (abs(term) < target) {
            std::lock_guard<std::mutex> lock(mutex);
            cache.insert({{s, precision_bits}, sum});
            return sum;
        }
    }
    throw std::domain_error("zeta_int did not converge");
}

namespace detail {
// every criterion runs at >= 64 decimal digits regardless of the request
inline unsigned bound_bits(unsigned requested) {
    return std::max(requested, 216u);
}
} // namespace detail

struct BoundInputs {
    int k = 1;               // raising depth, weight -2k
    int64_t m = 1;           // pole order
    std::vector<Rational> a; // a[n-1] = a_n, a_m != 0
    int64_t D = -20;         // fundamental discriminant
    double c = 1.5;          // corollary parameter, > 1

    void validate() const {
        if (k < 1) throw std::invalid_argument("k must be >= 1");
        if (m < 1 || static_cast<int64_t>(a.size()) != m)
            throw std::invalid_argument("principal part must have m coefficients");
        if (a.back().is_zero()) throw std::invalid_argument("a_m must be nonzero");
        Discriminant disc(D);
        if (!disc.is_fundamental())
            throw std::invalid_argument("D must be a fundamental discriminant");
    }
};

struct BConstants {
    Real b0, b1, b2, b3, b4;
    Real total() const { return b0 + b1 + b2 + b3 + b4; }
};

inline BConstants b_constants(int k, int64_t m, int64_t D,
                              unsigned precision_bits = 256) {
    precision_bits = detail::bound_bits(precision_bits);
    PrecisionScope scope(precision_bits);
    Real pi = real_pi();
    Real sqrt3 = sqrt(Real(3));
    Real mr(m);
    Real zeta = zeta_int(static_cast<unsigned>(1 + 2 * k), precision_bits);
    Real fact = Real(factorial_int(static_cast<unsigned>(1 + 2 * k)));
    Real sqrtD = sqrt(Real(-D));

    BConstants b;
    b.b0 = pow_si(Real(2), 3 + 2 * k) * pow_si(pi, 2 + 2 * k) *
           pow_si(mr, 1 + 2 * k) * zeta / fact;
    b.b1 = 24 * pi * sqrt(2 * pi) * pow(mr, Real(k) + Real(3) / 2) *
           pow_si(1 + k / (sqrt3 * pi), k) * exp(4 * pi * mr / sqrt3);
    Real geo = exp(-sqrt3 * pi / 2);
    b.b2 = pow_si(Real(2), 4 + 2 * k) * pow_si(pi, 2 + 2 * k) *
           pow_si(mr, 1 + 2 * k) * zeta / fact *
           pow_si(2 * k / (sqrt3 * pi), k) * exp(Real(-k) / 2) * geo / (1 - geo);
    Real shape = pow_si(mr + k / (sqrt3 * pi), k);
    b.b3 = shape * exp(sqrtD * pi * (mr - 1));
    b.b4 = shape * exp(sqrtD * pi * mr / 2);
    return b;
}

// |sum_{r=0}^k C(k,r) (-2k+r)_{k-r} m^r / (2 sqrt(-D) pi)^{k-r}|, the
// size of the raised leading term at the a=1 CM point.
inline Real pochhammer_sum(int k, int64_t m, int64_t D,
                           unsigned precision_bits = 256) {
    precision_bits = detail::bound_bits(precision_bits);
    PrecisionScope scope(precision_bits);
    Real pi = real_pi();
    Real denom_base = 2 * sqrt(Real(-D)) * pi;
    Real acc(0);
    for (int r = 0; r <= k; ++r) {
        Real term = Real(binomial_i64(k, r) * pochhammer_i64(-2 * k + r, k - r));
        term *= pow_si(Real(m), r);
        term /= pow_si(denom_base, k - r);
        acc += term;
    }
    return abs(acc);
}

struct TheoremResult {
    Real rhs;
    Real pochhammer_sum_value;
    bool applicable = true; // false when the Pochhammer sum vanishes
    bool guaranteed = false;
};

// Theorem criterion: irreducibility is guaranteed when
//   sqrt(-D) > (2/pi) log( B * sum|a_n| / (|a_m| S) * e^{-sqrt(-D) pi (m-1/2)} ).
// Evaluated in log form; the inequality has sqrt(-D) on both sides, so this
// is a predicate at the given D, not a solved threshold.
inline TheoremResult theorem_criterion(const BoundInputs& in,
                                       unsigned precision_bits = 256) {
    in.validate();
    precision_bits = detail::bound_bits(precision_bits);
    PrecisionScope scope(precision_bits);
    Real pi = real_pi();
    Real sqrtD = sqrt(Real(-in.D));
    Real S = pochhammer_sum(in.k, in.m, in.D, precision_bits);
    TheoremResult res{Real(0), S, true, false};
    Real floor_s = ldexp(Real(1), -static_cast<int>(precision_bits) / 2);
    if (S < floor_s) {
        res.applicable = false;
        return res;
    }
    Real sum_abs(0);
    for (const auto& an : in.a) sum_abs += abs(to_real(an));
    Real am = abs(to_real(in.a.back()));
    Real B = b_constants(in.k, in.m, in.D, precision_bits).total();
    Real log_arg = log(B * sum_abs / (am * S)) -
                   sqrtD * pi * (Real(in.m) - Real(1) / 2);
    res.rhs = 2 / pi * log_arg;
    res.guaranteed = sqrtD > res.rhs;
    return res;
}

struct CorollaryResult {
    Real rhs1;
    Real rhs2;
    bool guaranteed = false;
};

// Corollary criterion with free parameter c > 1:
//   rhs1 = k / (m pi (((2c-1)/c)^{1/k} - 1))
//   rhs2 = (2/pi) log(615 c m^{1+k} (m + k/(sqrt3 pi))^k sum|a_n| / |a_m|)
inline CorollaryResult corollary_criterion(const BoundInputs& in,
                                           unsigned precision_bits = 256) {
    in.validate();
    if (!(in.c > 1)) throw std::invalid_argument("corollary parameter c must be > 1");
    precision_bits = detail::bound_bits(precision_bits);
    PrecisionScope scope(precision_bits);
    Real pi = real_pi();
    Real sqrt3 = sqrt(Real(3));
    Real c(in.c);
    Real mr(in.m);
    CorollaryResult res;
    Real root = pow((2 * c - 1) / c, 1 / Real(in.k));
    res.rhs1 = in.k / (mr * pi * (root - 1));
    Real sum_abs(0);
    for (const auto& an : in.a) sum_abs += abs(to_real(an));
    Real am = abs(to_real(in.a.back()));
    res.rhs2 = 2 / pi *
               log(615 * c * pow_si(mr, 1 + in.k) *
                   pow_si(mr + in.k / (sqrt3 * pi), in.k) * sum_abs / am);
    res.guaranteed = sqrt(Real(-in.D)) > std::max(res.rhs1, res.rhs2);
    return res;
}

struct BoundReport {
    BoundInputs inputs;
    BConstants constants;
    Real B;
    Real pochhammer_sum_value;
    Real sqrt_minus_d;
    TheoremResult theorem;
    CorollaryResult corollary;
};

inline BoundReport bound_report(const BoundInputs& in,
                                unsigned precision_bits = 256) {
    in.validate();
    precision_bits = detail::bound_bits(precision_bits);
    PrecisionScope scope(precision_bits);
    BoundReport rep{in,
                    b_constants(in.k, in.m, in.D, precision_bits),
                    Real(0),
                    pochhammer_sum(in.k, in.m, in.D, precision_bits),
                    sqrt(Real(-in.D)),
                    theorem_criterion(in, precision_bits),
                    corollary_criterion(in, precision_bits)};
    rep.B = rep.constants.total();
    return rep;
}

// Simple 1-D grid search for the corollary parameter: rhs1 falls and rhs2
// grows in c, so max(rhs1, rhs2) is minimized near their crossing. Returns
// the best c found and the threshold there.
inline std::pair<double, Real> optimize_c(BoundInputs in, double c_lo = 1.001,
                                          double c_hi = 64.0,
                                          unsigned precision_bits = 256) {
    if (!(c_lo > 1) || !(c_hi > c_lo))
        throw std::invalid_argument("need 1 < c_lo < c_hi");
    PrecisionScope scope(detail::bound_bits(precision_bits));
    auto threshold = [&](double c) {
        in.c = c;
        CorollaryResult r = corollary_criterion(in, precision_bits);
        return std::max(r.rhs1, r.rhs2);
    };
    double best_c = c_lo;
    Real best = threshold(c_lo);
    double lo = c_lo, hi = c_hi;
    for (int round = 0; round < 24; ++round) {
        double step = (hi - lo) / 16;
        for (int i = 0; i <= 16; ++i) {
            double c = lo + step * i;
            Real t = threshold(c);
            if (t < best) {
                best = t;
                best_c = c;
            }
        }
        lo = std::max(c_lo, best_c - step);
        hi = std::min(c_hi, best_c + step);
        if (step < 1e-9) break;
    }
    return {best_c, best};
}

// Smallest |D0| such that every tested fundamental discriminant with
// |D| >= |D0| (down to dmin) satisfies the theorem criterion.
inline std::optional<int64_t> theorem_takeover(BoundInputs in, int64_t dmin,
                                               unsigned precision_bits = 256) {
    std::optional<int64_t> candidate;
    for (int64_t D = -3; D >= dmin; --D) {
        if (mod4(D) != 0 && mod4(D) != 1) continue;
        Discriminant disc(D);
        if (!disc.is_fundamental()) continue;
        in.D = D;
        TheoremResult r = theorem_criterion(in, precision_bits);
        if (r.applicable && r.guaranteed) {
            if (!candidate) candidate = D;
        } else {
            candidate.reset();
        }
    }
    return candidate;
}

} // namespace maassclass

#endif
