#ifndef MAASSCLASS_CLASSPOLY_HPP
#define MAASSCLASS_CLASSPOLY_HPP

// Assembly of class polynomials from CM values of raised forms, and
// recognition of their exact rational coefficients. Conjugate forms
// [a,b,c] / [a,-b,c] contribute complex-conjugate roots, so each pair is
// multiplied into a real quadratic before anything else; only one member of
// each pair is ever evaluated.

#include "evaluator.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "qseries.hpp"
#include "quadforms.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maassclass {

struct RecognitionError : std::runtime_error {
    RecognitionError(const std::string& what, size_t index, const Real& dist)
        : std::runtime_error(what), coefficient_index(index), distance(dist) {}
    size_t coefficient_index;
    Real distance;
};

struct ImaginaryResidueTooLarge : RecognitionError {
    ImaginaryResidueTooLarge(size_t index, const Real& imag)
        : RecognitionError("imaginary residue " + real_str(imag, 6) +
                               " on coefficient " + std::to_string(index) +
                               " exceeds tolerance (insufficient precision or "
                               "truncation order)",
                           index, imag) {}
};

struct NoCloseRational : RecognitionError {
    NoCloseRational(size_t index, const Real& dist)
        : RecognitionError("no rational within tolerance of coefficient " +
                               std::to_string(index) + " (distance " +
                               real_str(dist, 6) +
                               "; insufficient precision or truncation order)",
                           index, dist) {}
};

struct ClassPolyConfig {
    EvalConfig eval;
    double im_tol = 1e-20;
    double round_tol = 1e-20;
    Int denom_bound = Int(1000000000000LL); // 1e12
    unsigned threads = 1;
};

// Monic polynomial with (near-real) complex coefficients, plus bookkeeping
// the recognizer needs: per-coefficient error estimates and the largest
// imaginary part encountered while the roots were assembled.
struct ComplexPolynomial {
    std::vector<Complex> coeffs; // ascending; back() == 1
    std::vector<Real> err;
    Real max_root_imag = Real(0);

    size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

struct RecognitionReport {
    Real max_imag = Real(0);
    Real max_distance = Real(0);
    Int denom_bound = Int(0);
};

struct RationalPolynomial {
    std::vector<Rational> coeffs; // ascending; monic
    RecognitionReport report;

    size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    friend RationalPolynomial operator*(const RationalPolynomial& f,
                                        const RationalPolynomial& g) {
        RationalPolynomial r;
        r.coeffs.assign(f.coeffs.size() + g.coeffs.size() - 1, Rational(0));
        for (size_t i = 0; i < f.coeffs.size(); ++i)
            for (size_t j = 0; j < g.coeffs.size(); ++j)
                r.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
        return r;
    }

    bool operator==(const RationalPolynomial& o) const {
        return coeffs == o.coeffs;
    }

    std::string str(const std::string& var = "x") const {
        if (coeffs.empty()) return "0";
        std::string out;
        for (size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i].is_zero()) continue;
            Rational c = coeffs[i];
            if (!out.empty()) {
                out += c < 0 ? " - " : " + ";
                if (c < 0) c = -c;
            }
            bool unit = (c == 1) && i > 0;
            if (!unit) out += c.str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }
};

namespace detail {

// Real polynomial with error tracking; enough for sequential root assembly.
struct RealPoly {
    std::vector<Real> c;
    std::vector<Real> e;

    static RealPoly one() { return {{Real(1)}, {Real(0)}}; }

    friend RealPoly operator*(const RealPoly& f, const RealPoly& g) {
        RealPoly r;
        r.c.assign(f.c.size() + g.c.size() - 1, Real(0));
        r.e.assign(r.c.size(), Real(0));
        for (size_t i = 0; i < f.c.size(); ++i)
            for (size_t j = 0; j < g.c.size(); ++j) {
                r.c[i + j] += f.c[i] * g.c[j];
                r.e[i + j] += abs(f.c[i]) * g.e[j] + f.e[i] * abs(g.c[j]) +
                              f.e[i] * g.e[j];
            }
        return r;
    }
};

struct RootGroup {
    QuadForm representative; // b >= 0
    bool self_paired = false;
};

// Reduced primitive forms grouped by (a, |b|, c); one evaluation per group.
inline std::vector<RootGroup> conjugate_groups(const Discriminant& D) {
    std::vector<QuadForm> forms = primitive_subset(enumerate_reduced(D));
    std::vector<RootGroup> groups;
    for (const QuadForm& q : forms) {
        if (q.b < 0) continue; // handled with its conjugate
        bool self = (q.b == 0) || (q.b == q.a) || (q.a == q.c);
        groups.push_back({q, self});
    }
    std::sort(groups.begin(), groups.end(),
              [](const RootGroup& l, const RootGroup& r) {
                  return std::tuple(l.representative.a, l.representative.b,
                                    l.representative.c) <
                         std::tuple(r.representative.a, r.representative.b,
                                    r.representative.c);
              });
    return groups;
}

} // namespace detail

// Monic polynomial of degree h(D) with roots P_F(tau_Q) over the primitive
// reduced forms of discriminant D. k = 0 evaluates F itself (no raising).
inline ComplexPolynomial build_hhat(const Discriminant& D, const QSeries& F,
                                    int k, const ClassPolyConfig& cfg) {
    cfg.eval.validate();
    if (k > 0) {
        PrincipalPart p = principal_part(F); // throws if holomorphic
        (void)p;
    }
    PrecisionScope scope(cfg.eval.precision);
    std::vector<detail::RootGroup> groups = detail::conjugate_groups(D);
    std::vector<RaisedValue> values(groups.size());
    // Root values follow the standard raising normalization (2i d/dtau + l/v,
    // scaled); iterating the operator in the form D - l/(4 pi v) produces
    // (-1)^k times these values. The class polynomial literature and the
    // reference numerics use the standard sign, so that is what is rooted.
    Real sign(k % 2 == 0 ? 1 : -1);
    parallel_for(groups.size(), cfg.threads, [&](size_t i) {
        CMPoint cm = cm_point(groups[i].representative, cfg.eval.precision);
        values[i] = raise_value(F, k, cm.tau(), cfg.eval);
        values[i].value *= sign;
    });

    ComplexPolynomial out;
    detail::RealPoly acc = detail::RealPoly::one();
    Real max_imag(0);
    for (size_t i = 0; i < groups.size(); ++i) {
        const Complex& p = values[i].value;
        const Real& err = values[i].err_estimate;
        detail::RealPoly factor;
        if (groups[i].self_paired) {
            // boundary form: the root is real; |Im| measures accumulated error
            max_imag = std::max(max_imag, Real(abs(p.im)));
            factor.c = {-p.re, Real(1)};
            factor.e = {err + abs(p.im), Real(0)};
        } else {
            // (x - P)(x - conj P) = x^2 - 2 Re(P) x + |P|^2
            Real two_re = 2 * p.re;
            Real modulus = norm(p);
            factor.c = {modulus, -two_re, Real(1)};
            factor.e = {2 * abs(p) * err + err * err, 2 * err, Real(0)};
        }
        acc = acc * factor;
    }
    out.coeffs.reserve(acc.c.size());
    for (size_t i = 0; i < acc.c.size(); ++i)
        out.coeffs.push_back(Complex(acc.c[i], Real(0)));
    out.err = std::move(acc.e);
    out.max_root_imag = max_imag;
    return out;
}

// Nearest rational with denominator <= max_denom, by continued-fraction
// convergents (with the final capped semiconvergent). Returns the rational
// and its distance from x.
inline std::pair<Rational, Real> nearest_rational(const Real& x,
                                                  const Int& max_denom) {
    if (max_denom < 1) throw std::invalid_argument("denominator bound must be >= 1");
    Int h_prev(0), h_cur(1), k_prev(1), k_cur(0); // p_{-2}/q_{-2}, p_{-1}/q_{-1}
    Real y = x;
    Rational best(0);
    Real best_dist = abs(x);
    bool have = false;
    auto consider = [&](const Int& h, const Int& k) {
        if (k < 1 || k > max_denom) return;
        Rational cand(h, k);
        Real dist = abs(x - to_real(cand));
        if (!have || dist < best_dist) {
            best = cand;
            best_dist = dist;
            have = true;
        }
    };
    for (int iter = 0; iter < 20000; ++iter) {
        Int a = floor_int(y);
        Int h_next = a * h_cur + h_prev;
        Int k_next = a * k_cur + k_prev;
        if (k_next > max_denom) {
            // capped semiconvergent: largest t with k_prev + t*k_cur in bound
            if (k_cur > 0) {
                Int t = (max_denom - k_prev) / k_cur;
                if (t > 0) consider(h_prev + t * h_cur, k_prev + t * k_cur);
            }
            break;
        }
        consider(h_next, k_next);
        Real frac = y - to_real(Rational(a));
        h_prev = h_cur;
        h_cur = h_next;
        k_prev = k_cur;
        k_cur = k_next;
        if (frac.is_zero() || best_dist.is_zero()) break;
        y = 1 / frac;
    }
    return {best, best_dist};
}

// Coefficientwise recognition: reject imaginary residue, then round each
// real part to the nearest bounded-denominator rational. Fails loudly
// rather than rounding across a gap.
inline RationalPolynomial recognize_rational(const ComplexPolynomial& p,
                                             const ClassPolyConfig& cfg) {
    PrecisionScope scope(cfg.eval.precision);
    RationalPolynomial out;
    out.report.max_imag = p.max_root_imag;
    out.report.denom_bound = cfg.denom_bound;
    Real im_tol(cfg.im_tol);
    Real round_tol(cfg.round_tol);
    if (p.max_root_imag > im_tol)
        throw ImaginaryResidueTooLarge(p.degree(), p.max_root_imag);
    out.coeffs.reserve(p.coeffs.size());
    for (size_t i = 0; i < p.coeffs.size(); ++i) {
        Real imag = abs(p.coeffs[i].im);
        out.report.max_imag = std::max(out.report.max_imag, imag);
        if (imag > im_tol) throw ImaginaryResidueTooLarge(i, imag);
        if (i + 1 == p.coeffs.size()) { // monic by construction
            out.coeffs.push_back(Rational(1));
            break;
        }
        auto [value, dist] = nearest_rational(p.coeffs[i].re, cfg.denom_bound);
        if (dist > round_tol) throw NoCloseRational(i, dist);
        out.report.max_distance = std::max(out.report.max_distance, dist);
        out.coeffs.push_back(std::move(value));
    }
    return out;
}

using EpsilonMap = std::function<int(int64_t)>;

inline int epsilon_one(int64_t) { return 1; }

// The documented alternative reading of the printed sign rule: +1 iff
// a = +-1 mod 12.
inline int epsilon_mod12(int64_t a) {
    int64_t r = ((a % 12) + 12) % 12;
    return (r == 1 || r == 11) ? 1 : -1;
}

// H_{D,F}(x) = prod over a^2 | D of eps(a)^{h(D/a^2)} Hhat_{D/a^2,F}(eps(a) x).
inline RationalPolynomial assemble_full(const Discriminant& D, const QSeries& F,
                                        int k, const ClassPolyConfig& cfg,
                                        const EpsilonMap& epsilon = epsilon_one) {
    RationalPolynomial acc;
    acc.coeffs = {Rational(1)};
    acc.report.denom_bound = cfg.denom_bound;
    for (const auto& [a, quotient] : divisor_decomposition(D)) {
        RationalPolynomial part =
            recognize_rational(build_hhat(quotient, F, k, cfg), cfg);
        int eps = epsilon(a);
        if (eps != 1 && eps != -1)
            throw std::invalid_argument("epsilon map must take values +-1");
        if (eps == -1) {
            size_t h = part.degree();
            for (size_t i = 0; i < part.coeffs.size(); ++i)
                if ((h - i) % 2 == 1) part.coeffs[i] = -part.coeffs[i];
        }
        acc.report.max_imag = std::max(acc.report.max_imag, part.report.max_imag);
        acc.report.max_distance =
            std::max(acc.report.max_distance, part.report.max_distance);
        acc = acc * part;
        acc.report.denom_bound = cfg.denom_bound;
    }
    return acc;
}

// Hilbert class polynomial: the k = 0 path applied to Klein j.
inline RationalPolynomial hilbert_class_poly(const Discriminant& D,
                                             const ClassPolyConfig& cfg) {
    QSeries j = j_function(cfg.eval.trunc);
    return recognize_rational(build_hhat(D, j, 0, cfg), cfg);
}

} // namespace maassclass

#endif
