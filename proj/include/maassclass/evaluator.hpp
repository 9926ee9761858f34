#ifndef MAASSCLASS_EVALUATOR_HPP
#define MAASSCLASS_EVALUATOR_HPP

// Numerical evaluation of q-expansions on the upper half plane and of the
// weight-0 value obtained by applying the raising operator
// R_l = D - l/(4 pi v) to a weight -2k form k times:
//
//   P_F(tau) = sum_{r=0}^{k} (-1)^{k-r} C(k,r) (-2k+r)_{k-r}
//              (4 pi v)^{r-k} D^r F(tau).
//
// The equivalent published closed form carries an unsigned Pochhammer factor
// that already fails against direct iteration at k=1; the signed variant
// above is the one that matches iterating R_l and is what we evaluate. A
// symbolic-iteration cross-check lives in the test suite.

#include "numeric.hpp"
#include "qseries.hpp"

#include <cstdint>
#include <stdexcept>

namespace maassclass {

struct EvalConfig {
    unsigned precision = 192; // bits; >= 64 for production use, hard floor 32
    int64_t trunc = 128;      // series truncation order N
    double tail_tol = 1e-20;

    void validate() const {
        if (precision < 32)
            throw std::invalid_argument("precision below 32-bit floor");
        if (trunc < 1) throw std::invalid_argument("truncation order must be >= 1");
        if (!(tail_tol > 0)) throw std::invalid_argument("tail_tol must be positive");
    }
};

namespace detail {
inline void require_upper_half(const Complex& tau) {
    if (!(tau.im > 0))
        throw std::invalid_argument("evaluation point must have Im tau > 0");
}
} // namespace detail

// Horner sum of f at tau: q^valuation * sum c_n q^(n-valuation), q = e^{2 pi i tau}.
inline Complex eval_qseries(const QSeries& f, const Complex& tau,
                            const EvalConfig& cfg) {
    cfg.validate();
    detail::require_upper_half(tau);
    PrecisionScope scope(cfg.precision);
    if (f.is_zero()) return Complex(Real(0), Real(0));
    Complex q = exp_2pi_i(tau);
    Complex acc(to_real(f.coeff(f.trunc_order())), Real(0));
    for (int64_t n = f.trunc_order() - 1; n >= f.valuation(); --n) {
        acc *= q;
        acc.re += to_real(f.coeff(n));
    }
    // q^valuation computed as exp(2 pi i v tau); exact for negative valuations
    if (f.valuation() != 0) {
        Complex vtau{tau.re * f.valuation(), tau.im * f.valuation()};
        acc *= exp_2pi_i(vtau);
    }
    return acc;
}

// Value of D^r f with D = q d/dq, i.e. sum n^r c_n q^n.
inline Complex eval_deriv_series(const QSeries& f, unsigned r, const Complex& tau,
                                 const EvalConfig& cfg) {
    QSeries g = f;
    for (unsigned i = 0; i < r; ++i) g = q_derivative(g);
    return eval_qseries(g, tau, cfg);
}

struct RaisedValue {
    Complex value;
    Real err_estimate; // heuristic dropped-tail magnitude, see below
    int k = 0;
    Complex at;
};

// Heuristic q-tail of the raised sum: coefficients of a pole-order-m form
// grow like e^{4 pi sqrt(mn)} and the raising polynomial contributes at most
// (n + 2k)^k at v >= sqrt(3)/2, so the first dropped term dominates.
inline Real raising_tail_estimate(int64_t m, int k, int64_t trunc, const Real& v) {
    Real n = Real(trunc + 1);
    Real pi = real_pi();
    Real log_term = 4 * pi * sqrt(Real(m) * n) - 2 * pi * v * n +
                    k * log(n + 2 * k);
    return 2 * exp(log_term);
}

inline RaisedValue raise_value(const QSeries& F, int k, const Complex& tau,
                               const EvalConfig& cfg, bool check_weight = true) {
    cfg.validate();
    detail::require_upper_half(tau);
    if (k < 0) throw std::invalid_argument("raising depth k must be >= 0");
    if (check_weight && !F.is_zero() && F.weight() != -2 * k)
        throw std::invalid_argument("series weight " + std::to_string(F.weight()) +
                                    " does not match raising depth k=" +
                                    std::to_string(k));
    PrecisionScope scope(cfg.precision);
    Complex total(Real(0), Real(0));
    Real four_pi_v = 4 * real_pi() * tau.im;
    QSeries deriv = F; // D^r F, advanced in the loop
    for (int r = 0; r <= k; ++r) {
        int64_t sign = ((k - r) % 2 == 0) ? 1 : -1;
        int64_t factor =
            sign * binomial_i64(k, r) * pochhammer_i64(-2 * k + r, k - r);
        if (factor != 0) {
            Complex term = eval_qseries(deriv, tau, cfg);
            term *= pow_si(four_pi_v, static_cast<long>(r) - k) * factor;
            total += term;
        }
        if (r < k) deriv = q_derivative(deriv);
    }
    int64_t m = (!F.is_zero() && F.valuation() < 0) ? -F.valuation() : 1;
    Real err = raising_tail_estimate(m, k, F.trunc_order(), tau.im);
    return {total, err, k, tau};
}

// E2^*(tau) = E2(tau) - 3/(pi v), the weight-2 almost holomorphic Eisenstein
// series.
inline Complex eval_e2star(const Complex& tau, const EvalConfig& cfg) {
    cfg.validate();
    detail::require_upper_half(tau);
    PrecisionScope scope(cfg.precision);
    Complex e2 = eval_qseries(eisenstein(2, cfg.trunc), tau, cfg);
    e2.re -= 3 / (real_pi() * tau.im);
    return e2;
}

// |P_F(tau) - P_F(-1/tau)| + |P_F(tau) - P_F(tau+1)|; zero (to tail accuracy)
// exactly when the raised value is genuinely weight 0.
inline Real modularity_residual(const QSeries& F, int k, const Complex& tau,
                                const EvalConfig& cfg, bool check_weight = true) {
    cfg.validate();
    detail::require_upper_half(tau);
    PrecisionScope scope(cfg.precision);
    Complex at = raise_value(F, k, tau, cfg, check_weight).value;
    Complex minus_inv = Complex(Real(-1), Real(0)) / tau;
    Complex at_s = raise_value(F, k, minus_inv, cfg, check_weight).value;
    Complex at_t =
        raise_value(F, k, {tau.re + 1, tau.im}, cfg, check_weight).value;
    return abs(at - at_s) + abs(at - at_t);
}

// Standard fundamental domain reduction by T/S moves; the value of a
// weight-0 invariant is unchanged. Returns the mapped point.
inline Complex to_fundamental_domain(Complex tau) {
    detail::require_upper_half(tau);
    for (int guard = 0; guard < 4096; ++guard) {
        Real shift = floor(tau.re + Real(1) / 2);
        if (!shift.is_zero()) tau.re -= shift;
        if (norm(tau) < 1) {
            tau = Complex(Real(-1), Real(0)) / tau;
            continue;
        }
        return tau;
    }
    throw std::domain_error("fundamental domain reduction did not terminate");
}

// Smallest N with e^{4 pi sqrt(mN)} e^{-sqrt(3) pi N} below tol (the tail
// model at the fundamental-domain floor v = sqrt(3)/2).
inline int64_t suggest_trunc_order(int64_t m, double tol) {
    if (m < 1 || !(tol > 0)) throw std::invalid_argument("bad tail model inputs");
    double log_tol = std::log(tol);
    for (int64_t n = 1; n < 2000000; ++n) {
        double pi = 3.14159265358979323846;
        if (4 * pi * std::sqrt(double(m) * double(n)) -
                std::sqrt(3.0) * pi * double(n) <
            log_tol)
            return n;
    }
    throw std::domain_error("tail tolerance unreachable");
}

} // namespace maassclass

#endif
