#ifndef MAASSCLASS_QSERIES_HPP
#define MAASSCLASS_QSERIES_HPP

// Truncated Laurent q-expansions with exact rational coefficients and a
// weight tag. Every series carries an explicit truncation order; arithmetic
// never pretends to know coefficients past what the operands support.

#include "numeric.hpp"

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maassclass {

struct WeightMismatchError : std::domain_error {
    WeightMismatchError(int lhs, int rhs)
        : std::domain_error("cannot add q-series of weight " +
                            std::to_string(lhs) + " and weight " +
                            std::to_string(rhs)),
          lhs_weight(lhs), rhs_weight(rhs) {}
    int lhs_weight;
    int rhs_weight;
};

struct NoPrincipalPartError : std::domain_error {
    NoPrincipalPartError()
        : std::domain_error("q-series is holomorphic at the cusp; "
                            "a pole of order m >= 1 is required") {}
};

class QSeries {
public:
    // zero series, all coefficients known-zero up to trunc_order
    QSeries(int weight, int64_t trunc_order)
        : valuation_(0), trunc_order_(trunc_order), weight_(weight) {}

    QSeries(int64_t valuation, std::vector<Rational> coeffs, int64_t trunc_order,
            int weight)
        : valuation_(valuation), coeffs_(std::move(coeffs)),
          trunc_order_(trunc_order), weight_(weight) {
        if (!coeffs_.empty() &&
            valuation_ + static_cast<int64_t>(coeffs_.size()) - 1 != trunc_order_)
            throw std::invalid_argument("coefficient count disagrees with range");
        trim();
    }

    static QSeries constant(const Rational& c, int64_t trunc_order) {
        if (trunc_order < 0)
            throw std::invalid_argument("constant series needs order >= 0");
        std::vector<Rational> v(static_cast<size_t>(trunc_order) + 1, Rational(0));
        v[0] = c;
        return QSeries(0, std::move(v), trunc_order, 0);
    }

    static QSeries monomial(const Rational& c, int64_t exponent, int weight,
                            int64_t trunc_order) {
        if (trunc_order < exponent)
            throw std::invalid_argument("monomial beyond its truncation order");
        std::vector<Rational> v(static_cast<size_t>(trunc_order - exponent) + 1,
                                Rational(0));
        v[0] = c;
        return QSeries(exponent, std::move(v), trunc_order, weight);
    }

    bool is_zero() const { return coeffs_.empty(); }
    int64_t valuation() const { return valuation_; }
    int64_t trunc_order() const { return trunc_order_; }
    int weight() const { return weight_; }

    // Coefficient of q^n. Exponents below the valuation are zero; exponents
    // beyond the truncation order are unknown and asking for one is a bug.
    const Rational& coeff(int64_t n) const {
        static const Rational zero(0);
        if (n > trunc_order_)
            throw std::out_of_range("coefficient beyond truncation order");
        if (is_zero() || n < valuation_) return zero;
        return coeffs_[static_cast<size_t>(n - valuation_)];
    }

    QSeries truncate(int64_t new_order) const {
        if (new_order >= trunc_order_) return *this;
        if (is_zero() || new_order < valuation_) return QSeries(weight_, new_order);
        std::vector<Rational> v(coeffs_.begin(),
                                coeffs_.begin() + (new_order - valuation_ + 1));
        return QSeries(valuation_, std::move(v), new_order, weight_);
    }

    QSeries operator-() const {
        QSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend QSeries operator+(const QSeries& f, const QSeries& g) {
        if (!f.is_zero() && !g.is_zero() && f.weight_ != g.weight_)
            throw WeightMismatchError(f.weight_, g.weight_);
        int weight = f.is_zero() ? g.weight_ : f.weight_;
        int64_t order = std::min(f.trunc_order_, g.trunc_order_);
        if (f.is_zero()) return g.truncate(order);
        if (g.is_zero()) return f.truncate(order);
        int64_t val = std::min(f.valuation_, g.valuation_);
        std::vector<Rational> v(static_cast<size_t>(order - val) + 1, Rational(0));
        for (int64_t n = val; n <= order; ++n)
            v[static_cast<size_t>(n - val)] =
                (n <= f.trunc_order_ ? f.coeff(n) : Rational(0)) +
                (n <= g.trunc_order_ ? g.coeff(n) : Rational(0));
        return QSeries(val, std::move(v), order, weight);
    }

    friend QSeries operator-(const QSeries& f, const QSeries& g) { return f + (-g); }

    friend QSeries operator*(const QSeries& f, const QSeries& g) {
        int weight = f.weight_ + g.weight_;
        if (f.is_zero() || g.is_zero())
            return QSeries(weight, std::min(f.trunc_order_, g.trunc_order_));
        int64_t val = f.valuation_ + g.valuation_;
        int64_t order =
            std::min(f.trunc_order_ + g.valuation_, g.trunc_order_ + f.valuation_);
        std::vector<Rational> v(static_cast<size_t>(order - val) + 1, Rational(0));
        for (size_t i = 0; i < f.coeffs_.size(); ++i) {
            if (f.coeffs_[i].is_zero()) continue;
            int64_t nf = f.valuation_ + static_cast<int64_t>(i);
            for (size_t j = 0; j < g.coeffs_.size(); ++j) {
                int64_t n = nf + g.valuation_ + static_cast<int64_t>(j);
                if (n > order) break;
                v[static_cast<size_t>(n - val)] += f.coeffs_[i] * g.coeffs_[j];
            }
        }
        return QSeries(val, std::move(v), order, weight);
    }

    friend QSeries operator*(const QSeries& f, const Rational& s) {
        if (s.is_zero()) return QSeries(f.weight_, f.trunc_order_);
        QSeries r = f;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }
    friend QSeries operator*(const Rational& s, const QSeries& f) { return f * s; }

    friend bool operator==(const QSeries&, const QSeries&) = default;

private:
    void trim() {
        size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            valuation_ = 0;
        } else if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
            valuation_ += static_cast<int64_t>(lead);
        }
    }

    int64_t valuation_;
    std::vector<Rational> coeffs_;
    int64_t trunc_order_;
    int weight_;
};

// 1/f for f = c q^v (1 + ...): valuation -v, known to relative order
// trunc(f) - v, hence to absolute order trunc(f) - 2v.
inline QSeries invert(const QSeries& f) {
    if (f.is_zero()) throw std::domain_error("cannot invert the zero series");
    int64_t v = f.valuation();
    int64_t rel = f.trunc_order() - v;
    std::vector<Rational> h(static_cast<size_t>(rel) + 1, Rational(0));
    Rational lead_inv = Rational(1) / f.coeff(v);
    h[0] = lead_inv;
    for (int64_t t = 1; t <= rel; ++t) {
        Rational acc(0);
        for (int64_t s = 1; s <= t; ++s)
            acc += f.coeff(v + s) * h[static_cast<size_t>(t - s)];
        h[static_cast<size_t>(t)] = -lead_inv * acc;
    }
    return QSeries(-v, std::move(h), -v + rel, -f.weight());
}

inline QSeries power(const QSeries& f, int64_t e) {
    if (e < 0) return power(invert(f), -e);
    int64_t rel = f.trunc_order() - (f.is_zero() ? 0 : f.valuation());
    QSeries acc = QSeries::constant(Rational(1), rel);
    QSeries base = f;
    for (; e > 0; e >>= 1) {
        if (e & 1) acc = acc * base;
        if (e > 1) base = base * base;
    }
    return acc;
}

// D = q d/dq acting coefficientwise: c_n -> n c_n.
inline QSeries q_derivative(const QSeries& f) {
    if (f.is_zero()) return f;
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(f.trunc_order() - f.valuation()) + 1);
    for (int64_t n = f.valuation(); n <= f.trunc_order(); ++n)
        v.push_back(f.coeff(n) * n);
    return QSeries(f.valuation(), std::move(v), f.trunc_order(), f.weight());
}

inline Rational bernoulli(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        Rational acc(0);
        Int binom(1); // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            acc += Rational(binom) * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        cache.push_back(-acc / Rational(m + 1));
    }
    return cache[n];
}

inline Int sigma_power(int64_t n, unsigned k) {
    Int acc(0);
    for (int64_t d = 1; d <= n; ++d)
        if (n % d == 0) acc += pow(Int(d), k);
    return acc;
}

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
inline QSeries eisenstein(unsigned k, int64_t trunc_order) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("Eisenstein weight must be even and >= 2");
    Rational factor = Rational(-2 * static_cast<int64_t>(k)) / bernoulli(k);
    std::vector<Rational> v(static_cast<size_t>(trunc_order) + 1, Rational(0));
    v[0] = 1;
    for (int64_t n = 1; n <= trunc_order; ++n)
        v[static_cast<size_t>(n)] = factor * Rational(sigma_power(n, k - 1));
    return QSeries(0, std::move(v), trunc_order, static_cast<int>(k));
}

// Delta = q prod_{n>=1} (1 - q^n)^24, weight 12, valuation 1.
inline QSeries delta(int64_t trunc_order) {
    if (trunc_order < 1) throw std::invalid_argument("delta needs order >= 1");
    int64_t rel = trunc_order - 1;
    std::vector<Rational> euler(static_cast<size_t>(rel) + 1, Rational(0));
    euler[0] = 1;
    for (int64_t n = 1; n <= rel; ++n)
        for (int64_t i = rel; i >= n; --i)
            euler[static_cast<size_t>(i)] -= euler[static_cast<size_t>(i - n)];
    QSeries eta24 = power(QSeries(0, std::move(euler), rel, 0), 24);
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(rel) + 1);
    for (int64_t n = 0; n <= rel; ++n) v.push_back(eta24.coeff(n));
    return QSeries(1, std::move(v), trunc_order, 12);
}

// Klein j = E4^3 / Delta, valuation -1, weight 0. Generators are expanded
// two orders deep so the quotient is good through trunc_order.
inline QSeries j_function(int64_t trunc_order) {
    if (trunc_order < 1) throw std::invalid_argument("j needs order >= 1");
    int64_t pad = trunc_order + 2;
    QSeries e4 = eisenstein(4, pad);
    return power(e4, 3) * invert(delta(pad));
}

struct PrincipalPart {
    int64_t m;                // pole order
    std::vector<Rational> a;  // a[n-1] = coefficient of q^{-n}, n = 1..m
};

inline PrincipalPart principal_part(const QSeries& f) {
    if (f.is_zero() || f.valuation() >= 0) throw NoPrincipalPartError();
    PrincipalPart p;
    p.m = -f.valuation();
    p.a.resize(static_cast<size_t>(p.m));
    for (int64_t n = 1; n <= p.m; ++n)
        p.a[static_cast<size_t>(n - 1)] = f.coeff(-n);
    return p;
}

} // namespace maassclass

#endif
