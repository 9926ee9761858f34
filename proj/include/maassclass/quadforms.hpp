#ifndef MAASSCLASS_QUADFORMS_HPP
#define MAASSCLASS_QUADFORMS_HPP

// Integral positive definite binary quadratic forms of negative discriminant:
// validation, Gauss reduction, enumeration of reduced representatives and the
// CM points they define.

#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace maassclass {

inline int64_t floor_div(int64_t x, int64_t y) {
    int64_t q = x / y;
    if ((x % y) != 0 && ((x < 0) != (y < 0))) --q;
    return q;
}

inline int64_t mod4(int64_t x) { return ((x % 4) + 4) % 4; }

inline bool is_squarefree(int64_t n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
    }
    return true;
}

class Discriminant {
public:
    explicit Discriminant(int64_t value) : value_(value) {
        if (value >= 0 || (mod4(value) != 0 && mod4(value) != 1))
            throw std::invalid_argument(
                "discriminant must be negative and 0 or 1 mod 4, got " +
                std::to_string(value));
    }

    int64_t value() const { return value_; }

    bool is_fundamental() const {
        if (mod4(value_) == 1) return is_squarefree(value_);
        int64_t m = value_ / 4;
        int64_t r = mod4(m);
        return (r == 2 || r == 3) && is_squarefree(m);
    }

    friend bool operator==(const Discriminant&, const Discriminant&) = default;

private:
    int64_t value_;
};

struct QuadForm {
    int64_t a = 0;
    int64_t b = 0;
    int64_t c = 0;

    int64_t discriminant() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && discriminant() < 0; }
    bool is_reduced() const {
        return positive_definite() &&
               ((-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c));
    }
    bool is_primitive() const {
        return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) == 1;
    }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

// Gauss reduction: alternate translations b -> b mod 2a into (-a, a] with the
// swap [a,b,c] -> [c,-b,a], then resolve the two boundary ties.
inline QuadForm reduce(QuadForm q) {
    if (!q.positive_definite())
        throw std::invalid_argument("reduce requires a positive definite form");
    for (;;) {
        int64_t t = floor_div(q.b + q.a, 2 * q.a);
        if (t != 0) {
            q.c += (q.a * t - q.b) * t;
            q.b -= 2 * q.a * t;
        }
        if (q.b == -q.a) { // [a,-a,c] ~ [a,a,c]
            q.b = q.a;
        }
        if (q.a > q.c) {
            q = {q.c, -q.b, q.a};
            continue;
        }
        if (q.a == q.c && q.b < 0) q.b = -q.b;
        return q;
    }
}

inline std::vector<QuadForm> enumerate_reduced(const Discriminant& disc) {
    int64_t D = disc.value();
    std::vector<QuadForm> out;
    for (int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            int64_t c = num / (4 * a);
            if (c > a || (c == a && b >= 0)) out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<QuadForm> primitive_subset(std::vector<QuadForm> forms) {
    std::erase_if(forms, [](const QuadForm& q) { return !q.is_primitive(); });
    return forms;
}

inline int class_number(const Discriminant& disc) {
    return static_cast<int>(primitive_subset(enumerate_reduced(disc)).size());
}

struct CMPoint {
    Real re;
    Real im;
    QuadForm source_form;

    Complex tau() const { return {re, im}; }
};

// tau_Q = (-b + i*sqrt(-D)) / (2a), the root of Q(tau, 1) = 0 in the upper
// half plane, at the requested working precision.
inline CMPoint cm_point(const QuadForm& q, unsigned precision_bits) {
    if (!q.positive_definite())
        throw std::invalid_argument("cm_point requires a positive definite form");
    PrecisionScope scope(precision_bits);
    Real re = Real(-q.b) / (2 * q.a);
    Real im = sqrt(Real(-q.discriminant())) / (2 * q.a);
    return {std::move(re), std::move(im), q};
}

// All a > 0 with a^2 | D such that D / a^2 is still a discriminant.
inline std::vector<std::pair<int64_t, Discriminant>>
divisor_decomposition(const Discriminant& disc) {
    int64_t D = disc.value();
    std::vector<std::pair<int64_t, Discriminant>> out;
    for (int64_t a = 1; a * a <= -D; ++a) {
        if (D % (a * a) != 0) continue;
        int64_t q = D / (a * a);
        if (mod4(q) == 0 || mod4(q) == 1) out.emplace_back(a, Discriminant(q));
    }
    return out;
}

} // namespace maassclass

#endif
