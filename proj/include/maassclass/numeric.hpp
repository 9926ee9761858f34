#ifndef MAASSCLASS_NUMERIC_HPP
#define MAASSCLASS_NUMERIC_HPP

// Arbitrary-precision number types shared by every module. Exact integer and
// rational arithmetic comes from GMP, real arithmetic from MPFR, both through
// Boost.Multiprecision. Complex values are a thin pair-of-reals wrapper since
// std::complex is not usable with variable-precision backends.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/math/constants/constants.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace maassclass {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float; // variable precision

inline unsigned digits10_from_bits(unsigned bits) {
    // ceil(bits * log10(2)) plus a small guard
    return static_cast<unsigned>(bits * 0.30102999566398) + 4;
}

// Sets the process-wide default MPFR precision for the lifetime of the scope.
// Boost 1.74's default_precision is global, not thread-local, so precision
// changes must happen before workers fan out. Re-opening a scope at the
// precision already in force is a no-op, which is what makes nested calls
// inside parallel regions safe.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits)
        : saved_(Real::default_precision()),
          changed_(digits10_from_bits(bits) != saved_) {
        if (changed_) Real::default_precision(digits10_from_bits(bits));
    }
    ~PrecisionScope() {
        if (changed_) Real::default_precision(saved_);
    }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
    bool changed_;
};

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

inline Real to_real(const Rational& q) { return Real(q); }

inline Int floor_int(const Real& x) {
    return Int(floor(x).convert_to<Int>());
}

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const Real& r) : re(r), im(0) {}
    explicit Complex(long r) : re(r), im(0) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }

inline Complex operator/(const Complex& a, const Complex& b) {
    Real n = norm(b);
    if (n.is_zero()) throw std::domain_error("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

inline Complex operator/(const Complex& a, const Real& s) {
    return {a.re / s, a.im / s};
}

inline Complex cis(const Real& t) { return {cos(t), sin(t)}; }

// exp(2*pi*i*tau) for tau = u + iv; |q| = exp(-2*pi*v)
inline Complex exp_2pi_i(const Complex& tau) {
    Real two_pi = 2 * real_pi();
    Real mag = exp(-two_pi * tau.im);
    Complex phase = cis(two_pi * tau.re);
    return phase * mag;
}

inline Real pow_si(const Real& x, long e) {
    if (e >= 0) return pow(x, static_cast<unsigned long>(e));
    return 1 / pow(x, static_cast<unsigned long>(-e));
}

// Decimal string with explicit digit count; used for all user-facing output
// so logs stay diffable across platforms.
inline std::string real_str(const Real& x, unsigned digits10 = 20) {
    return x.str(digits10);
}

inline int64_t binomial_i64(int64_t n, int64_t r) {
    if (r < 0 || r > n) return 0;
    int64_t acc = 1;
    for (int64_t i = 0; i < r; ++i) acc = acc * (n - i) / (i + 1);
    return acc;
}

// Rising factorial (a)_n = a (a+1) ... (a+n-1), exact in integers.
inline int64_t pochhammer_i64(int64_t a, int64_t n) {
    int64_t acc = 1;
    for (int64_t i = 0; i < n; ++i) acc *= a + i;
    return acc;
}

} // namespace maassclass

#endif
