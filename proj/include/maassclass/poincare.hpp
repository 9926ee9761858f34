#ifndef MAASSCLASS_POINCARE_HPP
#define MAASSCLASS_POINCARE_HPP

// Desk-scale verification of the Fourier coefficient formulas of the
// weight -2k Maass-Poincare series with principal part q^{-n} (level 1),
// and of the explicit coefficient estimates they satisfy. With the series
// normalized so its principal part is exactly q^{-n}, the holomorphic
// coefficients are
//
//   l > 0:  2 pi (-1)^k l^{-k-1/2} n^{k+1/2}
//             * sum_{c>=1} K(-n,l,c)/c * I_{1+2k}(4 pi sqrt(nl) / c)
//   l = 0:  (-1)^k (2 pi)^{2+2k} n^{1+2k} / (1+2k)!
//             * sum_{c>=1} K(-n,0,c) / c^{2+2k}
//
// (the printed formulas carry a (1-k_w)! both on the left side and in the
// coefficient; it cancels in this normalization, which is the one that
// reproduces the q-expansion of E10/Delta -- that cross-check is a test).
//
// The c-sums are truncated at c_max with no acceleration; Cauchy-style
// self-checks quantify the truncation error empirically. Workloads with
// large c_max run in double precision, which the 1%-scale tolerances and
// the orders-of-magnitude bound margins absorb; an MPFR path backs the
// realness assertions.

#include "bounds.hpp"
#include "numeric.hpp"
#include "parallel.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace maassclass {

// inverse of d mod c (c >= 1, gcd(d, c) = 1), in [0, c)
inline int64_t mod_inverse(int64_t d, int64_t c) {
    int64_t old_r = ((d % c) + c) % c, r = c;
    int64_t old_s = 1, s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1 && c != 1)
        throw std::invalid_argument("mod_inverse of a non-unit");
    return ((old_s % c) + c) % c;
}

// K(m,l,c) = sum over units d mod c of e^{2 pi i (m dbar + l d)/c}. The terms
// pair d with -d, so the imaginary part cancels; it is computed anyway and
// must vanish to roundoff.
inline Real kloosterman(int64_t m, int64_t l, int64_t c,
                        unsigned precision_bits = 128) {
    if (c < 1) throw std::invalid_argument("kloosterman needs c >= 1");
    PrecisionScope scope(precision_bits);
    Real two_pi_over_c = 2 * real_pi() / c;
    Real re(0), im(0);
    for (int64_t d = 1; d <= c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        int64_t dbar = mod_inverse(d, c);
        int64_t r = ((m % c) * dbar + (l % c) * d) % c;
        r = ((r % c) + c) % c;
        Real angle = two_pi_over_c * r;
        re += cos(angle);
        im += sin(angle);
    }
    if (abs(im) > Real(1e-15) * c)
        throw std::domain_error("Kloosterman sum has non-vanishing imaginary part");
    return re;
}

// I_nu(x) by the ascending series with iteratively updated terms (all terms
// positive, no cancellation; the update avoids overflowing (x/2)^(nu+2t)).
template <typename T>
T bessel_i_series(unsigned nu, const T& x, const T& rel_eps) {
    if (x < 0) throw std::invalid_argument("bessel_i requires x >= 0");
    T half_x = x / 2;
    T term(1);
    for (unsigned i = 1; i <= nu; ++i) term *= half_x / static_cast<int>(i);
    T sum = term;
    T x2 = half_x * half_x;
    for (unsigned t = 1; t < 100000; ++t) {
        term *= x2 / (static_cast<int>(t) * static_cast<int>(t + nu));
        sum += term;
        if (term < rel_eps * sum) return sum;
    }
    throw std::domain_error("bessel_i series did not converge");
}

inline Real bessel_i(unsigned nu, const Real& x, unsigned precision_bits = 128) {
    PrecisionScope scope(precision_bits);
    if (x.is_zero()) return Real(nu == 0 ? 1 : 0);
    return bessel_i_series<Real>(nu, x, ldexp(Real(1), -static_cast<int>(precision_bits)));
}

inline double bessel_i_d(unsigned nu, double x) {
    if (x == 0) return nu == 0 ? 1.0 : 0.0;
    return bessel_i_series<double>(nu, x, 1e-18);
}

struct CoeffEstimate {
    int64_t n = 1;   // pole index
    int k = 1;       // raising depth (weight -2k)
    int64_t l = 0;   // coefficient index >= 0
    int64_t c_max = 2000;
    Real partial_value;
    Real bound_value;
};

// Explicit coefficient estimate, normalized consistently with the
// coefficient formulas above:
//   l > 0: 4 sqrt2 pi^{3/2} l^{-k} n^{1+k} e^{4 pi sqrt(nl)}
//          + 2^{3+2k} pi^{2+2k} n^{1+2k} zeta(1+2k) / (1+2k)!
//   l = 0: (2 pi)^{2+2k} n^{1+2k} zeta(1+2k) / (1+2k)!
inline Real lemma_bound(int64_t n, int k, int64_t l,
                        unsigned precision_bits = 256) {
    if (l < 0 || k < 1 || n < 1) throw std::invalid_argument("lemma_bound domain");
    PrecisionScope scope(precision_bits);
    Real pi = real_pi();
    Real zeta = zeta_int(static_cast<unsigned>(1 + 2 * k), precision_bits);
    Real fact = Real(factorial_int(static_cast<unsigned>(1 + 2 * k)));
    Real holomorphic_tail = pow_si(Real(2), 3 + 2 * k) * pow_si(pi, 2 + 2 * k) *
                            pow_si(Real(n), 1 + 2 * k) * zeta / fact;
    if (l == 0) return holomorphic_tail / 2; // (2 pi)^{2+2k} = 2^{3+2k} pi^{2+2k} / 2
    Real main = 4 * sqrt(Real(2)) * pow(pi, Real(3) / 2) * pow_si(Real(l), -k) *
                pow_si(Real(n), 1 + k) * exp(4 * pi * sqrt(Real(n * l)));
    return main + holomorphic_tail;
}

namespace detail {

inline double poincare_prefactor_d(int64_t n, int k, int64_t l) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double pi = 3.14159265358979323846;
    if (l > 0)
        return sign * 2 * pi * std::pow(double(l), -k - 0.5) *
               std::pow(double(n), k + 0.5);
    double fact = 1;
    for (int i = 2; i <= 1 + 2 * k; ++i) fact *= i;
    return sign * std::pow(2 * pi, 2 + 2 * k) * std::pow(double(n), 1 + 2 * k) /
           fact;
}

// c-sum term weight: K is multiplied by I_{1+2k}(4 pi sqrt(nl)/c)/c for
// l > 0, and by 1/c^{2+2k} for l = 0.
inline double poincare_weight_d(int64_t c, int64_t n, int k, int64_t l) {
    double pi = 3.14159265358979323846;
    if (l > 0)
        return bessel_i_d(static_cast<unsigned>(1 + 2 * k),
                          4 * pi * std::sqrt(double(n) * double(l)) / c) /
               double(c);
    return 1.0 / std::pow(double(c), 2 + 2 * k);
}

} // namespace detail

struct GridEntry {
    int64_t n;
    int k;
    int64_t l;
    double partial;
    double bound;
    double ratio;
    bool pass;
};

// Shared-sweep evaluation of the whole (n, k, l) grid: for each modulus c
// the unit loop and cosine table are computed once and reused by every
// Kloosterman sum on the grid. Chunked accumulation keeps the output
// independent of the thread count.
inline std::vector<GridEntry> poincare_grid(int64_t n_max, int k_max,
                                            int64_t l_max, int64_t c_max,
                                            unsigned threads = 1,
                                            unsigned bound_precision = 128) {
    if (n_max < 1 || k_max < 1 || l_max < 0 || c_max < 1)
        throw std::invalid_argument("poincare_grid domain");
    size_t nl = static_cast<size_t>(n_max) * static_cast<size_t>(l_max + 1);
    auto nl_index = [&](int64_t n, int64_t l) {
        return static_cast<size_t>((n - 1) * (l_max + 1) + l);
    };
    const int64_t chunk_size = 256;
    size_t chunk_count = static_cast<size_t>((c_max + chunk_size - 1) / chunk_size);

    // kloosterman_sums[chunk][nl_index] and weighted c-sums per (n,k,l)
    size_t nkl = nl * static_cast<size_t>(k_max);
    std::vector<std::vector<double>> chunk_sums(chunk_count,
                                                std::vector<double>(nkl, 0.0));
    auto nkl_index = [&](int64_t n, int k, int64_t l) {
        return static_cast<size_t>(k - 1) * nl + nl_index(n, l);
    };

    parallel_for(chunk_count, threads, [&](size_t chunk) {
        int64_t c_lo = static_cast<int64_t>(chunk) * chunk_size + 1;
        int64_t c_hi = std::min<int64_t>(c_max, c_lo + chunk_size - 1);
        std::vector<double> cos_table;
        std::vector<double> kloos(nl);
        for (int64_t c = c_lo; c <= c_hi; ++c) {
            cos_table.resize(static_cast<size_t>(c));
            double step = 2 * 3.14159265358979323846 / double(c);
            for (int64_t r = 0; r < c; ++r)
                cos_table[static_cast<size_t>(r)] = std::cos(step * double(r));
            std::fill(kloos.begin(), kloos.end(), 0.0);
            for (int64_t d = 1; d <= c; ++d) {
                if (std::gcd(d, c) != 1) continue;
                int64_t dbar = mod_inverse(d, c);
                for (int64_t n = 1; n <= n_max; ++n) {
                    int64_t base = ((-n * dbar) % c + c) % c;
                    for (int64_t l = 0; l <= l_max; ++l) {
                        int64_t r = (base + l * d) % c;
                        kloos[nl_index(n, l)] += cos_table[static_cast<size_t>(r)];
                    }
                }
            }
            for (int64_t n = 1; n <= n_max; ++n)
                for (int k = 1; k <= k_max; ++k)
                    for (int64_t l = 0; l <= l_max; ++l)
                        chunk_sums[chunk][nkl_index(n, k, l)] +=
                            kloos[nl_index(n, l)] *
                            detail::poincare_weight_d(c, n, k, l);
        }
    });

    std::vector<double> totals(nkl, 0.0);
    for (const auto& part : chunk_sums)
        for (size_t i = 0; i < nkl; ++i) totals[i] += part[i];

    std::vector<GridEntry> out;
    out.reserve(nkl);
    for (int64_t n = 1; n <= n_max; ++n)
        for (int k = 1; k <= k_max; ++k)
            for (int64_t l = 0; l <= l_max; ++l) {
                double partial = detail::poincare_prefactor_d(n, k, l) *
                                 totals[nkl_index(n, k, l)];
                double bound =
                    lemma_bound(n, k, l, bound_precision).convert_to<double>();
                double ratio = std::abs(partial) / bound;
                out.push_back({n, k, l, partial, bound, ratio,
                               std::abs(partial) <= bound});
            }
    return out;
}

// Single-coefficient partial sum. precision_bits <= 53 selects the double
// engine; anything higher runs the same sum in MPFR arithmetic.
inline CoeffEstimate poincare_coefficient(int64_t n, int k, int64_t l,
                                          int64_t c_max,
                                          unsigned precision_bits = 53) {
    if (l < 0)
        throw std::invalid_argument(
            "l < 0 (non-holomorphic coefficients) is out of scope");
    if (n < 1 || k < 1 || c_max < 1)
        throw std::invalid_argument("poincare_coefficient domain");
    CoeffEstimate est;
    est.n = n;
    est.k = k;
    est.l = l;
    est.c_max = c_max;
    est.bound_value = lemma_bound(n, k, l, std::max(precision_bits, 128u));
    if (precision_bits <= 53) {
        double acc = 0;
        for (int64_t c = 1; c <= c_max; ++c) {
            double kl = 0;
            double step = 2 * 3.14159265358979323846 / double(c);
            for (int64_t d = 1; d <= c; ++d) {
                if (std::gcd(d, c) != 1) continue;
                int64_t dbar = mod_inverse(d, c);
                int64_t r = (((-n * dbar + l * d) % c) + c) % c;
                kl += std::cos(step * double(r));
            }
            acc += kl * detail::poincare_weight_d(c, n, k, l);
        }
        est.partial_value = Real(detail::poincare_prefactor_d(n, k, l) * acc);
        return est;
    }
    PrecisionScope scope(precision_bits);
    Real pi = real_pi();
    Real acc(0);
    Real eps = ldexp(Real(1), -static_cast<int>(precision_bits));
    for (int64_t c = 1; c <= c_max; ++c) {
        Real kl = kloosterman(-n, l, c, precision_bits);
        Real weight;
        if (l > 0)
            weight = bessel_i_series<Real>(static_cast<unsigned>(1 + 2 * k),
                                           4 * pi * sqrt(Real(n) * Real(l)) / c,
                                           eps) /
                     c;
        else
            weight = 1 / pow_si(Real(c), 2 + 2 * k);
        acc += kl * weight;
    }
    Real prefactor;
    int sign = (k % 2 == 0) ? 1 : -1;
    if (l > 0)
        prefactor = sign * 2 * pi * pow(Real(l), Real(-k) - Real(1) / 2) *
                    pow(Real(n), Real(k) + Real(1) / 2);
    else
        prefactor = sign * pow_si(2 * pi, 2 + 2 * k) * pow_si(Real(n), 1 + 2 * k) /
                    Real(factorial_int(static_cast<unsigned>(1 + 2 * k)));
    est.partial_value = prefactor * acc;
    return est;
}

} // namespace maassclass

#endif
