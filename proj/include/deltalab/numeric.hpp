#pragma once

// Small numeric kit: exact integer square roots, compensated and pairwise
// summation, real zeta via Euler-Maclaurin, Gauss-Legendre rules.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace deltalab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Neumaier variant of Kahan summation; the carry also rescues the case
// |term| > |sum|.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

// Deterministic pairwise sum: the reduction tree depends only on the index
// range, never on thread count.
template <typename T, typename F>
T pairwise_sum(u64 lo, u64 hi, F&& term) {
    if (hi - lo <= 128) {
        T acc{};
        for (u64 i = lo; i < hi; ++i) acc += term(i);
        return acc;
    }
    u64 mid = lo + (hi - lo) / 2;
    return pairwise_sum<T>(lo, mid, term) + pairwise_sum<T>(mid, hi, term);
}

// zeta(s) for real s > 1, Euler-Maclaurin with N=64 and 8 tail terms;
// good to ~1e-15 relative over the range used here.
inline double zeta_real(double s) {
    static const double bernoulli[] = {
        1.0 / 6,       -1.0 / 30,     1.0 / 42,      -1.0 / 30,
        5.0 / 66,      -691.0 / 2730, 7.0 / 6,       -3617.0 / 510,
    };
    const int N = 64;
    double sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(n, -s);
    double Ns = std::pow(N, -s);
    sum += Ns * N / (s - 1.0) + 0.5 * Ns;
    // tail: sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    double term_pow = Ns / N;  // N^{-s-2j+1} at j=1
    double rising = s;         // s(s+1)...(s+2j-2)
    double factorial = 2.0;    // (2j)!
    for (int j = 1; j <= 8; ++j) {
        sum += bernoulli[j - 1] / factorial * rising * term_pow;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        term_pow /= static_cast<double>(N) * N;
    }
    return sum;
}

// C = sum d^2(n)/n^{3/2} = zeta(3/2)^4 / zeta(3), the mean-square constant.
inline double zeta_constant_C() {
    double z32 = zeta_real(1.5);
    double z3 = zeta_real(3.0);
    return z32 * z32 * z32 * z32 / z3;
}

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n (standard gauleg scheme).
inline QuadratureRule gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace deltalab
