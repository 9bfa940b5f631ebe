#pragma once

// Test-only reference implementations: trial division, naive enumeration,
// quadratic pair counts.  Deliberately slow and independent of the library's
// code paths; every sieve/sort/closed-form result is checked against these.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracles {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 d_by_trial(u64 n) {
    u64 count = 0;
    for (u64 a = 1; a * a <= n; ++a) {
        if (n % a == 0) count += (a * a == n) ? 1 : 2;
    }
    return count;
}

inline bool is_prime_by_trial(u64 n) {
    if (n < 2) return false;
    for (u64 a = 2; a * a <= n; ++a)
        if (n % a == 0) return false;
    return true;
}

// Full factorization by trial division.
inline std::map<u64, unsigned> factor_by_trial(u64 n) {
    std::map<u64, unsigned> f;
    for (u64 p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

inline int mu_by_trial(u64 n) {
    if (n == 1) return 1;
    auto f = factor_by_trial(n);
    for (auto& [p, k] : f)
        if (k > 1) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

// Lambda(n) as (prime, exponent); prime = 0 when n is not a prime power.
inline std::pair<u64, unsigned> lambda_by_trial(u64 n) {
    if (n < 2) return {0, 0};
    auto f = factor_by_trial(n);
    if (f.size() != 1) return {0, 0};
    auto [p, k] = *f.begin();
    return {p, k};
}

// d(n) for all n <= x via multiple counting; prefix sums give D(x).
inline std::vector<u64> divisor_table(u64 x) {
    std::vector<u64> d(x + 1, 0);
    for (u64 a = 1; a <= x; ++a)
        for (u64 m = a; m <= x; m += a) ++d[m];
    return d;
}

inline i64 big_d_by_rows(u64 x) {
    // D(x) = sum_{a<=x} floor(x/a): lattice-point count row by row,
    // independent of the hyperbola fold.
    i64 total = 0;
    for (u64 a = 1; a <= x; ++a) total += static_cast<i64>(x / a);
    return total;
}

}  // namespace oracles
