#pragma once

// Segmented sieves for exact d(n), mu(n), Lambda(n) and primality over
// arbitrary windows up to ~1e9.  Divisor counts are sieved by walking the
// multiples of every divisor class a <= sqrt(hi): n = a*b with b > a adds 2,
// n = a*a adds 1.  No factorization shortcuts; every value is exact.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "deltalab/errors.hpp"
#include "deltalab/numeric.hpp"
#include "deltalab/parallel.hpp"

namespace deltalab::sieves {

inline constexpr u64 kDefaultSegmentCapacity = u64{1} << 20;

struct LambdaEntry {
    u64 prime_base = 0;
    std::uint32_t exponent = 0;  // 0 marks "not a prime power"

    bool is_prime_power() const { return exponent != 0; }
};

struct DivisorSegment {
    u64 lo = 0;  // inclusive
    u64 hi = 0;  // exclusive
    std::vector<std::uint16_t> d_values;
    std::vector<std::int8_t> mu_values;
    std::vector<LambdaEntry> lambda_values;
    std::vector<bool> is_prime;

    u64 size() const { return hi - lo; }
    std::uint16_t d(u64 n) const { return d_values[n - lo]; }
    int mu(u64 n) const { return mu_values[n - lo]; }
    const LambdaEntry& lambda(u64 n) const { return lambda_values[n - lo]; }
    bool prime(u64 n) const { return is_prime[n - lo]; }

    // Lambda(n) = log(prime_base) for prime powers, else 0; evaluated lazily
    // so the segment itself stays exact.
    long double lambda_log(u64 n) const {
        const LambdaEntry& e = lambda(n);
        return e.exponent ? std::log(static_cast<long double>(e.prime_base)) : 0.0L;
    }
};

// Simple sieve of Eratosthenes; used for base primes up to sqrt(hi).
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint32_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (u64 m = u64{p} * p; m <= limit; m += p) composite[m] = true;
    }
    return primes;
}

namespace detail {

inline void check_window(u64 lo, u64 hi) {
    if (lo == 0) throw precondition_error("sieve window must start at lo >= 1");
    if (lo >= hi) throw precondition_error("sieve window requires lo < hi");
}

// d(n) for one sub-window; callers may run disjoint sub-windows concurrently.
inline void divisor_counts_window(u64 lo, u64 hi, std::uint16_t* base, u64 array_lo) {
    u64 root = isqrt_u64(hi - 1);
    for (u64 a = 1; a <= root; ++a) {
        u64 sq = a * a;
        if (sq >= lo && sq < hi) base[sq - array_lo] += 1;
        u64 first = ((lo + a - 1) / a) * a;
        if (first <= sq) first = sq + a;  // cofactor must exceed a
        for (u64 n = first; n < hi; n += a) base[n - array_lo] += 2;
    }
}

inline void primality_window(u64 lo, u64 hi, const std::vector<std::uint32_t>& base_primes,
                             std::uint8_t* out, u64 array_lo) {
    for (u64 n = lo; n < hi; ++n) out[n - array_lo] = (n >= 2) ? 1 : 0;
    for (std::uint32_t p : base_primes) {
        u64 start = u64{p} * p;
        if (start >= hi) break;
        u64 first = ((lo + p - 1) / p) * p;
        if (first < start) first = start;
        for (u64 m = first; m < hi; m += p) out[m - array_lo] = 0;
    }
}

}  // namespace detail

// Exact divisor counts for [lo, hi) into out (out.size() == hi - lo).
// Hot path for the streaming experiments; parallelizes over sub-windows.
inline void divisor_counts_into(u64 lo, u64 hi, std::span<std::uint16_t> out) {
    detail::check_window(lo, hi);
    std::fill(out.begin(), out.end(), 0);
    const u64 grain = u64{1} << 17;
    parallel_for(lo, hi, grain, [&](u64 a, u64 b) {
        detail::divisor_counts_window(a, b, out.data(), lo);
    });
}

inline void primality_into(u64 lo, u64 hi, std::span<std::uint8_t> out) {
    detail::check_window(lo, hi);
    auto base_primes = primes_up_to(static_cast<std::uint32_t>(isqrt_u64(hi - 1)));
    const u64 grain = u64{1} << 17;
    parallel_for(lo, hi, grain, [&](u64 a, u64 b) {
        detail::primality_window(a, b, base_primes, out.data(), lo);
    });
}

// Full segment: d, mu, Lambda factored form, primality.  Deterministic
// content regardless of worker count; immutable once returned.
inline DivisorSegment sieve_segment(u64 lo, u64 hi, u64 capacity = kDefaultSegmentCapacity) {
    detail::check_window(lo, hi);
    if (hi - lo > capacity)
        throw budget_error("segment of " + std::to_string(hi - lo) +
                           " exceeds capacity " + std::to_string(capacity) +
                           "; split the window or raise the capacity");
    const u64 width = hi - lo;
    DivisorSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.d_values.resize(width);
    divisor_counts_into(lo, hi, seg.d_values);

    auto base_primes = primes_up_to(static_cast<std::uint32_t>(isqrt_u64(hi - 1)));

    std::vector<std::uint8_t> prime_flags(width);
    const u64 grain = u64{1} << 17;
    parallel_for(lo, hi, grain, [&](u64 a, u64 b) {
        detail::primality_window(a, b, base_primes, prime_flags.data(), lo);
    });
    seg.is_prime.assign(prime_flags.begin(), prime_flags.end());

    // Mobius + smallest-prime-factor in one pass over base primes.
    std::vector<std::int8_t> sign(width, 1);
    std::vector<std::uint8_t> squareful(width, 0);
    std::vector<u64> residual(width);
    std::vector<std::uint32_t> spf(width, 0);
    for (u64 i = 0; i < width; ++i) residual[i] = lo + i;
    for (std::uint32_t p : base_primes) {
        u64 first = ((lo + p - 1) / p) * p;
        for (u64 m = first; m < hi; m += p) {
            u64 i = m - lo;
            sign[i] = static_cast<std::int8_t>(-sign[i]);
            residual[i] /= p;
            if (spf[i] == 0) spf[i] = p;
        }
        // higher powers: divide out and mark the square factor
        for (u64 q = u64{p} * p; q < hi; q *= p) {
            u64 fq = ((lo + q - 1) / q) * q;
            for (u64 m = fq; m < hi; m += q) {
                u64 i = m - lo;
                squareful[i] = 1;
                residual[i] /= p;
            }
            if (q > (hi - 1) / p) break;  // q*p would overflow the window anyway
        }
    }
    seg.mu_values.resize(width);
    seg.lambda_values.resize(width);
    for (u64 i = 0; i < width; ++i) {
        u64 n = lo + i;
        std::int8_t mu = sign[i];
        if (residual[i] > 1) mu = static_cast<std::int8_t>(-mu);  // one prime factor > sqrt(hi)
        if (squareful[i]) mu = 0;
        if (n == 1) mu = 1;
        seg.mu_values[i] = mu;

        LambdaEntry entry;
        if (seg.is_prime[i]) {
            entry = {n, 1};
        } else if (spf[i] != 0) {
            u64 p = spf[i];
            u64 rest = n;
            std::uint32_t k = 0;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            if (rest == 1) entry = {p, k};
        }
        seg.lambda_values[i] = entry;
    }
    return seg;
}

// Primes in [lo, hi), ascending.  Internally chunked, so the window may be
// arbitrarily wide.
inline std::vector<u64> primes_in(u64 lo, u64 hi) {
    detail::check_window(lo, hi);
    std::vector<u64> primes;
    std::vector<std::uint8_t> flags;
    for (u64 a = lo; a < hi;) {
        u64 b = std::min(hi, a + kDefaultSegmentCapacity);
        flags.assign(b - a, 0);
        primality_into(a, b, flags);
        for (u64 n = a; n < b; ++n)
            if (flags[n - a]) primes.push_back(n);
        a = b;
    }
    return primes;
}

}  // namespace deltalab::sieves
