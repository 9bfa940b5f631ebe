#pragma once

// Exact verification of Heath-Brown's identity
//   Lambda(n) = sum_{j=1}^{k} (-1)^{j-1} C(k,j)
//               sum_{n_1...n_{2j} = n, n_{j+1},...,n_{2j} <= z}
//               (log n_1) mu(n_{j+1}) ... mu(n_{2j}),
// valid for n <= 2 z^k.  Enumeration is by recursive ordered factorization
// over the divisor lattice of n; logs of integers are cached once and summed
// in extended precision.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "deltalab/errors.hpp"
#include "deltalab/numeric.hpp"
#include "deltalab/parallel.hpp"
#include "deltalab/sieves.hpp"

namespace deltalab::identities {

struct HBInstance {
    unsigned k = 1;
    double z = 1.0;
    u64 n_max = 1;
};

inline constexpr u64 kMaxTable = 2'000'000;  // mu/log cache budget

namespace detail {

inline void check_validity(u64 n, unsigned k, double z) {
    if (k < 1) throw precondition_error("Heath-Brown identity needs k >= 1");
    if (k > 20) throw budget_error("k beyond 20 exceeds the enumeration budget");
    if (!(z >= 1.0)) throw precondition_error("Heath-Brown identity needs z >= 1");
    if (n < 1) throw precondition_error("n must be >= 1");
    long double limit = 2.0L * std::pow(static_cast<long double>(z), static_cast<int>(k));
    long double slack = 1.0L + 4.0L * std::numeric_limits<long double>::epsilon();
    if (static_cast<long double>(n) > limit * slack)
        throw precondition_error("n exceeds the identity's validity range n <= 2 z^k");
}

inline u64 binomial(unsigned k, unsigned j) {
    u64 r = 1;
    for (unsigned i = 1; i <= j; ++i) r = r * (k - i + 1) / i;
    return r;
}

}  // namespace detail

// Reusable context: mu, Lambda and log caches up to n_max.
class HeathBrown {
public:
    explicit HeathBrown(u64 n_max) : n_max_(n_max) {
        if (n_max < 1) throw precondition_error("table bound must be >= 1");
        if (n_max > kMaxTable)
            throw budget_error("Heath-Brown table beyond " + std::to_string(kMaxTable) +
                               " exceeds the enumeration budget");
        mu_.resize(n_max + 1);
        lambda_.resize(n_max + 1, 0.0L);
        spf_.resize(n_max + 1, 0);
        logs_.resize(n_max + 1, 0.0L);
        mu_[0] = 0;
        for (u64 lo = 1; lo <= n_max;) {
            u64 hi = std::min(n_max + 1, lo + sieves::kDefaultSegmentCapacity);
            auto seg = sieves::sieve_segment(lo, hi);
            for (u64 n = lo; n < hi; ++n) {
                mu_[n] = static_cast<int>(seg.mu(n));
                lambda_[n] = seg.lambda_log(n);
            }
            lo = hi;
        }
        for (u64 n = 2; n <= n_max; ++n) logs_[n] = std::log(static_cast<long double>(n));
        for (u64 p = 2; p <= n_max; ++p) {
            if (spf_[p] != 0) continue;
            for (u64 m = p; m <= n_max; m += p)
                if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(p);
        }
    }

    u64 n_max() const { return n_max_; }
    long double lambda(u64 n) const { return lambda_[n]; }

    // RHS of the identity at a single n, exact enumeration.
    long double rhs(u64 n, unsigned k, double z) const {
        detail::check_validity(n, k, z);
        if (n > n_max_) throw precondition_error("n beyond the table bound");
        auto divisors = divisors_of(n);
        const std::size_t nd = divisors.size();

        // index of each divisor for O(1) quotient lookup
        std::unordered_map<u64, std::size_t> index;
        index.reserve(nd * 2);
        for (std::size_t i = 0; i < nd; ++i) index[divisors[i]] = i;

        u64 zcap = static_cast<u64>(std::floor(z));

        // g[t][i]: sum over ordered t-tuples of factors <= z of divisors[i],
        // each weighted by mu of the factor
        // l[t][i]: sum over ordered t-tuples with product divisors[i] of log(first)
        std::vector<std::vector<long double>> g(k + 1,
                                                std::vector<long double>(nd, 0.0L));
        std::vector<std::vector<long double>> l(k + 1,
                                                std::vector<long double>(nd, 0.0L));
        g[0][index.at(1)] = 1.0L;
        for (std::size_t i = 0; i < nd; ++i) l[1][i] = logs_[divisors[i]];
        for (unsigned t = 1; t <= k; ++t) {
            for (std::size_t i = 0; i < nd; ++i) {
                u64 m = divisors[i];
                long double gacc = 0.0L;
                long double lacc = 0.0L;
                for (std::size_t jd = 0; jd < nd; ++jd) {
                    u64 d = divisors[jd];
                    if (d > m || m % d != 0) continue;
                    std::size_t rest = index.at(m / d);
                    if (d <= zcap && mu_[d] != 0) gacc += mu_[d] * g[t - 1][rest];
                    if (t >= 2) lacc += l[t - 1][rest];  // d is the t-th factor
                }
                g[t][i] = gacc;
                if (t >= 2) l[t][i] = lacc;
            }
        }

        long double total = 0.0L;
        for (unsigned j = 1; j <= k; ++j) {
            long double fj = 0.0L;
            for (std::size_t i = 0; i < nd; ++i) {
                u64 m = divisors[i];
                long double gz = g[j][index.at(n / m)];
                if (gz != 0.0L) fj += l[j][i] * gz;
            }
            long double sign = (j % 2 == 1) ? 1.0L : -1.0L;
            total += sign * static_cast<long double>(detail::binomial(k, j)) * fj;
        }
        return total;
    }

    // max_n |rhs(n) - Lambda(n)| over n <= n_max; parallel with block-max fold.
    double max_deviation(u64 n_max, unsigned k, double z) const {
        detail::check_validity(n_max, k, z);
        if (n_max > n_max_) throw precondition_error("n_max beyond the table bound");
        const u64 grain = 4096;
        u64 blocks = (n_max + grain - 1) / grain;
        std::vector<double> worst(blocks, 0.0);
        parallel_blocks(blocks, [&](std::size_t b) {
            u64 lo = 1 + b * grain;
            u64 hi = std::min(n_max + 1, lo + grain);
            double w = 0.0;
            for (u64 n = lo; n < hi; ++n) {
                long double dev = rhs(n, k, z) - lambda_[n];
                w = std::max(w, static_cast<double>(std::fabs(static_cast<double>(dev))));
            }
            worst[b] = w;
        });
        double result = 0.0;
        for (double w : worst) result = std::max(result, w);
        return result;
    }

private:
    std::vector<u64> divisors_of(u64 n) const {
        std::vector<u64> divs{1};
        u64 rest = n;
        while (rest > 1) {
            u64 p = spf_[rest];
            unsigned e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            std::size_t base = divs.size();
            u64 pk = 1;
            for (unsigned i = 1; i <= e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
            }
        }
        std::sort(divs.begin(), divs.end());
        return divs;
    }

    u64 n_max_;
    std::vector<int> mu_;
    std::vector<long double> lambda_;
    std::vector<std::uint32_t> spf_;
    std::vector<long double> logs_;
};

inline double heath_brown_rhs(u64 n, unsigned k, double z) {
    detail::check_validity(n, k, z);
    return static_cast<double>(HeathBrown(n).rhs(n, k, z));
}

inline double verify_heath_brown(u64 n_max, unsigned k, double z) {
    detail::check_validity(n_max, k, z);
    return HeathBrown(n_max).max_deviation(n_max, k, z);
}

}  // namespace deltalab::identities
