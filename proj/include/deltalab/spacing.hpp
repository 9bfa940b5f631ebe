#pragma once

// Brute-force counters and exact sums for the spacing problems:
//   t(h,m1,m2) = (m1^a - m2^a) h^b  over dyadic ranges m ~ M  (M < m <= 2M),
//   the sixtuplet count B(M1,M2,H,Delta) and its three-term bound,
//   the Robert-Sargos quadruplet count N(M,delta),
//   the Iwaniec-Sarkozy close-pair count v(N,X),
//   the pair-proximity inequality (constant 3) and T(N1,N2,a,b).
//
// All tolerance comparisons use the exact double predicate |u - v| <= tol on
// values that themselves carry ~4 ulp of evaluation error; counts within
// that distance of a boundary may differ from infinite precision by the
// boundary multiplicity.  Sorted counters and naive oracles share the same
// predicate, so they always agree with each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "deltalab/errors.hpp"
#include "deltalab/numeric.hpp"
#include "deltalab/parallel.hpp"

namespace deltalab::spacing {

struct SpacingInstance {
    u64 m1 = 1;       // dyadic block starts
    u64 m2 = 1;
    u64 h = 1;
    double alpha = 0.5;   // in (0, 1]
    double beta = 0.5;    // in (0, 1]
    double tol = 0.0;     // the Delta of the counting problem
};

inline constexpr u64 kSpacingBudget = 10'000'000;      // triples for B
inline constexpr u64 kQuadrupletBudget = 3000;         // M for N(M,delta)
inline constexpr u64 kClosePairBudget = 1'000'000;     // N for v(N,X)
inline constexpr u64 kPairListBudget = 100'000;        // list sizes
inline constexpr u64 kTsumBudget = 100'000'000;        // N1*N2

inline double t_value(u64 h, u64 m1, u64 m2, double alpha, double beta) {
    if (h < 1 || m1 < 1 || m2 < 1) throw precondition_error("t(h,m1,m2) needs h,m1,m2 >= 1");
    return (std::pow(static_cast<double>(m1), alpha) -
            std::pow(static_cast<double>(m2), alpha)) *
           std::pow(static_cast<double>(h), beta);
}

namespace detail {

inline void validate_instance(const SpacingInstance& inst) {
    if (inst.m1 < 1 || inst.m2 < 1 || inst.h < 1)
        throw precondition_error("dyadic starts must be >= 1");
    if (!(inst.alpha > 0.0 && inst.alpha <= 1.0) || !(inst.beta > 0.0 && inst.beta <= 1.0))
        throw precondition_error("exponents must lie in (0,1]");
    if (!(inst.tol >= 0.0)) throw precondition_error("tolerance must be >= 0");
}

// ordered pairs (i,j) with |v_i - v_j| <= tol, v sorted ascending
inline u64 count_pairs_within(const std::vector<double>& sorted, double tol) {
    u64 count = 0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        while (lo < sorted.size() && sorted[i] - sorted[lo] > tol) ++lo;
        if (hi < i + 1) hi = i;
        while (hi + 1 < sorted.size() && sorted[hi + 1] - sorted[i] <= tol) ++hi;
        count += hi - lo + 1;
    }
    return count;
}

}  // namespace detail

// Number of ordered sixtuplet pairs (m1,m2,h) x (m1',m2',h') with
// |t - t'| <= tol; both triples range over the instance's dyadic blocks
// with m1 != m2.  Sort + two-pointer window.
inline u64 count_spacing_B(const SpacingInstance& inst) {
    detail::validate_instance(inst);
    u128 triples = static_cast<u128>(inst.m1) * inst.m2 * inst.h;
    if (triples > kSpacingBudget)
        throw budget_error("M1*M2*H = " + std::to_string(static_cast<u64>(triples)) +
                           " exceeds the budget " + std::to_string(kSpacingBudget) +
                           "; shrink the dyadic blocks");
    std::vector<double> m1pow(inst.m1), m2pow(inst.m2), hpow(inst.h);
    for (u64 i = 0; i < inst.m1; ++i)
        m1pow[i] = std::pow(static_cast<double>(inst.m1 + 1 + i), inst.alpha);
    for (u64 i = 0; i < inst.m2; ++i)
        m2pow[i] = std::pow(static_cast<double>(inst.m2 + 1 + i), inst.alpha);
    for (u64 i = 0; i < inst.h; ++i)
        hpow[i] = std::pow(static_cast<double>(inst.h + 1 + i), inst.beta);

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(triples));
    for (u64 a = 0; a < inst.m1; ++a) {
        u64 m1 = inst.m1 + 1 + a;
        for (u64 b = 0; b < inst.m2; ++b) {
            if (inst.m2 + 1 + b == m1) continue;  // m1 != m2
            double diff = m1pow[a] - m2pow[b];
            for (u64 c = 0; c < inst.h; ++c) values.push_back(diff * hpow[c]);
        }
    }
    std::sort(values.begin(), values.end());
    return detail::count_pairs_within(values, inst.tol);
}

// Three-term sixtuplet-count bound with epsilon = 0 (constants absorbed by
// the caller's fitted multiplier):
//   (M1 M2)^{3/2} H^{3/2}
// + M1^{2-a/4} M2^{3/2} Delta^{1/4} H^{3/2-b/4}
// + (M1 M2)^{2-a/2} H^{2-b} Delta
inline double proposition_bound(const SpacingInstance& inst) {
    detail::validate_instance(inst);
    double M1 = static_cast<double>(inst.m1), M2 = static_cast<double>(inst.m2);
    double H = static_cast<double>(inst.h);
    double t1 = std::pow(M1 * M2, 1.5) * std::pow(H, 1.5);
    double quarter_root = inst.tol > 0.0 ? std::pow(inst.tol, 0.25) : 0.0;
    double t2 = std::pow(M1, 2.0 - inst.alpha / 4.0) * std::pow(M2, 1.5) * quarter_root *
                std::pow(H, 1.5 - inst.beta / 4.0);
    double t3 = std::pow(M1 * M2, 2.0 - inst.alpha / 2.0) * std::pow(H, 2.0 - inst.beta) *
                inst.tol;
    return t1 + t2 + t3;
}

// Robert-Sargos: quadruplets in {M+1..2M}^4 with
// |m1^a + m2^a - m3^a - m4^a| <= delta M^a, via sorted pair sums.
inline u64 count_quadruplets_N(u64 M, double delta, double alpha) {
    if (M < 1) throw precondition_error("M must be >= 1");
    if (!(delta >= 0.0)) throw precondition_error("delta must be >= 0");
    if (M > kQuadrupletBudget)
        throw budget_error("M beyond " + std::to_string(kQuadrupletBudget) +
                           " exceeds the O(M^2 log M) budget");
    std::vector<double> powers(M);
    for (u64 i = 0; i < M; ++i)
        powers[i] = std::pow(static_cast<double>(M + 1 + i), alpha);
    std::vector<double> pair_sums;
    pair_sums.reserve(M * M);
    for (u64 i = 0; i < M; ++i)
        for (u64 j = 0; j < M; ++j) pair_sums.push_back(powers[i] + powers[j]);
    std::sort(pair_sums.begin(), pair_sums.end());
    double window = delta * std::pow(static_cast<double>(M), alpha);
    return detail::count_pairs_within(pair_sums, window);
}

// Iwaniec-Sarkozy: |{(n1,n2) in (N,2N]^2 : |sqrt(n1)-sqrt(n2)| <= 1/(2X)}|.
inline u64 count_close_pairs(u64 N, double X) {
    if (N < 1) throw precondition_error("N must be >= 1");
    if (!(X > 0.0)) throw precondition_error("X must be > 0");
    if (N > kClosePairBudget)
        throw budget_error("N beyond " + std::to_string(kClosePairBudget) +
                           " exceeds the close-pair budget");
    std::vector<double> roots(N);
    for (u64 i = 0; i < N; ++i) roots[i] = std::sqrt(static_cast<double>(N + 1 + i));
    return detail::count_pairs_within(roots, 1.0 / (2.0 * X));  // already sorted
}

struct PairProximity {
    u64 lhs = 0;     // #{(r,s): |a_r - b_s| <= delta}
    double rhs = 0;  // 3 sqrt(self_a) sqrt(self_b)
    u64 self_a = 0;
    u64 self_b = 0;
};

// Zhai's pair-proximity inequality, explicit constant 3.  A violation would
// be an implementation bug, so it throws rather than returning quietly.
inline PairProximity pair_proximity_check(std::vector<double> a, std::vector<double> b,
                                          double delta) {
    if (a.empty() || b.empty()) throw precondition_error("lists must be nonempty");
    if (a.size() > kPairListBudget || b.size() > kPairListBudget)
        throw budget_error("list beyond " + std::to_string(kPairListBudget) + " elements");
    if (!(delta >= 0.0)) throw precondition_error("delta must be >= 0");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    PairProximity result;
    result.self_a = detail::count_pairs_within(a, delta);
    result.self_b = detail::count_pairs_within(b, delta);
    u64 cross = 0;
    std::size_t lo = 0, hi = 0;
    for (double v : a) {
        while (lo < b.size() && v - b[lo] > delta) ++lo;
        while (hi < b.size() && b[hi] - v <= delta) ++hi;
        cross += (hi > lo) ? hi - lo : 0;
    }
    result.lhs = cross;
    result.rhs = 3.0 * std::sqrt(static_cast<double>(result.self_a)) *
                 std::sqrt(static_cast<double>(result.self_b));
    if (static_cast<double>(result.lhs) > result.rhs)
        throw std::logic_error("pair-proximity inequality violated: implementation bug");
    return result;
}

struct TsumResult {
    double value = 0.0;
    double bound = 0.0;
    double bound_ratio = 0.0;
};

// T(N1,N2,a,b) = sum_{n1~N1, n2~N2, n1 != n2} |n1^a - n2^a|^{-b}, exact
// double sum; ratio against (N1 N2)^{1-ab/2} log(2+N1) log(2+N2).
inline TsumResult T_sum(u64 N1, u64 N2, double alpha, double beta) {
    if (N1 < 1 || N2 < 1) throw precondition_error("N1, N2 must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
        throw precondition_error("exponents must lie in (0,1]");
    if (static_cast<u128>(N1) * N2 > kTsumBudget)
        throw budget_error("N1*N2 exceeds " + std::to_string(kTsumBudget));
    std::vector<double> p1(N1), p2(N2);
    for (u64 i = 0; i < N1; ++i) p1[i] = std::pow(static_cast<double>(N1 + 1 + i), alpha);
    for (u64 i = 0; i < N2; ++i) p2[i] = std::pow(static_cast<double>(N2 + 1 + i), alpha);

    const u64 grain = std::max<u64>(1, N1 / (8 * static_cast<u64>(thread_count()) + 1));
    u64 blocks = (N1 + grain - 1) / grain;
    std::vector<double> partial(blocks, 0.0);
    parallel_blocks(blocks, [&](std::size_t blk) {
        u64 lo = blk * grain, hi = std::min(N1, lo + grain);
        CompensatedSum acc;
        for (u64 i = lo; i < hi; ++i) {
            u64 n1 = N1 + 1 + i;
            for (u64 j = 0; j < N2; ++j) {
                if (N2 + 1 + j == n1) continue;
                acc.add(std::pow(std::abs(p1[i] - p2[j]), -beta));
            }
        }
        partial[blk] = acc.value();
    });
    TsumResult r;
    CompensatedSum total;
    for (double p : partial) total.add(p);
    r.value = total.value();
    r.bound = std::pow(static_cast<double>(N1) * static_cast<double>(N2),
                       1.0 - alpha * beta / 2.0) *
              std::log(2.0 + static_cast<double>(N1)) *
              std::log(2.0 + static_cast<double>(N2));
    r.bound_ratio = r.value / r.bound;
    return r;
}

}  // namespace deltalab::spacing
