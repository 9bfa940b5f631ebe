#pragma once

// D(x) = sum_{n<=x} d(n) exactly, the error term
// Delta(x) = D(x) - x log x - (2 gamma - 1) x [- 1/4], and a streaming
// generator of Delta(n) for every n up to a bound.
//
// The main term is evaluated in double-double: at x ~ 1e9 it is ~2e10 while
// Delta is ~1e3, so plain doubles would surrender six digits of the error
// term before the subtraction even happens.

#include <cstdint>
#include <vector>

#include "deltalab/dd.hpp"
#include "deltalab/errors.hpp"
#include "deltalab/numeric.hpp"
#include "deltalab/parallel.hpp"
#include "deltalab/sieves.hpp"

namespace deltalab::summatory {

struct DeltaSample {
    double x = 0.0;
    i64 big_d = 0;            // D(floor(x)), exact
    double delta = 0.0;       // Delta(x)
    bool quarter_convention = true;
};

// Hyperbola method: D(x) = 2 * sum_{a<=sqrt(x)} floor(x/a) - floor(sqrt(x))^2.
// Widened accumulation; refuses to narrow silently.
inline i64 divisor_summatory(u64 x) {
    if (x == 0) throw precondition_error("divisor_summatory requires x >= 1");
    u64 r = isqrt_u64(x);
    u128 sum = 0;
    for (u64 a = 1; a <= r; ++a) sum += x / a;
    u128 d = 2 * sum - static_cast<u128>(r) * r;
    if (d > static_cast<u128>(INT64_MAX))
        throw std::overflow_error("D(x) exceeds 64-bit range; widen the API before going there");
    return static_cast<i64>(d);
}

// x log x + (2 gamma - 1) x + (1/4 if quarter), ~32 significant digits.
inline dd main_term_dd(double x, bool quarter) {
    dd xd(x);
    dd t = xd * dd_log(xd) + kTwoGammaMinusOne * xd;
    if (quarter) t += dd(0.25);
    return t;
}

inline double delta_from_big_d(i64 big_d, double x, bool quarter) {
    return to_double(dd_from_i64(big_d) - main_term_dd(x, quarter));
}

// Delta at a real point x >= 1; D is taken at floor(x), the smooth part at x.
inline double delta(double x, bool quarter = true) {
    if (!(x >= 1.0)) throw precondition_error("delta requires x >= 1");
    i64 big_d = divisor_summatory(static_cast<u64>(std::floor(x)));
    return delta_from_big_d(big_d, x, quarter);
}

// Shared streaming engine.  Sieves d(n) over consecutive segments and hands
// each segment to the fold together with the exact accumulator at entry:
//   fold(seg_lo, seg_hi, d_counts, d_before)   with d_before = D(seg_lo - 1).
// Segments arrive strictly in order; folds are called serially, so consumers
// may keep plain running state.  Parallelism lives inside the sieving.
template <typename Fold>
void stream_divisor_prefix(u64 x_max, u64 segment_size, Fold&& fold) {
    if (x_max < 1) throw precondition_error("stream requires x_max >= 1");
    if (segment_size < 1) throw precondition_error("segment_size must be >= 1");
    std::vector<std::uint16_t> d_counts;
    u128 running = 0;
    for (u64 lo = 1; lo <= x_max;) {
        u64 hi = std::min(x_max + 1, lo + segment_size);
        d_counts.assign(hi - lo, 0);
        sieves::divisor_counts_into(lo, hi, d_counts);
        if (running > static_cast<u128>(INT64_MAX))
            throw std::overflow_error("running D overflow; widen the fold interface");
        fold(lo, hi, std::span<const std::uint16_t>(d_counts), static_cast<i64>(running));
        for (std::uint16_t c : d_counts) running += c;
        lo = hi;
    }
}

// Per-segment Delta evaluation: out[i] = Delta(lo + i) for the given exact
// prefix values.  Embarrassingly parallel and bit-identical to per-point
// delta() by construction (same dd path).
inline void segment_deltas(u64 lo, std::span<const i64> big_d, bool quarter,
                           std::span<double> out) {
    parallel_for(0, big_d.size(), u64{1} << 15, [&](u64 a, u64 b) {
        for (u64 i = a; i < b; ++i)
            out[i] = delta_from_big_d(big_d[i], static_cast<double>(lo + i), quarter);
    });
}

// Ordered emission of DeltaSample for n = 1..x_max.  Single consumer; the
// total work is O(x_max log x_max) divisor increments.
class DeltaStream {
public:
    explicit DeltaStream(u64 x_max, u64 segment_size = sieves::kDefaultSegmentCapacity,
                         bool quarter = true)
        : x_max_(x_max), segment_size_(segment_size), quarter_(quarter) {
        if (x_max < 1) throw precondition_error("DeltaStream requires x_max >= 1");
        if (segment_size < 1) throw precondition_error("segment_size must be >= 1");
    }

    bool next(DeltaSample& out) {
        if (n_ > x_max_) return false;
        if (n_ >= buf_hi_) load_segment();
        u64 i = n_ - buf_lo_;
        out.x = static_cast<double>(n_);
        out.big_d = big_d_[i];
        out.delta = deltas_[i];
        out.quarter_convention = quarter_;
        ++n_;
        return true;
    }

private:
    void load_segment() {
        u64 lo = n_;
        u64 hi = std::min(x_max_ + 1, lo + segment_size_);
        d_counts_.assign(hi - lo, 0);
        sieves::divisor_counts_into(lo, hi, d_counts_);
        big_d_.resize(hi - lo);
        u128 run = running_;
        for (u64 i = 0; i < hi - lo; ++i) {
            run += d_counts_[i];
            if (run > static_cast<u128>(INT64_MAX))
                throw std::overflow_error("D accumulator left 64-bit range");
            big_d_[i] = static_cast<i64>(run);
        }
        running_ = run;
        deltas_.resize(hi - lo);
        segment_deltas(lo, big_d_, quarter_, deltas_);
        buf_lo_ = lo;
        buf_hi_ = hi;
    }

    u64 x_max_;
    u64 segment_size_;
    bool quarter_;
    u64 n_ = 1;
    u64 buf_lo_ = 1, buf_hi_ = 1;
    u128 running_ = 0;
    std::vector<std::uint16_t> d_counts_;
    std::vector<i64> big_d_;
    std::vector<double> deltas_;
};

}  // namespace deltalab::summatory
