#pragma once

// Truncated Voronoi expansion
//   delta1(x,N) = (x^{1/4}/(sqrt(2) pi)) sum_{n<=N} d(n) n^{-3/4}
//                 cos(4 pi sqrt(n x) - pi/4)
// and the residual delta2(x,N) = Delta(x) - delta1(x,N).
//
// The phase 4 pi sqrt(n x) reaches ~4e8 at x ~ 1e9, n ~ 1e6; it is reduced
// mod 2 pi in double-double before the cosine, since a plain double phase
// would leave only ~8 correct digits in the angle.

#include <cmath>
#include <cstdint>
#include <vector>

#include "deltalab/dd.hpp"
#include "deltalab/errors.hpp"
#include "deltalab/parallel.hpp"
#include "deltalab/sieves.hpp"
#include "deltalab/summatory.hpp"

namespace deltalab::voronoi {

inline constexpr u64 kMaxTruncation = 10'000'000;  // d-table memory budget

struct VoronoiEval {
    double x = 0.0;
    u64 n_trunc = 0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double sup_ratio = 0.0;  // |delta2| / (x^{1/2} N^{-1/2})
};

struct ResidualStats {
    double sup_ratio_max = 0.0;
    double mean_first_power = 0.0;  // trapezoid int delta2 dx over the reference bound (signed)
    double mean_square = 0.0;       // trapezoid int delta2^2 dx over the reference bound
};

namespace detail {

// cos(4 pi sqrt(p) - pi/4) with the sqrt given in dd
inline double cos_phase(dd sqrt_nx) {
    dd f = dd_frac(dd(2.0) * sqrt_nx);         // 4 pi s = 2 pi (2s)
    dd angle = kTwoPi * f - kPiOver4;
    return std::cos(to_double(angle));
}

inline void check_args(double x, u64 n_trunc) {
    if (!(x >= 1.0)) throw precondition_error("voronoi requires x >= 1");
    if (n_trunc < 1 || static_cast<double>(n_trunc) > x)
        throw precondition_error("truncation must satisfy 1 <= N <= x");
    if (n_trunc > kMaxTruncation)
        throw budget_error("truncation beyond " + std::to_string(kMaxTruncation) +
                           " exceeds the d-table budget");
}

}  // namespace detail

// Holds d(1..N) and sqrt(n) so that sweeps over many x reuse one table.
class TruncatedVoronoi {
public:
    explicit TruncatedVoronoi(u64 n_trunc) : n_(n_trunc) {
        if (n_trunc < 1) throw precondition_error("truncation must be >= 1");
        if (n_trunc > kMaxTruncation)
            throw budget_error("truncation beyond " + std::to_string(kMaxTruncation) +
                               " exceeds the d-table budget");
        d_.assign(n_trunc, 0);
        sieves::divisor_counts_into(1, n_trunc + 1, d_);
        amp_.resize(n_trunc);
        sqrt_n_.resize(n_trunc);
        for (u64 n = 1; n <= n_trunc; ++n) {
            amp_[n - 1] = d_[n - 1] * std::pow(static_cast<double>(n), -0.75);
            sqrt_n_[n - 1] = dd_sqrt(dd(static_cast<double>(n)));
        }
    }

    u64 n_trunc() const { return n_; }

    double delta1(double x) const {
        detail::check_args(x, n_);
        dd sqrt_x = dd_sqrt(dd(x));
        double sum = pairwise_sum<double>(0, n_, [&](u64 i) {
            return amp_[i] * detail::cos_phase(sqrt_n_[i] * sqrt_x);
        });
        return to_double(kInvSqrt2Pi) * std::pow(x, 0.25) * sum;
    }

    VoronoiEval evaluate(double x, bool quarter = true) const {
        VoronoiEval e;
        e.x = x;
        e.n_trunc = n_;
        e.delta1 = delta1(x);
        e.delta2 = summatory::delta(x, quarter) - e.delta1;
        e.sup_ratio = std::abs(e.delta2) *
                      std::sqrt(static_cast<double>(n_)) / std::sqrt(x);
        return e;
    }

private:
    u64 n_;
    std::vector<std::uint16_t> d_;
    std::vector<double> amp_;    // d(n) n^{-3/4}
    std::vector<dd> sqrt_n_;
};

inline double delta1(double x, u64 n_trunc) {
    detail::check_args(x, n_trunc);
    return TruncatedVoronoi(n_trunc).delta1(x);
}

inline VoronoiEval delta2(double x, u64 n_trunc, bool quarter = true) {
    detail::check_args(x, n_trunc);
    return TruncatedVoronoi(n_trunc).evaluate(x, quarter);
}

// Equispaced grid of `samples` points on [T, 2T]: sup of the (i) ratio plus
// trapezoid estimates of int delta2 and int delta2^2 against the (ii) bound
//   T^{3/2} log^3 T / sqrt(N) + T log^4 T.
// Classical statements of this bound appear in first-power form in some
// sources and mean-square form in others; both are reported, neither asserted.
inline ResidualStats voronoi_residual_stats(u64 T, u64 n_trunc, u64 samples,
                                            bool quarter = true) {
    if (T < 2) throw precondition_error("residual stats require T >= 2");
    if (samples < 1) throw precondition_error("samples must be >= 1");
    detail::check_args(static_cast<double>(T), n_trunc);
    TruncatedVoronoi series(n_trunc);

    std::vector<double> residuals(samples);
    const double step =
        samples > 1 ? static_cast<double>(T) / static_cast<double>(samples - 1) : 0.0;
    parallel_for(0, samples, 64, [&](u64 a, u64 b) {
        for (u64 i = a; i < b; ++i) {
            double x = static_cast<double>(T) + step * static_cast<double>(i);
            residuals[i] = series.evaluate(x, quarter).delta2;
        }
    });

    ResidualStats stats;
    double sqrt_n = std::sqrt(static_cast<double>(n_trunc));
    for (u64 i = 0; i < samples; ++i) {
        double x = static_cast<double>(T) + step * static_cast<double>(i);
        stats.sup_ratio_max =
            std::max(stats.sup_ratio_max, std::abs(residuals[i]) * sqrt_n / std::sqrt(x));
    }
    if (samples > 1) {
        CompensatedSum first, square;
        for (u64 i = 0; i < samples; ++i) {
            double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
            first.add(w * residuals[i]);
            square.add(w * residuals[i] * residuals[i]);
        }
        double logT = std::log(static_cast<double>(T));
        double bound = std::pow(static_cast<double>(T), 1.5) * std::pow(logT, 3.0) / sqrt_n +
                       static_cast<double>(T) * std::pow(logT, 4.0);
        stats.mean_first_power = first.value() * step / bound;
        stats.mean_square = square.value() * step / bound;
    }
    return stats;
}

}  // namespace deltalab::voronoi
