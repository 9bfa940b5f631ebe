#pragma once

// The headline experiments: the constant C = sum d^2(n) n^{-3/2}, continuous
// and discrete mean squares of Delta, Furuya's difference formula, the
// shifted-moment surrogate, and the prime-restricted sweep
//   S(x) = sum_{p<=x} Delta^2(p)  vs  (C/4pi^2) sum_{p<=x} sqrt(p).
//
// Everything streams over the shared divisor-prefix engine.  Accumulations
// run in a fixed order (ascending n), so results are independent of worker
// count; at every grid emission the sweep renormalizes its accumulators to
// the emitted doubles, which is what makes a checkpoint resume bit-identical
// to an uninterrupted run.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "deltalab/dd.hpp"
#include "deltalab/errors.hpp"
#include "deltalab/format.hpp"
#include "deltalab/numeric.hpp"
#include "deltalab/parallel.hpp"
#include "deltalab/sieves.hpp"
#include "deltalab/summatory.hpp"

namespace deltalab::moments {

inline constexpr u64 kMeanSquareBudget = 100'000'000;
inline constexpr u64 kFuruyaBudget = 10'000'000;
inline constexpr u64 kShiftedBudget = 10'000'000;
inline constexpr u64 kSweepBudget = 1'000'000'000;
inline constexpr u64 kConstantBudget = 100'000'000;

// ---------------------------------------------------------------------------
// constant C

struct ConstantC {
    double value = 0.0;        // tail-corrected series value
    double partial_sum = 0.0;  // raw sum over n <= n_terms
    double tail_bound = 0.0;   // bound on |value - oracle|
    double oracle = 0.0;       // zeta(3/2)^4 / zeta(3)
    double difference = 0.0;   // value - oracle
};

namespace detail {

// Coefficients of sum_{n<=x} d^2(n) ~ x (A3 L^3 + A2 L^2 + A1 L + A0),
// L = ln x, from the Laurent data of zeta(s)^4/zeta(2s) at s = 1.
inline constexpr double kDsqA3 = 0x1.9f02f6222c720p-4;  // 0.101321183642337771 = 1/pi^2
inline constexpr double kDsqA2 = 0x1.7d1a4cbe54127p-1;  // 0.744341276391456640
inline constexpr double kDsqA1 = 0x1.a5830472e7755p-1;  // 0.823265208269485020
inline constexpr double kDsqA0 = 0x1.d75f0295be190p-2;  // 0.460323372258721430

// Empirical cap on the remaining fluctuation integral after the closed-form
// tail correction, c * N^{-9/10}; c frozen from a pilot over
// N in {1e3, 1e4, 1e5, 1e6, 1e7} with two orders of magnitude of headroom.
inline constexpr double kConstantTailC = 0.5;

}  // namespace detail

// Partial sum of C with an integral-comparison tail correction: the exact
// partial data S(N) replaces the smooth count at the boundary, and
// int_N^inf Q(ln t) t^{-3/2} dt is taken in closed form.
inline ConstantC constant_C(u64 n_terms) {
    if (n_terms < 1000) throw precondition_error("constant_C requires n_terms >= 1e3");
    if (n_terms > kConstantBudget)
        throw budget_error("n_terms beyond " + std::to_string(kConstantBudget));
    CompensatedSum partial;
    u64 dsq_exact = 0;
    summatory::stream_divisor_prefix(
        n_terms, sieves::kDefaultSegmentCapacity,
        [&](u64 lo, u64 hi, std::span<const std::uint16_t> d, i64) {
            for (u64 n = lo; n < hi; ++n) {
                double dn = static_cast<double>(d[n - lo]);
                double t = static_cast<double>(n);
                partial.add(dn * dn / (t * std::sqrt(t)));
                dsq_exact += static_cast<u64>(d[n - lo]) * d[n - lo];
            }
        });
    ConstantC r;
    r.partial_sum = partial.value();
    double N = static_cast<double>(n_terms);
    double L = std::log(N);
    double p3 = ((L + 6.0) * L + 24.0) * L + 48.0;
    double p2 = (L + 4.0) * L + 8.0;
    double p1 = L + 2.0;
    double smooth_tail = 3.0 / std::sqrt(N) *
                         (detail::kDsqA3 * p3 + detail::kDsqA2 * p2 + detail::kDsqA1 * p1 +
                          detail::kDsqA0);
    double correction = smooth_tail - static_cast<double>(dsq_exact) / (N * std::sqrt(N));
    r.value = r.partial_sum + correction;
    r.tail_bound = detail::kConstantTailC * std::pow(N, -0.9);
    r.oracle = zeta_constant_C();
    r.difference = r.value - r.oracle;
    return r;
}

// ---------------------------------------------------------------------------
// continuous mean square

namespace detail {

// Rational antiderivative coefficients as exact dd values; the double
// literal 1.0/3.0 alone would poison t^3-sized terms at the 1e-7 level.
inline const dd kThird = dd(1.0) / dd(3.0);
inline const dd kNinth = dd(1.0) / dd(9.0);
inline const dd kTwoNinths = dd(2.0) / dd(9.0);
inline const dd kTwo27ths = dd(2.0) / dd(27.0);

// int_n^{n+1} (A - t ln t - B t)^2 dt in dd via the antiderivatives of
// t^2 ln^2 t, t^2 ln t, t^2, t ln t, t.
inline dd interval_square_integral(dd A, dd B, double n, dd ln_l, dd ln_u) {
    dd l(n), u(n + 1.0);
    dd l2 = l * l, u2 = u * u;
    dd l3 = l2 * l, u3 = u2 * u;
    auto F1 = [](dd t3, dd lnt) {
        return t3 * (lnt * lnt * kThird - lnt * kTwoNinths + kTwo27ths);
    };
    auto F2 = [](dd t3, dd lnt) { return t3 * (lnt * kThird - kNinth); };
    auto F4 = [](dd t2, dd lnt) { return t2 * (lnt * dd(0.5) - dd(0.25)); };
    dd result = A * A;  // times (u - l) = 1
    result += F1(u3, ln_u) - F1(l3, ln_l);
    result += dd(2.0) * B * (F2(u3, ln_u) - F2(l3, ln_l));
    result += B * B * (u3 - l3) * kThird;
    result -= dd(2.0) * A * (F4(u2, ln_u) - F4(l2, ln_l));
    result -= A * B * (u2 - l2);  // 2AB * (t^2/2)
    return result;
}

}  // namespace detail

// int_1^T Delta^2(t) dt, exact per unit interval (closed-form antiderivatives).
inline double continuous_mean_square(u64 T, bool quarter = true) {
    if (T < 2) throw precondition_error("continuous mean square requires T >= 2");
    if (T > kMeanSquareBudget)
        throw budget_error("T beyond " + std::to_string(kMeanSquareBudget));
    dd q(quarter ? 0.25 : 0.0);
    dd total(0.0);
    std::vector<i64> big_d;
    std::vector<dd> parts;
    summatory::stream_divisor_prefix(
        T - 1, sieves::kDefaultSegmentCapacity,
        [&](u64 lo, u64 hi, std::span<const std::uint16_t> d, i64 before) {
            big_d.resize(hi - lo);
            i64 run = before;
            for (u64 i = 0; i < hi - lo; ++i) {
                run += d[i];
                big_d[i] = run;
            }
            parts.assign(hi - lo, dd(0.0));
            parallel_for(0, hi - lo, u64{1} << 14, [&](u64 a, u64 b) {
                for (u64 i = a; i < b; ++i) {
                    double n = static_cast<double>(lo + i);
                    dd A = dd_from_i64(big_d[i]) - q;
                    parts[i] = detail::interval_square_integral(
                        A, kTwoGammaMinusOne, n, dd_log(dd(n)), dd_log(dd(n + 1.0)));
                }
            });
            for (const dd& p : parts) total += p;
        });
    return to_double(total);
}

// Same integral by 5-point Gauss-Legendre per unit interval; used as the
// independent cross-check of the closed forms.
inline double continuous_mean_square_quadrature(u64 T, bool quarter = true) {
    if (T < 2) throw precondition_error("continuous mean square requires T >= 2");
    if (T > kMeanSquareBudget)
        throw budget_error("T beyond " + std::to_string(kMeanSquareBudget));
    static const QuadratureRule rule = gauss_legendre(5);
    dd q(quarter ? 0.25 : 0.0);
    dd total(0.0);
    std::vector<i64> big_d;
    std::vector<dd> parts;
    summatory::stream_divisor_prefix(
        T - 1, sieves::kDefaultSegmentCapacity,
        [&](u64 lo, u64 hi, std::span<const std::uint16_t> d, i64 before) {
            big_d.resize(hi - lo);
            i64 run = before;
            for (u64 i = 0; i < hi - lo; ++i) {
                run += d[i];
                big_d[i] = run;
            }
            parts.assign(hi - lo, dd(0.0));
            parallel_for(0, hi - lo, u64{1} << 12, [&](u64 a, u64 b) {
                for (u64 i = a; i < b; ++i) {
                    double n = static_cast<double>(lo + i);
                    dd A = dd_from_i64(big_d[i]) - q;
                    dd acc(0.0);
                    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                        double t = n + 0.5 * (rule.nodes[k] + 1.0);
                        dd td(t);
                        dd val = A - td * dd_log(td) - kTwoGammaMinusOne * td;
                        acc += dd(rule.weights[k]) * val * val;
                    }
                    parts[i] = acc * dd(0.5);
                }
            });
            for (const dd& p : parts) total += p;
        });
    return to_double(total);
}

// ---------------------------------------------------------------------------
// discrete mean square and Furuya's difference

// D_2(x) = sum_{n<=x} Delta^2(n), streamed, compensated in ascending order.
inline double discrete_mean_square(u64 x, bool quarter = true) {
    if (x < 1) throw precondition_error("discrete mean square requires x >= 1");
    if (x > kMeanSquareBudget)
        throw budget_error("x beyond " + std::to_string(kMeanSquareBudget));
    summatory::DeltaStream stream(x, sieves::kDefaultSegmentCapacity, quarter);
    summatory::DeltaSample s;
    CompensatedSum sum;
    while (stream.next(s)) sum.add(s.delta * s.delta);
    return sum.value();
}

struct FuruyaCheck {
    double d2 = 0.0;        // discrete mean square
    double c2 = 0.0;        // continuous mean square
    double residual = 0.0;  // D2 - C2 - main terms
    double normalized = 0.0;  // residual / (x^{3/4} log x)
};

// D2(x) - C2(x) - x log^2 x / 6 - (8g-1)/12 x log x - (8g^2-2g+1)/12 x,
// both mean squares taken in one streaming pass.
//
// The difference formula is convention-specific: it holds for Delta without
// the -1/4 shift.  Shifting by -1/4 perturbs D2 - C2 by
// (1/2)(sum Delta - int Delta) ~ x log x / 4, which would swamp the
// x^{3/4} log x residual, so this check always uses the unshifted Delta.
inline FuruyaCheck furuya_check(u64 x) {
    if (x < 2) throw precondition_error("furuya_check requires x >= 2");
    if (x > kFuruyaBudget) throw budget_error("x beyond " + std::to_string(kFuruyaBudget));
    const bool quarter = false;
    dd q(0.0);
    dd c2(0.0);
    CompensatedSum d2;
    std::vector<i64> big_d;
    std::vector<double> deltas;
    std::vector<dd> parts;
    summatory::stream_divisor_prefix(
        x, sieves::kDefaultSegmentCapacity,
        [&](u64 lo, u64 hi, std::span<const std::uint16_t> d, i64 before) {
            u64 width = hi - lo;
            big_d.resize(width);
            i64 run = before;
            for (u64 i = 0; i < width; ++i) {
                run += d[i];
                big_d[i] = run;
            }
            deltas.resize(width);
            summatory::segment_deltas(lo, big_d, quarter, deltas);
            parts.assign(width, dd(0.0));
            parallel_for(0, width, u64{1} << 14, [&](u64 a, u64 b) {
                for (u64 i = a; i < b; ++i) {
                    u64 n = lo + i;
                    if (n >= x) continue;  // C2 integrates over [1, x) only
                    double nd = static_cast<double>(n);
                    dd A = dd_from_i64(big_d[i]) - q;
                    parts[i] = detail::interval_square_integral(
                        A, kTwoGammaMinusOne, nd, dd_log(dd(nd)), dd_log(dd(nd + 1.0)));
                }
            });
            for (u64 i = 0; i < width; ++i) {
                d2.add(deltas[i] * deltas[i]);
                c2 += parts[i];
            }
        });
    FuruyaCheck r;
    r.d2 = d2.value();
    r.c2 = to_double(c2);
    dd xd(static_cast<double>(x));
    dd lx = dd_log(xd);
    dd twelfth = dd(1.0) / dd(12.0);
    dd c1 = (dd(8.0) * kEulerGamma - dd(1.0)) * twelfth;
    dd c0 = (dd(8.0) * kEulerGamma * kEulerGamma - dd(2.0) * kEulerGamma + dd(1.0)) *
            twelfth;
    dd residual = dd(r.d2) - c2 - xd * lx * lx * (dd(1.0) / dd(6.0)) - c1 * xd * lx - c0 * xd;
    r.residual = to_double(residual);
    r.normalized = r.residual / (std::pow(static_cast<double>(x), 0.75) *
                                 std::log(static_cast<double>(x)));
    return r;
}

// ---------------------------------------------------------------------------
// shifted-moment surrogate

struct ShiftedMoment {
    double value = 0.0;       // sum_{T<n<=2T} max_{h<=Hmax} (Delta(n+h)-Delta(n))^2
    double normalized = 0.0;  // value / (Hmax T log^5 T)
};

inline ShiftedMoment shifted_delta_moment(u64 T, u64 h_max, bool quarter = true) {
    if (T < 2) throw precondition_error("shifted moment requires T >= 2");
    if (T > kShiftedBudget) throw budget_error("T beyond " + std::to_string(kShiftedBudget));
    if (h_max < 1 || h_max > T) throw precondition_error("need 1 <= Hmax <= T");
    std::vector<double> ring(h_max + 1, 0.0);
    summatory::DeltaStream stream(2 * T + h_max, sieves::kDefaultSegmentCapacity, quarter);
    summatory::DeltaSample s;
    CompensatedSum sum;
    while (stream.next(s)) {
        u64 n = static_cast<u64>(s.x);
        ring[n % (h_max + 1)] = s.delta;
        if (n < h_max + 1) continue;
        u64 base = n - h_max;  // its full shift window just completed
        if (base <= T || base > 2 * T) continue;
        double d0 = ring[base % (h_max + 1)];
        double worst = 0.0;
        for (u64 h = 1; h <= h_max; ++h) {
            double diff = ring[(base + h) % (h_max + 1)] - d0;
            worst = std::max(worst, diff * diff);
        }
        sum.add(worst);
    }
    ShiftedMoment r;
    r.value = sum.value();
    double logT = std::log(static_cast<double>(T));
    r.normalized = r.value / (static_cast<double>(h_max) * static_cast<double>(T) *
                              std::pow(logT, 5.0));
    return r;
}

// ---------------------------------------------------------------------------
// prime moment sweep

struct SweepRow {
    u64 x = 0;
    double S = 0.0;
    double main = 0.0;
    bool has_ratio = false;
    double ratio = 0.0;
    double scaled_error = 0.0;       // (S - main) / x^{23/16}
    double sup_huxley_ratio = 0.0;   // max_{2<=n<=x} |Delta(n)| / Huxley envelope
};

struct SweepReport {
    std::vector<SweepRow> rows;
};

inline constexpr char kSweepHeader[] = "x,S,main,ratio,scaled_error,sup_huxley_ratio";

inline double huxley_envelope(double n) {
    return std::pow(n, 131.0 / 416.0) * std::pow(std::log(n), 26497.0 / 8320.0);
}

// C/(4 pi^2), the prime-moment main-term coefficient.
inline double sweep_main_coefficient() {
    static const double k = zeta_constant_C() / (4.0 * M_PI * M_PI);
    return k;
}

namespace detail {

inline std::string sweep_row_line(const SweepRow& r) {
    std::string line = format_u64(r.x);
    line += ',';
    line += format_double(r.S);
    line += ',';
    line += format_double(r.main);
    line += ',';
    if (r.has_ratio) line += format_double(r.ratio);
    line += ',';
    line += format_double(r.scaled_error);
    line += ',';
    line += format_double(r.sup_huxley_ratio);
    return line;
}

inline SweepRow parse_sweep_row(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    if (fields.size() != 6)
        throw checkpoint_error("checkpoint row has " + std::to_string(fields.size()) +
                               " fields, expected 6: '" + line + "'");
    SweepRow r;
    try {
        r.x = static_cast<u64>(std::stoull(fields[0]));
        r.S = parse_double(fields[1]);
        r.main = parse_double(fields[2]);
        r.has_ratio = !fields[3].empty();
        if (r.has_ratio) r.ratio = parse_double(fields[3]);
        r.scaled_error = parse_double(fields[4]);
        r.sup_huxley_ratio = parse_double(fields[5]);
    } catch (const std::exception& e) {
        throw checkpoint_error(std::string("unparseable checkpoint row: ") + e.what());
    }
    return r;
}

}  // namespace detail

inline std::string sweep_csv(const SweepReport& report) {
    std::string out = kSweepHeader;
    out += '\n';
    for (const SweepRow& r : report.rows) {
        out += detail::sweep_row_line(r);
        out += '\n';
    }
    return out;
}

// Decades x {1,2,5} from 1e4 up to x_max (inclusive when reached).
inline std::vector<u64> default_sweep_grid(u64 x_max) {
    std::vector<u64> grid;
    for (u64 decade = 10000; decade <= x_max; decade *= 10) {
        for (u64 m : {u64{1}, u64{2}, u64{5}}) {
            u64 v = decade * m;
            if (v <= x_max) grid.push_back(v);
        }
    }
    if (x_max >= 10000 && (grid.empty() || grid.back() != x_max)) grid.push_back(x_max);
    return grid;
}

// One streaming pass to the last grid point: exact D(n), Delta(p)^2 and
// sqrt(p) accumulated in ascending order at primes, the Huxley sup over all
// n >= 2, one row per grid point.  With a checkpoint path the rows are
// appended as they complete and a later run resumes after the last complete
// row, continuing bit-identically.
inline SweepReport prime_moment_sweep(const std::vector<u64>& x_grid,
                                      u64 segment_size = sieves::kDefaultSegmentCapacity,
                                      const std::string& checkpoint_path = {},
                                      bool quarter = true) {
    if (x_grid.empty()) return {};
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (x_grid[i] < 1) throw precondition_error("grid points must be >= 1");
        if (i > 0 && x_grid[i] <= x_grid[i - 1])
            throw precondition_error("grid must be strictly ascending");
    }
    if (x_grid.back() > kSweepBudget)
        throw precondition_error("sweep bounded at x <= " + std::to_string(kSweepBudget));
    if (segment_size < 1) throw precondition_error("segment_size must be >= 1");

    const double kC4 = sweep_main_coefficient();

    SweepReport report;
    std::size_t next_grid = 0;
    u64 n_start = 1;
    u128 d_run = 0;
    CompensatedSum S, P;
    double sup = 0.0;

    // resume from the last complete checkpoint row, if any
    std::ofstream ckpt_out;
    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path, std::ios::binary);
        std::string content;
        if (in) {
            content.assign(std::istreambuf_iterator<char>(in), {});
        }
        std::vector<std::string> lines;
        std::size_t pos = 0;
        while (true) {
            std::size_t nl = content.find('\n', pos);
            if (nl == std::string::npos) break;  // trailing fragment handled below
            lines.push_back(content.substr(pos, nl - pos));
            pos = nl + 1;
        }
        if (pos < content.size()) {
            // drop a torn trailing write so the lines appended next start clean
            std::error_code ec;
            std::filesystem::resize_file(checkpoint_path, pos, ec);
            if (ec)
                throw checkpoint_error("cannot truncate torn checkpoint '" +
                                       checkpoint_path + "': " + ec.message());
        }
        bool fresh = lines.empty();
        if (!fresh) {
            if (lines[0] != kSweepHeader)
                throw checkpoint_error("checkpoint header mismatch: '" + lines[0] + "'");
            for (std::size_t i = 1; i < lines.size(); ++i) {
                SweepRow row = detail::parse_sweep_row(lines[i]);
                std::size_t gi = i - 1;
                if (gi >= x_grid.size() || x_grid[gi] != row.x)
                    throw checkpoint_error(
                        "checkpoint rows are not a prefix of the requested grid (row x = " +
                        std::to_string(row.x) + ")");
                report.rows.push_back(row);
            }
            if (!report.rows.empty()) {
                const SweepRow& last = report.rows.back();
                next_grid = report.rows.size();
                n_start = last.x + 1;
                d_run = static_cast<u128>(summatory::divisor_summatory(last.x));
                S = CompensatedSum{last.S, 0.0};
                P = CompensatedSum{last.main / kC4, 0.0};
                sup = last.sup_huxley_ratio;
            }
        }
        ckpt_out.open(checkpoint_path, std::ios::binary | std::ios::app);
        if (!ckpt_out)
            throw checkpoint_error("cannot open checkpoint '" + checkpoint_path + "'");
        if (fresh) {
            ckpt_out << kSweepHeader << '\n';
            ckpt_out.flush();
        }
    }

    std::vector<i64> big_d;
    std::vector<double> deltas, huxley;

    auto emit = [&](u64 x) {
        SweepRow row;
        row.x = x;
        row.S = S.value();
        double p_emit = P.value();
        row.main = kC4 * p_emit;
        row.has_ratio = row.main > 0.0;
        if (row.has_ratio) row.ratio = row.S / row.main;
        row.scaled_error =
            (row.S - row.main) / std::pow(static_cast<double>(x), 23.0 / 16.0);
        row.sup_huxley_ratio = sup;
        report.rows.push_back(row);
        // renormalize to the emitted doubles: a resumed run recovers exactly
        // this state from the row, so both paths continue identically
        S = CompensatedSum{row.S, 0.0};
        P = CompensatedSum{row.main / kC4, 0.0};
        sup = row.sup_huxley_ratio;
        if (ckpt_out.is_open()) {
            ckpt_out << detail::sweep_row_line(row) << '\n';
            ckpt_out.flush();
        }
    };

    // grid points already covered by n_start - 1 must have come from the
    // checkpoint; anything to compute starts at n_start
    for (u64 lo = n_start; next_grid < x_grid.size();) {
        u64 target = x_grid.back();
        u64 hi = std::min(target + 1, lo + segment_size);
        u64 width = hi - lo;
        std::vector<std::uint16_t> d_counts(width, 0);
        sieves::divisor_counts_into(lo, hi, d_counts);
        auto primes = sieves::primes_in(lo, hi);

        big_d.resize(width);
        u128 run = d_run;
        for (u64 i = 0; i < width; ++i) {
            run += d_counts[i];
            if (run > static_cast<u128>(INT64_MAX))
                throw std::overflow_error("D accumulator left 64-bit range");
            big_d[i] = static_cast<i64>(run);
        }
        d_run = run;

        deltas.resize(width);
        summatory::segment_deltas(lo, big_d, quarter, deltas);
        huxley.resize(width);
        parallel_for(0, width, u64{1} << 14, [&](u64 a, u64 b) {
            for (u64 i = a; i < b; ++i) {
                u64 n = lo + i;
                huxley[i] =
                    n >= 2 ? std::abs(deltas[i]) / huxley_envelope(static_cast<double>(n))
                           : 0.0;
            }
        });

        std::size_t prime_idx = 0;
        for (u64 n = lo; n < hi; ++n) {
            u64 i = n - lo;
            if (huxley[i] > sup) sup = huxley[i];
            if (prime_idx < primes.size() && primes[prime_idx] == n) {
                S.add(deltas[i] * deltas[i]);
                P.add(std::sqrt(static_cast<double>(n)));
                ++prime_idx;
            }
            while (next_grid < x_grid.size() && x_grid[next_grid] == n) {
                emit(n);
                ++next_grid;
            }
        }
        lo = hi;
    }
    return report;
}

}  // namespace deltalab::moments
