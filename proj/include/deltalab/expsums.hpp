#pragma once

// Direct evaluation of exponential sums sum e(f(n)) with e(t) = exp(2 pi i t),
// oscillatory integrals int e^{iF(x)} dx, and the explicit-constant
// inequalities: double large sieve (constant 20), first-derivative test
// (bound 4/m), second-derivative test, sum-to-integral residual, and the
// Type I / Type II bilinear sums over d(m1) d(m2).
//
// Phase functions are a closed set of families with analytic derivatives so
// that every precondition below is machine-checkable from closed forms.
// Convention per operation matches the classical statement it checks: exp_sum uses
// e(f) = exp(2 pi i f), exp_integral uses exp(i F).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "deltalab/errors.hpp"
#include "deltalab/numeric.hpp"
#include "deltalab/parallel.hpp"
#include "deltalab/sieves.hpp"

namespace deltalab::expsums {

using cd = std::complex<double>;

inline constexpr u64 kExpSumBudget = 100'000'000;      // integers per sum
inline constexpr u64 kBilinearBudget = 10'000;         // points per list
inline constexpr u64 kTypeSumBudget = 100'000'000;     // M1*M2*H*L
inline constexpr u64 kPanelBudget = u64{1} << 22;      // quadrature panels

struct PhaseFunction {
    enum class Family { constant, linear, power, sqrt_bilinear };

    Family family = Family::constant;
    double c = 0.0;      // constant value / slope / power coefficient
    double theta = 0.0;  // exponent of the power family
    double m1 = 0.0, m2 = 0.0;

    static PhaseFunction constant(double v) { return {Family::constant, v, 0.0, 0, 0}; }
    static PhaseFunction linear(double slope) { return {Family::linear, slope, 1.0, 0, 0}; }
    static PhaseFunction power(double coeff, double exponent) {
        return {Family::power, coeff, exponent, 0, 0};
    }
    // 2 (sqrt(m1) - sqrt(m2)) sqrt(n), the bilinear phase of the Type sums
    static PhaseFunction sqrt_bilinear(double m1, double m2) {
        PhaseFunction f{Family::sqrt_bilinear, 2.0 * (std::sqrt(m1) - std::sqrt(m2)), 0.5,
                        m1, m2};
        return f;
    }

    double value(double x) const {
        switch (family) {
            case Family::constant: return c;
            case Family::linear: return c * x;
            default: return c * std::pow(x, theta);
        }
    }
    double d1(double x) const {
        switch (family) {
            case Family::constant: return 0.0;
            case Family::linear: return c;
            default: return c * theta * std::pow(x, theta - 1.0);
        }
    }
    double d2(double x) const {
        switch (family) {
            case Family::constant:
            case Family::linear: return 0.0;
            default: return c * theta * (theta - 1.0) * std::pow(x, theta - 2.0);
        }
    }
    // k*f stays inside the closed family set
    PhaseFunction scaled(double k) const {
        PhaseFunction f = *this;
        f.c *= k;
        if (family == Family::sqrt_bilinear) f.family = Family::power;
        return f;
    }
    // derivatives are monotone for every family, so extrema sit at endpoints
    double max_abs_d1(double a, double b) const {
        return std::max(std::abs(d1(a)), std::abs(d1(b)));
    }
    bool fractional_power() const {
        return (family == Family::power || family == Family::sqrt_bilinear) &&
               theta != std::floor(theta);
    }
};

namespace detail {
// fractional powers of non-positive arguments would yield silent NaNs
inline void check_phase_domain(const PhaseFunction& f, double a) {
    if (f.fractional_power() && !(a >= 0.0))
        throw precondition_error("power-family phases need a nonnegative range");
}
}  // namespace detail

inline cd unit_phase(double t) {  // e(t) = exp(2 pi i t)
    double r = t - std::round(t);
    double u = 2.0 * M_PI * r;
    return {std::cos(u), std::sin(u)};
}

namespace detail {

// deterministic blocked reduction: fixed grain, serial fold in block order
template <typename Term>
cd blocked_complex_sum(u64 count, Term&& term) {
    const u64 grain = u64{1} << 16;
    u64 blocks = (count + grain - 1) / grain;
    std::vector<cd> partial(blocks, cd{});
    parallel_blocks(blocks, [&](std::size_t blk) {
        u64 lo = blk * grain, hi = std::min(count, lo + grain);
        partial[blk] = pairwise_sum<cd>(lo, hi, term);
    });
    cd total{};
    for (const cd& p : partial) total += p;
    return total;
}

}  // namespace detail

// sum_{a < n <= b} e(f(n)), direct evaluation, pairwise-deterministic.
inline cd exp_sum(const PhaseFunction& f, double a, double b) {
    if (!(a <= b)) throw precondition_error("exp_sum needs a <= b");
    detail::check_phase_domain(f, a);
    i64 first = static_cast<i64>(std::floor(a)) + 1;
    i64 last = static_cast<i64>(std::floor(b));
    if (last < first) return {};
    u64 count = static_cast<u64>(last - first + 1);
    if (count > kExpSumBudget)
        throw budget_error("exp_sum over " + std::to_string(count) + " integers exceeds budget");
    return detail::blocked_complex_sum(count, [&](u64 i) {
        return unit_phase(f.value(static_cast<double>(first + static_cast<i64>(i))));
    });
}

// int_a^b exp(i F(x)) dx by panelled Gauss-Legendre; panel density follows
// max |F'| (>= 4 panels per oscillation + 1), then the whole integral is
// recomputed at doubled resolution until the two agree to 1e-8 relative
// (with an absolute floor tied to machine precision of the panel sums).
inline cd exp_integral(const PhaseFunction& F, double a, double b) {
    if (!(a < b)) throw precondition_error("exp_integral needs a < b");
    detail::check_phase_domain(F, a);
    static const QuadratureRule rule = gauss_legendre(16);
    double per_unit = 4.0 * F.max_abs_d1(a, b) / (2.0 * M_PI) + 1.0;
    u64 panels = static_cast<u64>(std::ceil((b - a) * per_unit));
    if (panels < 1) panels = 1;
    if (panels > kPanelBudget)
        throw budget_error("quadrature would need " + std::to_string(panels) + " panels");

    auto integrate = [&](u64 P) {
        double h = (b - a) / static_cast<double>(P);
        return detail::blocked_complex_sum(P, [&](u64 p) {
            double left = a + h * static_cast<double>(p);
            cd acc{};
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                double x = left + 0.5 * h * (rule.nodes[q] + 1.0);
                double phase = F.value(x);
                acc += rule.weights[q] * cd{std::cos(phase), std::sin(phase)};
            }
            return acc * (0.5 * h);
        });
    };

    cd coarse = integrate(panels);
    double achieved = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 6; ++round) {
        if (2 * panels > kPanelBudget) break;
        panels *= 2;
        cd fine = integrate(panels);
        achieved = std::abs(fine - coarse);
        if (achieved <= 1e-8 * std::abs(fine) + 1e-13 * (b - a)) return fine;
        coarse = fine;
    }
    throw convergence_error("quadrature did not converge; last doubling changed the result by " +
                            std::to_string(achieved));
}

// Sum-to-integral test (van der Corput): requires |f'| <= 1 - theta and f'' != 0 on [a,b].
// Returns |sum - integral| * theta, predicted to stay O(1).
inline double sum_to_integral_residual(const PhaseFunction& f, double a, double b,
                                       double theta) {
    if (!(a < b)) throw precondition_error("need a < b");
    if (!(theta > 0.0 && theta < 1.0)) throw precondition_error("theta must lie in (0,1)");
    bool curved = false;
    switch (f.family) {
        case PhaseFunction::Family::constant:
        case PhaseFunction::Family::linear: curved = false; break;
        default:
            curved = f.c != 0.0 && f.theta != 0.0 && f.theta != 1.0 && a > 0.0;
    }
    if (!curved) throw precondition_error("f'' vanishes on [a,b]: the test does not apply");
    if (f.max_abs_d1(a, b) > 1.0 - theta)
        throw precondition_error("|f'| exceeds 1 - theta on [a,b]");
    cd sum = exp_sum(f, a, b);
    cd integral = exp_integral(f.scaled(2.0 * M_PI), a, b);
    return std::abs(sum - integral) * theta;
}

struct DerivativeCheck {
    double integral_abs = 0.0;
    double bound = 0.0;
};

// First-derivative test: |int exp(i F)| <= 4/m with |F'| >= m > 0, F'
// monotonic.  Violation would falsify a theorem, hence logic_error.
inline DerivativeCheck first_derivative_check(const PhaseFunction& F, double a, double b) {
    if (!(a < b)) throw precondition_error("need a < b");
    double fa = F.d1(a), fb = F.d1(b);
    if (fa == 0.0 || fb == 0.0 || (fa < 0.0) != (fb < 0.0))
        throw precondition_error("F' must be nonvanishing of one sign on [a,b]");
    double m = std::min(std::abs(fa), std::abs(fb));
    DerivativeCheck r;
    r.integral_abs = std::abs(exp_integral(F, a, b));
    r.bound = 4.0 / m;
    if (r.integral_abs > r.bound)
        throw std::logic_error("first-derivative bound violated: implementation bug");
    return r;
}

struct SecondDerivativeRatio {
    double ratio = 0.0;
    double lambda2 = 0.0;
    double sum_abs = 0.0;
    double bound = 0.0;
};

// Second-derivative test on (a, b] with b <= 2a: |sum e(f(n))| against
// a lambda2^{1/2} + lambda2^{-1/2}, lambda2 the geometric mean of the |f''|
// band, which must stay within a factor 4.
inline SecondDerivativeRatio second_derivative_ratio(const PhaseFunction& f, double a,
                                                     double b) {
    if (!(a >= 1.0 && a <= b && b <= 2.0 * a))
        throw precondition_error("need 1 <= a <= b <= 2a");
    double da = std::abs(f.d2(a)), db = std::abs(f.d2(b));
    double lo = std::min(da, db), hi = std::max(da, db);
    if (lo <= 0.0 || hi > 4.0 * lo)
        throw precondition_error("|f''| must stay within a 4x band on [a,b]");
    SecondDerivativeRatio r;
    r.lambda2 = std::sqrt(lo * hi);
    r.sum_abs = std::abs(exp_sum(f, a, b));
    r.bound = a * std::sqrt(r.lambda2) + 1.0 / std::sqrt(r.lambda2);
    r.ratio = r.sum_abs / r.bound;
    return r;
}

struct BilinearInstance {
    std::vector<double> x_points;  // |x_r| <= X
    std::vector<double> y_points;  // |y_s| <= Y
    std::vector<cd> phi;
    std::vector<cd> psi;
    double X = 0.0;
    double Y = 0.0;
};

struct SieveCheck {
    double lhs = 0.0;  // |sum_r sum_s phi_r psi_s e(x_r y_s)|^2
    double rhs = 0.0;  // 20 (1 + XY) B_phi(X,Y) B_psi(Y,X)
};

namespace detail {

// sum over |v_i - v_j| <= window of w_i w_j  (sorted by v, prefix sums)
inline double proximity_weight_sum(std::vector<std::pair<double, double>> pts,
                                   double window) {
    std::sort(pts.begin(), pts.end());
    std::size_t n = pts.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + pts[i].second;
    double total = 0.0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (lo < n && pts[i].first - pts[lo].first > window) ++lo;
        if (hi < i) hi = i;
        while (hi + 1 < n && pts[hi + 1].first - pts[i].first <= window) ++hi;
        total += pts[i].second * (prefix[hi + 1] - prefix[lo]);
    }
    return total;
}

}  // namespace detail

// Double large sieve (explicit constant 20).  Violation -> logic_error.
inline SieveCheck double_large_sieve_check(const BilinearInstance& inst) {
    const auto& xs = inst.x_points;
    const auto& ys = inst.y_points;
    if (xs.empty() || ys.empty()) throw precondition_error("point lists must be nonempty");
    if (xs.size() != inst.phi.size() || ys.size() != inst.psi.size())
        throw precondition_error("coefficient arrays must match point arrays");
    if (xs.size() > kBilinearBudget || ys.size() > kBilinearBudget)
        throw budget_error("bilinear lists beyond " + std::to_string(kBilinearBudget));
    for (double x : xs)
        if (std::abs(x) > inst.X) throw precondition_error("|x_r| exceeds the stated X");
    for (double y : ys)
        if (std::abs(y) > inst.Y) throw precondition_error("|y_s| exceeds the stated Y");

    cd bilinear = detail::blocked_complex_sum(xs.size(), [&](u64 r) {
        cd row{};
        for (std::size_t s = 0; s < ys.size(); ++s)
            row += inst.psi[s] * unit_phase(xs[r] * ys[s]);
        return inst.phi[r] * row;
    });

    std::vector<std::pair<double, double>> xw(xs.size()), yw(ys.size());
    for (std::size_t r = 0; r < xs.size(); ++r) xw[r] = {xs[r], std::abs(inst.phi[r])};
    for (std::size_t s = 0; s < ys.size(); ++s) yw[s] = {ys[s], std::abs(inst.psi[s])};
    double b_phi = detail::proximity_weight_sum(std::move(xw), 1.0 / inst.Y);
    double b_psi = detail::proximity_weight_sum(std::move(yw), 1.0 / inst.X);

    SieveCheck r;
    r.lhs = std::norm(bilinear);
    r.rhs = 20.0 * (1.0 + inst.X * inst.Y) * b_phi * b_psi;
    if (r.lhs > r.rhs)
        throw std::logic_error("double large sieve violated: implementation bug");
    return r;
}

enum class EtaMode { ones, log, arbitrary };

struct TypeSumInstance {
    u64 m1 = 1, m2 = 1, h = 1, l = 1;  // dyadic block starts
    std::vector<cd> xi;                // on h ~ H, |xi| <= cap
    std::vector<cd> eta;               // on l ~ L
    EtaMode eta_mode = EtaMode::ones;
    double cap = 1.0;
};

struct TypeSumResult {
    cd value{};
    double abs_value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    u64 x = 0;          // H*L, the dyadic surrogate for the scale x
    bool type_one = true;
};

// Quadruple sum
//   sum_{m1~M1, m2~M2, m1!=m2} d(m1) d(m2) sum_{h~H} sum_{l~L}
//     xi_h eta_l e(2 (sqrt(m1)-sqrt(m2)) sqrt(h l))
// against the Type I bound  x^{1/2} M1^{5/4} M2 + x^{3/4} (M1 M2)^{7/8}
// (needs H <= x^{1/4}, |xi| <= 1) or the five-term Type II bound
// (needs x^{1/4} <= H <= x^{1/2}).  Regime checks are exact integer
// comparisons: H <= x^{1/4} iff H^3 <= L, H <= x^{1/2} iff H <= L.
inline TypeSumResult type_sum_eval(const TypeSumInstance& inst) {
    const u64 M1 = inst.m1, M2 = inst.m2, H = inst.h, L = inst.l;
    if (M1 < 1 || M2 < 1 || H < 1 || L < 1)
        throw precondition_error("dyadic starts must be >= 1");
    if (inst.xi.size() != H || inst.eta.size() != L)
        throw precondition_error("coefficient arrays must cover the dyadic blocks");
    u128 work = static_cast<u128>(M1) * M2 * H * L;
    if (work > kTypeSumBudget)
        throw budget_error("M1*M2*H*L exceeds " + std::to_string(kTypeSumBudget));
    for (const cd& v : inst.xi)
        if (std::abs(v) > inst.cap * (1.0 + 1e-12))
            throw precondition_error("|xi_h| exceeds the stated cap");

    TypeSumResult r;
    r.x = H * L;
    r.type_one = inst.eta_mode != EtaMode::arbitrary;
    u128 h_cubed = static_cast<u128>(H) * H * H;
    if (r.type_one) {
        if (inst.cap > 1.0)
            throw precondition_error("Type I requires |xi_h| <= 1");
        if (h_cubed > L)
            throw precondition_error("Type I regime needs H <= x^{1/4} (H^3 <= L)");
    } else {
        if (h_cubed < L || H > L)
            throw precondition_error("Type II regime needs x^{1/4} <= H <= x^{1/2}");
    }

    std::vector<std::uint16_t> d1(M1), d2(M2);
    sieves::divisor_counts_into(M1 + 1, 2 * M1 + 1, d1);
    sieves::divisor_counts_into(M2 + 1, 2 * M2 + 1, d2);
    std::vector<double> sqrt_h(H), sqrt_l(L);
    for (u64 i = 0; i < H; ++i) sqrt_h[i] = std::sqrt(static_cast<double>(H + 1 + i));
    for (u64 i = 0; i < L; ++i) sqrt_l[i] = std::sqrt(static_cast<double>(L + 1 + i));

    r.value = detail::blocked_complex_sum(M1 * M2, [&](u64 pair_idx) {
        u64 a = pair_idx / M2, b = pair_idx % M2;
        u64 v1 = M1 + 1 + a, v2 = M2 + 1 + b;
        if (v1 == v2) return cd{};
        double coeff = 2.0 * (std::sqrt(static_cast<double>(v1)) -
                              std::sqrt(static_cast<double>(v2)));
        cd inner{};
        for (u64 hh = 0; hh < H; ++hh) {
            double ch = coeff * sqrt_h[hh];
            cd row{};
            for (u64 ll = 0; ll < L; ++ll) row += inst.eta[ll] * unit_phase(ch * sqrt_l[ll]);
            inner += inst.xi[hh] * row;
        }
        return static_cast<double>(d1[a] * d2[b]) * inner;
    });
    r.abs_value = std::abs(r.value);

    double x = static_cast<double>(r.x);
    double dM1 = static_cast<double>(M1), dM2 = static_cast<double>(M2);
    if (r.type_one) {
        r.bound = std::sqrt(x) * std::pow(dM1, 1.25) * dM2 +
                  std::pow(x, 0.75) * std::pow(dM1 * dM2, 0.875);
    } else {
        r.bound = std::pow(x, 0.75) * std::pow(dM1, 1.125) * std::pow(dM2, 0.875) +
                  std::pow(x, 0.875) * dM1 * std::pow(dM2, 0.75) +
                  std::pow(x, 13.0 / 16.0) * std::pow(dM1, 19.0 / 16.0) * std::pow(dM2, 0.75) +
                  std::pow(x, 15.0 / 16.0) * std::pow(dM1 * dM2, 0.75) +
                  std::sqrt(x) * dM1 * dM2;
    }
    r.ratio = r.abs_value / r.bound;
    return r;
}

// Filled-in coefficient builders for the three eta modes.
inline TypeSumInstance make_type_sum(u64 M1, u64 M2, u64 H, u64 L, EtaMode mode,
                                     std::vector<cd> xi, std::vector<cd> eta = {},
                                     double cap = 1.0) {
    TypeSumInstance inst;
    inst.m1 = M1;
    inst.m2 = M2;
    inst.h = H;
    inst.l = L;
    inst.eta_mode = mode;
    inst.cap = cap;
    inst.xi = std::move(xi);
    if (mode == EtaMode::ones) {
        inst.eta.assign(L, cd{1.0, 0.0});
    } else if (mode == EtaMode::log) {
        inst.eta.resize(L);
        for (u64 i = 0; i < L; ++i)
            inst.eta[i] = cd{std::log(static_cast<double>(L + 1 + i)), 0.0};
    } else {
        inst.eta = std::move(eta);
    }
    return inst;
}

}  // namespace deltalab::expsums
