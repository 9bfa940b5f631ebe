#pragma once

// Randomized and frozen-grid suites over the exponential-sum and spacing
// inequalities.  The CLI's expsum-suite subcommand and the acceptance gate
// both run these, so the instance generators live here, seeded and
// deterministic.  Theorem-true checks (double large sieve, pair proximity,
// first-derivative) count violations; asymptotic checks record their worst
// ratio for comparison against frozen constants.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "deltalab/expsums.hpp"
#include "deltalab/spacing.hpp"

namespace deltalab::suites {

inline constexpr u64 kDefaultSeed = 0x5EED5EED;

struct SuiteRow {
    std::string check;
    u64 instances = 0;
    u64 violations = 0;
    double worst = 0.0;  // largest ratio / deviation seen
};

inline expsums::BilinearInstance random_bilinear(std::mt19937_64& rng, std::size_t max_pts) {
    std::uniform_int_distribution<std::size_t> size(1, max_pts);
    std::uniform_real_distribution<double> cap(0.5, 50.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    expsums::BilinearInstance inst;
    inst.X = cap(rng);
    inst.Y = cap(rng);
    std::size_t R = size(rng), S = size(rng);
    std::uniform_real_distribution<double> ux(-inst.X, inst.X), uy(-inst.Y, inst.Y);
    for (std::size_t r = 0; r < R; ++r) {
        inst.x_points.push_back(ux(rng));
        double a = angle(rng);
        inst.phi.push_back({std::cos(a), std::sin(a)});  // unimodular
    }
    for (std::size_t s = 0; s < S; ++s) {
        inst.y_points.push_back(uy(rng));
        double a = angle(rng);
        inst.psi.push_back({std::cos(a), std::sin(a)});
    }
    return inst;
}

inline SuiteRow dls_suite(u64 seed, u64 instances, std::size_t max_pts = 64) {
    std::mt19937_64 rng(seed);
    SuiteRow row{"double_large_sieve", instances, 0, 0.0};
    for (u64 i = 0; i < instances; ++i) {
        auto inst = random_bilinear(rng, max_pts);
        try {
            auto check = expsums::double_large_sieve_check(inst);
            if (check.rhs > 0.0) row.worst = std::max(row.worst, check.lhs / check.rhs);
        } catch (const std::logic_error&) {
            ++row.violations;
        }
    }
    return row;
}

inline SuiteRow pair_proximity_suite(u64 seed, u64 instances, std::size_t max_pts = 1000) {
    std::mt19937_64 rng(seed);
    SuiteRow row{"pair_proximity", instances, 0, 0.0};
    std::uniform_int_distribution<std::size_t> size(1, max_pts);
    std::uniform_real_distribution<double> width(0.1, 100.0);
    for (u64 i = 0; i < instances; ++i) {
        double W = width(rng);
        std::uniform_real_distribution<double> point(0.0, W);
        std::uniform_real_distribution<double> del(0.0, W / 4.0);
        std::vector<double> a(size(rng)), b(size(rng));
        for (double& v : a) v = point(rng);
        for (double& v : b) v = point(rng);
        try {
            auto check = spacing::pair_proximity_check(a, b, del(rng));
            if (check.rhs > 0.0)
                row.worst = std::max(row.worst, static_cast<double>(check.lhs) / check.rhs);
        } catch (const std::logic_error&) {
            ++row.violations;
        }
    }
    return row;
}

inline expsums::PhaseFunction random_monotone_phase(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(0.1, 20.0);
    std::uniform_real_distribution<double> expo(0.2, 1.8);
    std::uniform_int_distribution<int> kind(0, 2);
    double sign = (rng() & 1) ? 1.0 : -1.0;
    switch (kind(rng)) {
        case 0: return expsums::PhaseFunction::linear(sign * coeff(rng));
        case 1: {
            double t = expo(rng);
            if (std::abs(t - 1.0) < 0.05) t = 1.25;  // keep F'' of one sign, away from linear
            return expsums::PhaseFunction::power(sign * coeff(rng), t);
        }
        default: return expsums::PhaseFunction::power(sign * coeff(rng), 0.5);
    }
}

inline SuiteRow first_derivative_suite(u64 seed, u64 instances) {
    std::mt19937_64 rng(seed);
    SuiteRow row{"first_derivative", instances, 0, 0.0};
    std::uniform_real_distribution<double> start(0.5, 100.0);
    std::uniform_real_distribution<double> stretch(1.1, 3.0);
    for (u64 i = 0; i < instances; ++i) {
        auto F = random_monotone_phase(rng);
        double a = start(rng);
        double b = a * stretch(rng);
        try {
            auto check = expsums::first_derivative_check(F, a, b);
            row.worst = std::max(row.worst, check.integral_abs / check.bound);
        } catch (const std::logic_error&) {
            ++row.violations;
        }
    }
    return row;
}

inline SuiteRow conjugation_suite(u64 seed, u64 instances) {
    std::mt19937_64 rng(seed);
    SuiteRow row{"exp_sum_conjugation", instances, 0, 0.0};
    std::uniform_real_distribution<double> start(0.0, 50.0);
    std::uniform_real_distribution<double> len(1.0, 400.0);
    for (u64 i = 0; i < instances; ++i) {
        auto f = random_monotone_phase(rng);
        double a = start(rng);
        double b = a + len(rng);
        auto s = expsums::exp_sum(f, a, b);
        auto t = expsums::exp_sum(f.scaled(-1.0), a, b);
        double diff = std::abs(t - std::conj(s));
        row.worst = std::max(row.worst, diff);
        if (diff != 0.0) ++row.violations;  // sign flip must be exact
    }
    return row;
}

inline SuiteRow trivial_bound_suite(u64 seed, u64 instances) {
    std::mt19937_64 rng(seed);
    SuiteRow row{"exp_sum_trivial_bound", instances, 0, 0.0};
    std::uniform_real_distribution<double> start(0.0, 50.0);
    std::uniform_real_distribution<double> len(0.25, 300.0);
    for (u64 i = 0; i < instances; ++i) {
        auto f = random_monotone_phase(rng);
        double a = start(rng);
        double b = a + len(rng);
        double n_terms = std::floor(b) - std::floor(a);
        if (n_terms < 1) continue;
        double ratio = std::abs(expsums::exp_sum(f, a, b)) / n_terms;
        row.worst = std::max(row.worst, ratio);
        if (ratio > 1.0 + 1e-12) ++row.violations;
    }
    return row;
}

// Linear phases have the closed form int_a^b e^{icx} dx = (e^{icb}-e^{ica})/(ic).
inline SuiteRow integral_closed_form_suite(u64 seed, u64 instances) {
    std::mt19937_64 rng(seed);
    SuiteRow row{"exp_integral_closed_form", instances, 0, 0.0};
    std::uniform_real_distribution<double> coeff(0.1, 40.0);
    std::uniform_real_distribution<double> start(-20.0, 20.0);
    std::uniform_real_distribution<double> len(0.5, 30.0);
    for (u64 i = 0; i < instances; ++i) {
        double c = coeff(rng) * ((rng() & 1) ? 1.0 : -1.0);
        double a = start(rng);
        double b = a + len(rng);
        auto got = expsums::exp_integral(expsums::PhaseFunction::linear(c), a, b);
        std::complex<double> ic(0.0, c);
        auto want = (std::exp(ic * b) - std::exp(ic * a)) / ic;
        double rel = std::abs(got - want) / std::abs(want);
        row.worst = std::max(row.worst, rel);
        if (rel > 1e-8) ++row.violations;
    }
    return row;
}

// Frozen family grid for the sum-to-integral test: f = c sqrt(x) on [T, 2T]
// with max |f'| = s, so theta = 1 - s; plus a cube-root family.
inline SuiteRow sum_to_integral_sweep() {
    SuiteRow row{"sum_to_integral", 0, 0, 0.0};
    const double slack = 1.0 - 1e-9;  // keep max |f'| strictly under 1 - theta
    for (double T : {100.0, 1000.0, 10000.0}) {
        for (double s : {0.1, 0.5, 0.8}) {
            {
                double c = 2.0 * std::sqrt(T) * s * slack;  // |f'| peaks at x = T
                auto f = expsums::PhaseFunction::power(c, 0.5);
                double r = expsums::sum_to_integral_residual(f, T, 2.0 * T, 1.0 - s);
                row.worst = std::max(row.worst, r);
                ++row.instances;
            }
            {
                double c = 3.0 * std::pow(T, 2.0 / 3.0) * s * slack;
                auto f = expsums::PhaseFunction::power(c, 1.0 / 3.0);
                double r = expsums::sum_to_integral_residual(f, T, 2.0 * T, 1.0 - s);
                row.worst = std::max(row.worst, r);
                ++row.instances;
            }
        }
    }
    return row;
}

// Frozen grid for the second-derivative test: c sqrt(n) on (N, 2N] and a
// gently curved quadratic.
inline SuiteRow second_derivative_grid() {
    SuiteRow row{"second_derivative", 0, 0, 0.0};
    for (double N : {1000.0, 10000.0, 100000.0}) {
        for (double c : {0.1, 1.0, 10.0}) {
            auto f = expsums::PhaseFunction::power(c, 0.5);
            auto r = expsums::second_derivative_ratio(f, N, 2.0 * N);
            row.worst = std::max(row.worst, r.ratio);
            ++row.instances;
        }
    }
    for (double eps : {1e-7, 1e-6, 1e-5}) {
        auto f = expsums::PhaseFunction::power(eps, 2.0);
        auto r = expsums::second_derivative_ratio(f, 1000.0, 2000.0);
        row.worst = std::max(row.worst, r.ratio);
        ++row.instances;
    }
    return row;
}

inline std::vector<SuiteRow> expsum_suite(u64 seed = kDefaultSeed) {
    return {
        conjugation_suite(seed + 1, 100),
        trivial_bound_suite(seed + 2, 100),
        integral_closed_form_suite(seed + 3, 100),
        dls_suite(seed + 4, 200),
        first_derivative_suite(seed + 5, 100),
        sum_to_integral_sweep(),
        second_derivative_grid(),
    };
}

}  // namespace deltalab::suites
