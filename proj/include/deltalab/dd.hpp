#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving ~32
// significant digits.  Used wherever the main term x*log(x) + (2*gamma-1)*x
// cancels against an exact integer (the difference is ~1e-6 of either side
// at x ~ 1e9) and for oscillatory phase reduction.  Algorithms are the
// classical error-free transformations (Dekker, Knuth) as used in the QD
// library.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace deltalab {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// requires |a| >= |b| (or a == 0)
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    dd t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

inline double to_double(dd a) { return a.hi + a.lo; }

// Exact for |v| < 2^62 (far beyond every accumulator in this project).
inline dd dd_from_i64(std::int64_t v) {
    double h = static_cast<double>(v);
    double l = static_cast<double>(v - static_cast<std::int64_t>(h));
    return {h, l};
}

inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }

inline dd dd_floor(dd a) {
    double f = std::floor(a.hi);
    if (f != a.hi) return {f, 0.0};
    // hi is an integer: the fractional information lives entirely in lo
    return detail::two_sum(f, std::floor(a.lo));
}

inline dd dd_frac(dd a) { return a - dd_floor(a); }

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0) return {0.0, 0.0};
    double y = std::sqrt(a.hi);
    dd ydd(y);
    dd err = a - ydd * ydd;
    return ydd + err / dd(2.0 * y);  // one Heron step squares the seed's error
}

// --- constants (hi/lo split exact to ~1e-32) ---

// gamma = 0.577215664901532860606512090082402431
inline constexpr dd kEulerGamma{0x1.2788cfc6fb619p-1, -0x1.6cb90701fbfabp-58};
// 2*gamma - 1 = 0.154431329803065721213024180164804862
inline constexpr dd kTwoGammaMinusOne{0x1.3c467e37db0c8p-3, -0x1.6cb90701fbfabp-57};
// ln 2 = 0.693147180559945309417232121458176568
inline constexpr dd kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
// 2*pi = 6.28318530717958647692528676655900577
inline constexpr dd kTwoPi{0x1.921fb54442d18p+2, 0x1.1a62633145c07p-52};
// pi = 3.14159265358979323846264338327950288
inline constexpr dd kPi{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53};
// pi/4 = 0.785398163397448309615660845819875721
inline constexpr dd kPiOver4{0x1.921fb54442d18p-1, 0x1.1a62633145c07p-55};
// 1/(sqrt(2)*pi) = 0.225079079039276517388799797751685146
inline constexpr dd kInvSqrt2Pi{0x1.ccf6429be6621p-3, 0x1.fce159c2bb59bp-59};

namespace detail {

// ln on a 65-entry dyadic grid plus a short atanh series.  Everything is
// anchored to the series 2*atanh(w) = 2w(1 + w^2/3 + w^4/5 + ...), so the
// table needs no external constants.
struct LogTable {
    dd ln_t[65];       // ln(1 + k/64)
    dd inv_odd[8];     // 1/3, 1/5, ..., 1/17

    LogTable() {
        for (int k = 0; k < 8; ++k) inv_odd[k] = dd(1.0) / dd(2.0 * k + 3.0);
        for (int k = 0; k <= 64; ++k) ln_t[k] = atanh_log(dd(1.0 + k / 64.0));
    }

    // ln(t) = 2*atanh((t-1)/(t+1)), |arg| <= 1/3: full dd accuracy at 40 terms
    static dd atanh_log(dd t) {
        dd w = (t - dd(1.0)) / (t + dd(1.0));
        dd w2 = w * w;
        dd term = w;
        dd sum = w;
        for (int k = 1; k <= 40; ++k) {
            term *= w2;
            sum += term / dd(2.0 * k + 1.0);
        }
        return dd(2.0) * sum;
    }
};

inline const LogTable& log_table() {
    static const LogTable table;
    return table;
}

}  // namespace detail

inline dd operator*(double a, dd b) { return dd(a) * b; }
inline dd operator*(dd a, double b) { return a * dd(b); }
inline dd operator+(dd a, double b) { return a + dd(b); }
inline dd operator-(dd a, double b) { return a - dd(b); }

// Natural log of a positive dd, ~1e-31 relative accuracy.
inline dd dd_log(dd a) {
    if (!(a.hi > 0.0)) throw std::domain_error("dd_log requires a positive argument");
    const auto& tab = detail::log_table();
    int e = 0;
    double m0 = std::frexp(a.hi, &e);  // m0 in [0.5, 1)
    dd m(m0 * 2.0, std::ldexp(a.lo, 1 - e));
    e -= 1;
    int idx = static_cast<int>(std::lround((m.hi - 1.0) * 64.0));
    dd t(1.0 + idx / 64.0);
    // ln(m/t) = 2*atanh(w), |w| <= 1/255
    dd w = (m - t) / (m + t);
    dd w2 = w * w;
    dd s = tab.inv_odd[7];
    for (int k = 6; k >= 0; --k) s = s * w2 + tab.inv_odd[k];
    dd series = (dd(1.0) + w2 * s) * w * dd(2.0);
    return dd(static_cast<double>(e)) * kLn2 + tab.ln_t[idx] + series;
}

inline dd dd_log(double a) { return dd_log(dd(a)); }

}  // namespace deltalab
