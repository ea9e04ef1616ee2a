#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <limits>

#include "dsssp/errors.hpp"

namespace dsssp {

using i64 = long long;
using i128 = __int128;

// ---------------------------------------------------------------- checked ints

inline i64 narrow_checked(i128 v, const char* what) {
    if (v > i128(std::numeric_limits<i64>::max()) || v < i128(std::numeric_limits<i64>::min()))
        throw Overflow(std::string(what) + ": value does not fit 64 bits");
    return (i64)v;
}

inline i64 add_checked(i64 a, i64 b) { return narrow_checked(i128(a) + i128(b), "add"); }
inline i64 mul_checked(i64 a, i64 b) { return narrow_checked(i128(a) * i128(b), "mul"); }

// Number of bits needed to write x in binary; bitlen(0) = 0, bitlen(1) = 1.
inline int bitlen(i64 x) {
    int b = 0;
    while (x > 0) { ++b; x >>= 1; }
    return b;
}

// floor(log2 x) for x >= 1.
inline int floor_log2(i64 x) {
    if (x < 1) throw Error("floor_log2: argument must be >= 1");
    return bitlen(x) - 1;
}

// ceil(log2 x) for x >= 1.
inline int ceil_log2(i64 x) {
    if (x < 1) throw Error("ceil_log2: argument must be >= 1");
    int f = floor_log2(x);
    return (x == (i64(1) << f)) ? f : f + 1;
}

// Smallest integer r with r^p >= n (n >= 1, p >= 1), i.e. ceil(n^(1/p)).
inline i64 ceil_nth_root(i64 n, int p) {
    if (n < 1 || p < 1) throw Error("ceil_nth_root: bad arguments");
    if (p == 1) return n;
    auto pow_ge = [&](i64 r) {  // r^p >= n, saturating
        i128 acc = 1;
        for (int i = 0; i < p; ++i) {
            acc *= r;
            if (acc >= i128(n)) return true;
        }
        return acc >= i128(n);
    };
    i64 lo = 1, hi = 1;
    while (!pow_ge(hi)) hi *= 2;
    while (lo < hi) {
        i64 mid = lo + (hi - lo) / 2;
        if (pow_ge(mid)) hi = mid; else lo = mid + 1;
    }
    return lo;
}

// ceil(a/b) for a >= 0, b > 0 in 128-bit intermediate.
inline i64 ceil_div(i128 a, i128 b, const char* what = "ceil_div") {
    if (b <= 0 || a < 0) throw Error("ceil_div: bad arguments");
    return narrow_checked((a + b - 1) / b, what);
}

// ------------------------------------------------------------------- rationals

// Exact nonnegative rational with an explicit +infinity (den == 0).
// Stored gcd-reduced with 64-bit parts; all intermediates go through
// 128 bits and overflow past 64 bits after reduction throws.
struct Rat {
    i64 num = 0;
    i64 den = 1;

    Rat() = default;
    Rat(i64 n) : num(n), den(1) {
        if (n < 0) throw Error("Rat: negative value");
    }
    Rat(i64 n, i64 d) {
        if (d == 0) throw Error("Rat: zero denominator (use Rat::inf())");
        if (n < 0 || d < 0) throw Error("Rat: negative value");
        i64 g = std::gcd(n, d);
        num = n / g;
        den = d / g;
    }

    static Rat inf() {
        Rat r;
        r.num = 1;
        r.den = 0;
        return r;
    }
    static Rat make_reduced(i128 n, i128 d) {
        if (d == 0) return inf();
        if (n < 0 || d < 0) throw Error("Rat: negative value");
        i128 g = gcd128(n, d);
        Rat r;
        r.num = narrow_checked(n / g, "Rat num");
        r.den = narrow_checked(d / g, "Rat den");
        return r;
    }

    bool is_inf() const { return den == 0; }
    bool is_zero() const { return den != 0 && num == 0; }
    bool is_integer() const { return den == 1; }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return make_reduced(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
    }
    // Subtraction requires a >= b (distances never go negative here).
    friend Rat operator-(const Rat& a, const Rat& b) {
        if (b.is_inf()) throw Error("Rat: cannot subtract infinity");
        if (a.is_inf()) return inf();
        i128 n = i128(a.num) * b.den - i128(b.num) * a.den;
        if (n < 0) throw Error("Rat: negative subtraction result");
        return make_reduced(n, i128(a.den) * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) {
            if (a.is_zero() || b.is_zero()) throw Error("Rat: 0 * inf");
            return inf();
        }
        return make_reduced(i128(a.num) * b.num, i128(a.den) * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw Error("Rat: division by zero");
        if (b.is_inf()) {
            if (a.is_inf()) throw Error("Rat: inf / inf");
            return Rat(0);
        }
        if (a.is_inf()) return inf();
        return make_reduced(i128(a.num) * b.den, i128(a.den) * b.num);
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;  // both stored reduced
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        if (a.is_inf()) return false;
        if (b.is_inf()) return true;
        return i128(a.num) * b.den < i128(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    // floor/ceil to integers; finite only.
    i64 floor() const {
        if (is_inf()) throw Error("Rat: floor of infinity");
        return num / den;
    }
    i64 ceil() const {
        if (is_inf()) throw Error("Rat: ceil of infinity");
        return (num + den - 1) / den;
    }

    // ceil(x / rho) for finite x >= 0 and finite rho > 0; the weight-rounding
    // primitive. Exact in 128 bits.
    static i64 ceil_quot(const Rat& x, const Rat& rho) {
        if (x.is_inf() || rho.is_inf() || rho.is_zero())
            throw Error("Rat: ceil_quot needs finite x and positive finite rho");
        // x/rho = (x.num * rho.den) / (x.den * rho.num)
        return ceil_div(i128(x.num) * rho.den, i128(x.den) * rho.num, "ceil_quot");
    }

    // Largest j >= 0 with 2^j <= x; requires x >= 1.
    int floor_log2_self() const {
        if (is_inf() || *this < Rat(1)) throw Error("Rat: floor_log2 needs finite x >= 1");
        int j = 0;
        while (Rat(i64(1) << (j + 1)) <= *this && j + 1 < 62) ++j;
        return j;
    }

    Rat pow(int e) const {
        if (e < 0) throw Error("Rat: negative exponent");
        Rat acc(1);
        for (int i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    std::string str() const {
        if (is_inf()) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    double approx() const {
        if (is_inf()) return std::numeric_limits<double>::infinity();
        return double(num) / double(den);
    }
};

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// ------------------------------------------------------------- ln upper bounds
//
// ln(x) over-approximated by a fixed rational table: ln x = e*ln2 + ln(m) with
// m = x/2^e in [1,2), ln2 and the 16 mantissa buckets bounded from above by
// rationals. Over-approximation is the safe direction everywhere ln is used
// (hitting-set list length q, iteration counts).

inline Rat ln2_upper() { return Rat(6931472, 10000000); }  // > ln 2

inline Rat ln_upper(i64 x) {
    if (x < 1) throw Error("ln_upper: argument must be >= 1");
    if (x == 1) return Rat(0);
    // Upper bounds on ln(1 + k/16) for k = 0..16, scaled by 1e7.
    static const i64 table[17] = {
        0,       606247,  1177831, 1718503, 2231436, 2719338, 3184538, 3629055,
        4054652, 4462872, 4855079, 5232482, 5596158, 5947072, 6286087, 6613985,
        6931472,
    };
    int e = floor_log2(x);
    // mantissa bucket: smallest k with x <= 2^e * (1 + k/16)
    // i.e. k = ceil((x - 2^e) * 16 / 2^e)
    i64 p2 = i64(1) << e;
    i64 k = ceil_div(i128(x - p2) * 16, i128(p2), "ln bucket");
    return Rat(e) * ln2_upper() + Rat(table[k], 10000000);
}

}  // namespace dsssp
