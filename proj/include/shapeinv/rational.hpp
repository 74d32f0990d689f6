#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>

namespace shapeinv::sym {

// Exact rational over 64-bit integers. Arithmetic returns nullopt on
// overflow or division by zero; callers fall back to floating point.
struct Rational {
    long long num = 0;
    long long den = 1;  // > 0 after normalization

    static std::optional<Rational> make(long long n, long long d) {
        if (d == 0) return std::nullopt;
        if (d < 0) {
            if (n == std::numeric_limits<long long>::min() ||
                d == std::numeric_limits<long long>::min())
                return std::nullopt;
            n = -n;
            d = -d;
        }
        const long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return Rational{n, d};
    }

    bool is_integer() const { return den == 1; }
    bool is_zero() const { return num == 0; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

namespace detail {
inline std::optional<long long> narrow(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        return std::nullopt;
    return static_cast<long long>(v);
}
inline std::optional<Rational> make128(__int128 n, __int128 d) {
    if (d == 0) return std::nullopt;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    auto nn = narrow(n), dd = narrow(d);
    if (!nn || !dd) return std::nullopt;
    return Rational{*nn, *dd};
}
}  // namespace detail

inline std::optional<Rational> rat_add(const Rational& a, const Rational& b) {
    return detail::make128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                           static_cast<__int128>(a.den) * b.den);
}
inline std::optional<Rational> rat_sub(const Rational& a, const Rational& b) {
    return detail::make128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                           static_cast<__int128>(a.den) * b.den);
}
inline std::optional<Rational> rat_mul(const Rational& a, const Rational& b) {
    return detail::make128(static_cast<__int128>(a.num) * b.num,
                           static_cast<__int128>(a.den) * b.den);
}
inline std::optional<Rational> rat_div(const Rational& a, const Rational& b) {
    if (b.num == 0) return std::nullopt;
    return detail::make128(static_cast<__int128>(a.num) * b.den,
                           static_cast<__int128>(a.den) * b.num);
}

// Integer powers with |e| <= 32; anything larger stays symbolic.
inline std::optional<Rational> rat_pow(const Rational& base, long long e) {
    if (e == 0) return Rational{1, 1};
    if (e < -32 || e > 32) return std::nullopt;
    Rational b = base;
    if (e < 0) {
        if (b.num == 0) return std::nullopt;
        b = *rat_div(Rational{1, 1}, b);
        e = -e;
    }
    Rational acc{1, 1};
    for (long long i = 0; i < e; ++i) {
        auto next = rat_mul(acc, b);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

}  // namespace shapeinv::sym
