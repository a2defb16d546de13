#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubictrace {

/// Raised whenever an exact computation would leave the 128-bit range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Raised on malformed user input or violated preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/*
 * Signed 128-bit integer with checked arithmetic.  Every operation that
 * would wrap throws OverflowError instead.  Division truncates toward zero
 * like the builtin types; use floor_div / floor_mod for Euclidean style.
 */
class Int {
public:
    using raw_type = __int128;

    constexpr Int() = default;
    constexpr Int(int v) : v_(v) {}
    constexpr Int(long v) : v_(v) {}
    constexpr Int(long long v) : v_(v) {}
    constexpr Int(unsigned v) : v_(v) {}
    constexpr Int(unsigned long v) : v_(v) {}
    constexpr Int(unsigned long long v) : v_(v) {}

    static constexpr Int from_raw(raw_type v)
    {
        Int r;
        r.v_ = v;
        return r;
    }

    constexpr raw_type raw() const { return v_; }

    /// Narrowing conversion; throws if the value does not fit.
    long long to_ll() const;
    double to_double() const { return static_cast<double>(v_); }
    long double to_ldouble() const { return static_cast<long double>(v_); }

    std::string str() const;
    static Int parse(std::string_view s);

    constexpr int sign() const { return (v_ > 0) - (v_ < 0); }
    constexpr bool is_zero() const { return v_ == 0; }

    friend Int operator+(Int a, Int b)
    {
        raw_type r;
        if (__builtin_add_overflow(a.v_, b.v_, &r))
            throw OverflowError("Int: addition overflow");
        return from_raw(r);
    }
    friend Int operator-(Int a, Int b)
    {
        raw_type r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r))
            throw OverflowError("Int: subtraction overflow");
        return from_raw(r);
    }
    friend Int operator*(Int a, Int b)
    {
        raw_type r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r))
            throw OverflowError("Int: multiplication overflow");
        return from_raw(r);
    }
    friend Int operator/(Int a, Int b)
    {
        if (b.v_ == 0)
            throw std::domain_error("Int: division by zero");
        if (b.v_ == -1)
            return -a;
        return from_raw(a.v_ / b.v_);
    }
    friend Int operator%(Int a, Int b)
    {
        if (b.v_ == 0)
            throw std::domain_error("Int: division by zero");
        if (b.v_ == -1)
            return Int(0);
        return from_raw(a.v_ % b.v_);
    }
    Int operator-() const
    {
        if (v_ == min_raw())
            throw OverflowError("Int: negation overflow");
        return from_raw(-v_);
    }

    Int& operator+=(Int o) { return *this = *this + o; }
    Int& operator-=(Int o) { return *this = *this - o; }
    Int& operator*=(Int o) { return *this = *this * o; }
    Int& operator/=(Int o) { return *this = *this / o; }
    Int& operator%=(Int o) { return *this = *this % o; }

    friend constexpr bool operator==(Int a, Int b) { return a.v_ == b.v_; }
    friend constexpr std::strong_ordering operator<=>(Int a, Int b)
    {
        return a.v_ < b.v_ ? std::strong_ordering::less
             : a.v_ > b.v_ ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, Int x) { return os << x.str(); }

private:
    static constexpr raw_type min_raw()
    {
        return static_cast<raw_type>(static_cast<unsigned __int128>(1) << 127);
    }

    raw_type v_ = 0;
};

Int abs(Int x);
Int gcd(Int a, Int b);
Int gcd(Int a, Int b, Int c);
Int lcm(Int a, Int b);

/// Floor division and the matching non-negative remainder (for b > 0).
Int floor_div(Int a, Int b);
Int floor_mod(Int a, Int b);
Int ceil_div(Int a, Int b);

/// a / b, throwing InvalidInput unless b divides a.
Int exact_div(Int a, Int b, const char* what = "exact_div");

bool divides(Int d, Int n);

/// Largest r >= 0 with r*r <= n; n must be non-negative.
Int isqrt(Int n);
bool is_square(Int n);
/// Integer cube root for perfect cubes (any sign); returns false otherwise.
bool is_cube(Int n);

Int pow(Int base, unsigned exp);

struct ExtGcd {
    Int g;  ///< non-negative gcd
    Int u;
    Int v;  ///< u*a + v*b == g
};
ExtGcd ext_gcd(Int a, Int b);

/// Inverse of a modulo m (m > 1, gcd(a, m) == 1), result in [0, m).
Int mod_inverse(Int a, Int m);

}  // namespace cubictrace

template <>
struct std::hash<cubictrace::Int> {
    std::size_t operator()(cubictrace::Int x) const noexcept
    {
        auto u = static_cast<unsigned __int128>(x.raw());
        auto lo = static_cast<std::uint64_t>(u);
        auto hi = static_cast<std::uint64_t>(u >> 64);
        return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
    }
};
