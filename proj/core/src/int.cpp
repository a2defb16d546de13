#include "cubictrace/int.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace cubictrace {

long long Int::to_ll() const
{
    if (v_ > LLONG_MAX || v_ < LLONG_MIN)
        throw OverflowError("Int: value does not fit in 64 bits");
    return static_cast<long long>(v_);
}

std::string Int::str() const
{
    if (v_ == 0)
        return "0";
    unsigned __int128 u = v_ < 0 ? static_cast<unsigned __int128>(-(v_ + 1)) + 1
                                 : static_cast<unsigned __int128>(v_);
    std::string out;
    while (u != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (v_ < 0)
        out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

Int Int::parse(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    if (s.empty())
        throw InvalidInput("empty integer literal");
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw InvalidInput("integer literal without digits");
    Int r = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            throw InvalidInput("invalid character in integer literal: '" + std::string(1, ch) + "'");
        r = r * 10 + Int(ch - '0');
    }
    return neg ? -r : r;
}

Int abs(Int x)
{
    return x.sign() < 0 ? -x : x;
}

Int gcd(Int a, Int b)
{
    a = abs(a);
    b = abs(b);
    while (!b.is_zero()) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int gcd(Int a, Int b, Int c)
{
    return gcd(gcd(a, b), c);
}

Int lcm(Int a, Int b)
{
    if (a.is_zero() || b.is_zero())
        return 0;
    return abs(a / gcd(a, b) * b);
}

Int floor_div(Int a, Int b)
{
    Int q = a / b;
    if (!(a % b).is_zero() && ((a.sign() < 0) != (b.sign() < 0)))
        q -= 1;
    return q;
}

Int floor_mod(Int a, Int b)
{
    return a - floor_div(a, b) * b;
}

Int ceil_div(Int a, Int b)
{
    return -floor_div(-a, b);
}

Int exact_div(Int a, Int b, const char* what)
{
    if (b.is_zero() || !(a % b).is_zero())
        throw InvalidInput(std::string(what) + ": inexact division " + a.str() + " / " + b.str());
    return a / b;
}

bool divides(Int d, Int n)
{
    if (d.is_zero())
        return n.is_zero();
    return (n % d).is_zero();
}

Int isqrt(Int n)
{
    if (n.sign() < 0)
        throw std::domain_error("isqrt of negative value");
    if (n < 2)
        return n;
    // Newton iteration on unsigned 128-bit, started above the root.
    auto u = static_cast<unsigned __int128>(n.raw());
    long double approx = std::sqrt(static_cast<long double>(u));
    auto x = static_cast<unsigned __int128>(approx) + 2;
    while (true) {
        unsigned __int128 y = (x + u / x) / 2;
        if (y >= x)
            break;
        x = y;
    }
    while (x * x > u)
        --x;
    while ((x + 1) * (x + 1) <= u)
        ++x;
    return Int::from_raw(static_cast<Int::raw_type>(x));
}

bool is_square(Int n)
{
    if (n.sign() < 0)
        return false;
    Int r = isqrt(n);
    return r * r == n;
}

bool is_cube(Int n)
{
    Int m = abs(n);
    auto guess = static_cast<long long>(std::cbrt(static_cast<long double>(m.raw())));
    for (long long r = std::max(0LL, guess - 2); r <= guess + 2; ++r) {
        Int rr = r;
        try {
            if (rr * rr * rr == m)
                return true;
        } catch (const OverflowError&) {
            return false;
        }
    }
    return false;
}

Int pow(Int base, unsigned exp)
{
    Int r = 1;
    while (exp) {
        if (exp & 1U)
            r *= base;
        exp >>= 1U;
        if (exp)
            base *= base;
    }
    return r;
}

ExtGcd ext_gcd(Int a, Int b)
{
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (!r.is_zero()) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r.sign() < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

Int mod_inverse(Int a, Int m)
{
    ExtGcd e = ext_gcd(floor_mod(a, m), m);
    if (e.g != 1)
        throw InvalidInput("mod_inverse: not invertible");
    return floor_mod(e.u, m);
}

}  // namespace cubictrace
