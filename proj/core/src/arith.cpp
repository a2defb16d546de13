#include "cubictrace/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace cubictrace {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr long long kTrialLimit = 1'000'000;

u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1U)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1U;
    }
    return r;
}

// Deterministic for all 64-bit n with these bases.
bool miller_rabin(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

u64 gcd64(u64 a, u64 b)
{
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent's variant of Pollard rho; n composite and odd.
u64 pollard_rho(u64 n)
{
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        constexpr u64 m = 128;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd64(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_u64(u64 n, std::map<u64, unsigned>& out)
{
    if (n == 1)
        return;
    if (miller_rabin(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

}  // namespace

Factorization factor(Int n)
{
    if (n.is_zero())
        throw InvalidInput("factor: zero has no factorization");
    Int m = abs(n);
    Factorization out;
    for (long long p = 2; p <= kTrialLimit && Int(p) * Int(p) <= m; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while ((m % p).is_zero()) {
            m /= p;
            ++e;
        }
        if (e)
            out.push_back({p, e});
    }
    if (m == 1)
        return out;
    if (m < Int(kTrialLimit) * Int(kTrialLimit)) {
        out.push_back({m, 1});
        return out;
    }
    if (m > Int(static_cast<unsigned long long>(UINT64_MAX)))
        throw InvalidInput("factor: cofactor exceeds 64 bits: " + m.str());
    std::map<u64, unsigned> rest;
    factor_u64(static_cast<u64>(m.raw()), rest);
    for (auto [p, e] : rest)
        out.push_back({Int(static_cast<unsigned long long>(p)), e});
    return out;
}

Int recompose(const Factorization& f)
{
    Int r = 1;
    for (const auto& pp : f)
        r *= pow(pp.prime, pp.exponent);
    return r;
}

bool is_prime(Int n)
{
    if (n < 2)
        return false;
    if (n > Int(static_cast<unsigned long long>(UINT64_MAX))) {
        auto f = factor(n);
        return f.size() == 1 && f[0].exponent == 1;
    }
    return miller_rabin(static_cast<u64>(n.raw()));
}

std::vector<long long> primes_up_to(long long limit)
{
    std::vector<long long> out;
    if (limit < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (long long i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)])
            continue;
        out.push_back(i);
        for (long long j = i * i; j <= limit; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

bool is_squarefree(Int n)
{
    if (n.is_zero())
        return false;
    for (const auto& pp : factor(n))
        if (pp.exponent > 1)
            return false;
    return true;
}

bool is_fundamental_discriminant(Int d)
{
    if (d.is_zero() || d == 1)
        return false;
    Int r = floor_mod(d, 4);
    if (r == 1)
        return is_squarefree(d);
    if (r != 0)
        return false;
    Int m = d / 4;
    Int rm = floor_mod(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

SquarefreePart squarefree_part(Int n)
{
    if (n.is_zero())
        throw InvalidInput("squarefree_part: zero input");
    Int free = n.sign() < 0 ? Int(-1) : Int(1);
    Int square = 1;
    for (const auto& pp : factor(n)) {
        if (pp.exponent % 2)
            free *= pp.prime;
        square *= pow(pp.prime, pp.exponent / 2);
    }
    return {free, square};
}

Unimodular2::Unimodular2(const Mat2& m) : m_(m)
{
    Int dt = m.det();
    if (dt != 1 && dt != -1)
        throw InvalidInput("Unimodular2: determinant must be +-1, got " + dt.str());
}

Unimodular2 Unimodular2::inverse() const
{
    // inverse of [[a,b],[c,d]] is det * [[d,-b],[-c,a]] since det = +-1
    Int s = m_.det();
    Unimodular2 r;
    r.m_ = {s * m_.d, -s * m_.b, -s * m_.c, s * m_.a};
    return r;
}

const std::vector<Unimodular2>& small_unimodular()
{
    static const std::vector<Unimodular2> all = [] {
        std::vector<Unimodular2> v;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (int d = -1; d <= 1; ++d) {
                        int det = a * d - b * c;
                        if (det == 1 || det == -1)
                            v.emplace_back(a, b, c, d);
                    }
        return v;
    }();
    return all;
}

Mat3 mat3_identity()
{
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = i == j ? 1 : 0;
    return m;
}

Mat3 mat3_mul(const Mat3& x, const Mat3& y)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Int s = 0;
            for (int k = 0; k < 3; ++k)
                s += x[i][k] * y[k][j];
            r[i][j] = s;
        }
    return r;
}

Mat3 mat3_transpose(const Mat3& x)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i][j] = x[j][i];
    return r;
}

Int mat3_det(const Mat3& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool mat3_symmetric(const Mat3& m)
{
    return m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1];
}

}  // namespace cubictrace
