#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cubictrace/int.hpp"

namespace cubictrace {

struct PrimePower {
    Int prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of |n|; primes strictly increasing.
using Factorization = std::vector<PrimePower>;

Factorization factor(Int n);
Int recompose(const Factorization& f);

bool is_prime(Int n);

/// Primes p <= limit, ascending.
std::vector<long long> primes_up_to(long long limit);

bool is_squarefree(Int n);

/*
 * A fundamental discriminant is the discriminant of a quadratic field:
 * d = 1 (mod 4) squarefree, or d = 4m with m = 2, 3 (mod 4) squarefree.
 * d = 1 is excluded here.
 */
bool is_fundamental_discriminant(Int d);

struct SquarefreePart {
    Int free;    ///< squarefree, carries the sign of n
    Int square;  ///< n == free * square^2, square > 0
};
SquarefreePart squarefree_part(Int n);

/// 2x2 integer matrix [[a, b], [c, d]].
struct Mat2 {
    Int a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }

    Int det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/*
 * Element of GL_2(Z).  Construction checks det == +-1; products and inverses
 * stay unimodular.
 */
class Unimodular2 {
public:
    Unimodular2() = default;
    explicit Unimodular2(const Mat2& m);
    Unimodular2(Int a, Int b, Int c, Int d) : Unimodular2(Mat2{a, b, c, d}) {}

    static Unimodular2 identity() { return {}; }
    /// (x, y) -> (x, -y)
    static Unimodular2 reflection() { return Unimodular2(Mat2{1, 0, 0, -1}); }
    static Unimodular2 minus_identity() { return Unimodular2(Mat2{-1, 0, 0, -1}); }

    const Mat2& mat() const { return m_; }
    Int a() const { return m_.a; }
    Int b() const { return m_.b; }
    Int c() const { return m_.c; }
    Int d() const { return m_.d; }
    int det() const { return m_.det() == 1 ? 1 : -1; }

    Unimodular2 inverse() const;
    Unimodular2 transpose() const { return Unimodular2(m_.transpose()); }

    friend Unimodular2 operator*(const Unimodular2& x, const Unimodular2& y)
    {
        Unimodular2 r;
        r.m_ = x.m_ * y.m_;
        return r;
    }
    friend bool operator==(const Unimodular2&, const Unimodular2&) = default;

private:
    Mat2 m_;
};

/// All matrices with entries in {-1, 0, 1} and determinant +-1.
const std::vector<Unimodular2>& small_unimodular();

/// 3x3 integer matrix, row-major.
using Mat3 = std::array<std::array<Int, 3>, 3>;

Mat3 mat3_identity();
Mat3 mat3_mul(const Mat3& x, const Mat3& y);
Mat3 mat3_transpose(const Mat3& x);
Int mat3_det(const Mat3& x);
bool mat3_symmetric(const Mat3& x);

}  // namespace cubictrace
