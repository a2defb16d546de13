#include <doctest.h>

#include <random>

#include "cubictrace/arith.hpp"
#include "oracles.hpp"

using namespace cubictrace;

TEST_SUITE("arith")
{
    TEST_CASE("int overflow is reported")
    {
        Int big = pow(Int(2), 100);
        CHECK_THROWS_AS(big * big, OverflowError);
        CHECK_THROWS_AS(Int(1) / Int(0), std::domain_error);
        CHECK(Int::parse("-123456789012345678901234567890").str() == "-123456789012345678901234567890");
        CHECK_THROWS_AS(Int::parse("12x"), InvalidInput);
    }

    TEST_CASE("floor division and gcd")
    {
        CHECK(floor_div(-7, 2) == -4);
        CHECK(floor_mod(-7, 3) == 2);
        CHECK(ceil_div(7, 2) == 4);
        CHECK(gcd(-12, 18) == 6);
        CHECK(lcm(4, 6) == 12);
        CHECK(isqrt(99) == 9);
        CHECK(is_square(Int(144)));
        CHECK(is_cube(Int(-27)));
        CHECK(mod_inverse(3, 7) == 5);
        CHECK_THROWS(exact_div(7, 2));
        auto e = ext_gcd(240, 46);
        CHECK(e.g == 2);
        CHECK(Int(240) * e.u + Int(46) * e.v == 2);
    }

    TEST_CASE("factor")
    {
        CHECK(factor(12) == Factorization{{2, 2}, {3, 1}});
        CHECK(factor(-3299) == Factorization{{3299, 1}});
        CHECK(oracle::is_prime(3299));
        CHECK(factor(66825) == Factorization{{3, 5}, {5, 2}, {11, 1}});
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long long> dist(2, 2000000);
        for (int i = 0; i < 300; ++i) {
            long long n = dist(rng);
            auto f = factor(n);
            CHECK(recompose(f) == n);
            for (auto& pp : f)
                CHECK(oracle::is_prime(pp.prime.to_ll()));
        }
    }

    TEST_CASE("primes and squarefree")
    {
        auto ps = primes_up_to(1000);
        CHECK(ps.size() == 168);
        for (long long n = -500; n <= 500; ++n) {
            if (n == 0)
                continue;
            CHECK(is_squarefree(n) == oracle::squarefree(n));
            CHECK(is_prime(n) == oracle::is_prime(n));
        }
    }

    TEST_CASE("fundamental discriminants")
    {
        CHECK(is_fundamental_discriminant(-3299));
        CHECK_FALSE(is_fundamental_discriminant(3969));
        CHECK(is_fundamental_discriminant(-4));
        CHECK_FALSE(is_fundamental_discriminant(1));
        for (long long d = -3000; d <= 3000; ++d)
            CHECK(is_fundamental_discriminant(d) == oracle::fundamental(d));
    }

    TEST_CASE("squarefree part")
    {
        auto s = squarefree_part(12);
        CHECK(s.free == 3);
        CHECK(s.square == 2);
        s = squarefree_part(7);
        CHECK(s.free == 7);
        CHECK(s.square == 1);
        s = squarefree_part(-108);
        CHECK(s.free == -3);
        CHECK(s.square == 6);
        for (long long n = -400; n <= 400; ++n) {
            if (n == 0)
                continue;
            auto p = squarefree_part(n);
            CHECK(p.free * p.square * p.square == n);
            CHECK(oracle::squarefree(p.free.to_ll()));
        }
    }

    TEST_CASE("unimodular matrices")
    {
        CHECK_THROWS_AS(Unimodular2(2, 0, 0, 1), InvalidInput);
        Unimodular2 m(2, 1, 1, 1);
        CHECK(m * m.inverse() == Unimodular2::identity());
        CHECK(Unimodular2::reflection().det() == -1);
        CHECK(small_unimodular().size() > 0);
        for (const auto& u : small_unimodular())
            CHECK((u.det() == 1 || u.det() == -1));
    }

    TEST_CASE("mat3")
    {
        Mat3 x{{{1, 2, 3}, {0, 1, 4}, {5, 6, 0}}};
        CHECK(mat3_det(x) == oracle::det3(x));
        CHECK(mat3_det(x) == 1);
        CHECK(mat3_mul(x, mat3_identity()) == x);
        CHECK(mat3_transpose(mat3_transpose(x)) == x);
        CHECK_FALSE(mat3_symmetric(x));
    }
}
