#include <doctest.h>

#include <cmath>
#include <random>

#include "cubictrace/tracelat.hpp"
#include "oracles.hpp"

using namespace cubictrace;

namespace {

long long rounded(long double x)
{
    return std::llround(x);
}

// traces of -a theta, d / theta and products from numerically computed roots
std::array<long long, 5> traces_numeric(const BinaryCubicForm& f)
{
    auto z = oracle::roots(f);
    const long double a = f.a.to_ldouble(), d = f.d.to_ldouble();
    std::complex<long double> s[5]{};
    for (const auto& t : z) {
        auto al = -a * t, be = d / t;
        s[0] += al;
        s[1] += be;
        s[2] += al * al;
        s[3] += be * be;
        s[4] += al * be;
    }
    return {rounded(s[0].real()), rounded(s[1].real()), rounded(s[2].real()), rounded(s[3].real()),
            rounded(s[4].real())};
}

Mat3 gram3(long long a, long long b, long long c, long long d, long long e, long long f)
{
    return Mat3{{{a, b, c}, {b, d, e}, {c, e, f}}};
}

}  // namespace

TEST_SUITE("tracelat")
{
    TEST_CASE("rationals")
    {
        Rational x(6, -4);
        CHECK(x.num() == -3);
        CHECK(x.den() == 2);
        CHECK((x + Rational(3, 2)).is_integer());
        CHECK(Rational::parse("-3/2") == x);
        CHECK((x * Rational(2)).str() == "-3");
        CHECK_THROWS(Rational(1, 0));
    }

    TEST_CASE("basis traces")
    {
        BasisTraces t = basis_traces({1, 0, 2, 11});
        CHECK(t == BasisTraces{0, -2, -4, 4, -33});
        CHECK(basis_traces({1, 0, 0, -12}) == BasisTraces{0, 0, 0, 0, 36});

        std::mt19937_64 rng(31);
        std::uniform_int_distribution<long long> c(-9, 9);
        int n = 0;
        while (n < 300) {
            BinaryCubicForm f{c(rng), c(rng), c(rng), c(rng)};
            if (!is_irreducible(f))
                continue;
            ++n;
            auto t2 = basis_traces(f);
            auto num = traces_numeric(f);
            CHECK(t2.tr_alpha == num[0]);
            CHECK(t2.tr_beta == num[1]);
            CHECK(t2.tr_alpha2 == num[2]);
            CHECK(t2.tr_beta2 == num[3]);
            CHECK(t2.tr_alphabeta == num[4]);
        }
    }

    TEST_CASE("full gram")
    {
        auto l = full_gram({1, 0, 2, 11});
        CHECK(l.gram == gram3(3, 0, -2, -4, -33, 4));
        CHECK(mat3_det(l.gram) == -3299);
        CHECK(full_gram({1, 0, 0, -12}).gram == gram3(3, 0, 0, 0, 36, 0));

        std::mt19937_64 rng(8);
        std::uniform_int_distribution<long long> c(-15, 15);
        int n = 0;
        while (n < 500) {
            BinaryCubicForm f{c(rng), c(rng), c(rng), c(rng)};
            if (!is_irreducible(f))
                continue;
            ++n;
            auto g = full_gram(f);
            CHECK(oracle::det3(g.gram) == disc_cubic(f).to_ll());
            CHECK(gram_from_basis(f, standard_basis(f)).gram == g.gram);
        }
    }

    TEST_CASE("trace zero sublattice")
    {
        auto k = trace_zero_sublattice(full_gram({1, 0, 2, 11}));
        CHECK(gl2_equivalent(k.binary, {-2, -99, 12}));
        auto g = trace_zero_sublattice(full_gram({1, 6, -9, 1}));
        CHECK(gl2_equivalent(g.binary, {21, 21, 21}));
    }

    TEST_CASE("closed form")
    {
        auto e = explicit_trace_form({1, 0, 2, 11});
        CHECK(e.binary == BinaryQF{-2, -99, 12});
        CHECK(e.case_tag == TraceCase::B0);
        e = explicit_trace_form({1, 0, -16, 27});
        CHECK(e.binary == BinaryQF{16, -243, 768});
        CHECK(e.case_tag == TraceCase::B0);
        CHECK(to_string(TraceCase::BmC) == "BmC");
        CHECK_THROWS_AS(explicit_trace_form({1, 6, -9, 1}), InvalidInput);
    }

    TEST_CASE("closed form agrees with the kernel on every applicable case")
    {
        auto fields = enumerate_fundamental(-6000, 6000);
        REQUIRE(fields.size() > 300);
        for (const auto& x : fields) {
            auto k = trace_zero_sublattice(full_gram(x.form));
            auto all = applicable_trace_forms(x.form);
            REQUIRE(!all.empty());
            for (const auto& t : all) {
                INFO(x.form.str() << " " << to_string(t.case_tag));
                CHECK(gl2_equivalent(t.binary, k.binary));
                CHECK(discriminant(t.binary) == Int(-3) * x.disc);
            }
        }
    }

    TEST_CASE("C_form")
    {
        CHECK(C_form(-3299) == BinaryQF{3, 3, -824});
        CHECK(discriminant(C_form(-3299)) == 9897);
        CHECK(C_form(-4) == BinaryQF{3, 0, -1});
        CHECK(discriminant(C_form(-4)) == 12);
        CHECK_THROWS_AS(C_form(-12), InvalidInput);
    }

    TEST_CASE("group relation")
    {
        auto r = verify_grouprel({1, 0, 2, 11});
        CHECK(r.holds);
        CHECK(r.sign == 1);
        r = verify_grouprel({1, 0, -1, 1});
        CHECK(r.holds);
        CHECK_THROWS_AS(verify_grouprel({1, 6, -9, 1}), InvalidInput);
    }

    TEST_CASE("f_K")
    {
        // b = 0 mod 3: one third of F(x, 3y) is (a/3, b, 3c, 9d)
        for (const auto& x : enumerate_fundamental(-4000, 4000)) {
            if (x.disc % 3 != 0)
                continue;
            auto fk = f_K_form(x.form);
            const auto& f = x.form;
            if (f.b % 3 == 0) {
                CHECK(f.a % 3 == 0);
                CHECK(fk == BinaryCubicForm{f.a / 3, f.b, f.c * 3, f.d * 9});
            }
            CHECK(disc_cubic(fk) == Int(9) * x.disc);
        }
    }

    TEST_CASE("pure cubics")
    {
        Mat3 expect{{{3, 0, 0}, {0, 0, 18}, {0, 18, 0}}};
        CHECK(pure_cubic_gram(12).gram == expect);
        CHECK(pure_cubic_gram(6).gram == expect);
        CHECK_THROWS_AS(pure_cubic_gram(16), InvalidInput);
        auto w = ternary_equivalent_bounded(pure_cubic_gram(12), pure_cubic_gram(6), 3);
        CHECK(w.has_value());
    }

    TEST_CASE("ternary equivalence")
    {
        TernaryForm t{gram3(3, 0, -2, -4, -33, 4)};
        // indefinite forms are rejected unless equal
        CHECK(ternary_equivalent_bounded(t, t, 2) == mat3_identity());
        TernaryForm t2{gram3(3, 0, -2, -4, -33, 5)};
        TernaryForm t3{mat3_mul(mat3_transpose(Mat3{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}), mat3_mul(t2.gram, Mat3{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}))};
        CHECK_THROWS_AS(ternary_equivalent_bounded(t2, t3, 2), InvalidInput);

        TernaryForm p{gram3(3, 1, 0, 4, 1, 5)};
        Mat3 u{{{1, 1, 0}, {0, 1, -1}, {0, 0, 1}}};
        TernaryForm q{mat3_mul(mat3_transpose(u), mat3_mul(p.gram, u))};
        auto w = ternary_equivalent_bounded(p, q, 5);
        REQUIRE(w);
        CHECK(mat3_mul(mat3_transpose(*w), mat3_mul(p.gram, *w)) == q.gram);
    }

    TEST_CASE("66825 example")
    {
        TernaryForm target{gram3(3, 0, 0, 90, 45, 270)};
        auto g1 = gram_from_basis({2, 3, -21, 4}, standard_basis({2, 3, -21, 4}));
        auto g2 = gram_from_basis({1, 9, -18, -3}, standard_basis({1, 9, -18, -3}));
        CHECK(g1.gram == gram3(3, 3, 21, 93, -24, 417));
        CHECK(g2.gram == gram3(3, 9, 18, 117, 9, 378));
        // smallest witness for the first form has an entry 7
        CHECK_FALSE(ternary_equivalent_bounded(g1, target, 6));
        for (const auto& g : {g1, g2}) {
            CHECK(mat3_det(g.gram) == 66825);
            auto w = ternary_equivalent_bounded(g, target, 7);
            REQUIRE(w);
            CHECK(mat3_mul(mat3_transpose(*w), mat3_mul(g.gram, *w)) == target.gram);
        }
        CHECK(ternary_equivalent_bounded(g2, target, 6));
        CHECK(mat3_det(gram_from_basis({1, 6, -9, 1}, standard_basis({1, 6, -9, 1})).gram) == 3969);
        const Rational z(0), one(1);
        std::array<ThetaPoly, 3> bad{ThetaPoly{one, z, z}, ThetaPoly{z, Rational(1, 2), z}, ThetaPoly{z, z, one}};
        CHECK_THROWS_AS(gram_from_basis({1, 0, 2, 11}, bad), InvalidInput);
    }

    TEST_CASE("trace image")
    {
        auto t = trace_image_index(full_gram({1, 0, 2, 11}));
        CHECK(t.image_generator == 1);
        CHECK(t.index_OK_over_GK == 3);
        CHECK(t.lemma_holds);
        for (BinaryCubicForm f : {BinaryCubicForm{1, 6, -9, 1}, BinaryCubicForm{2, 3, -9, 2}}) {
            auto u = trace_image_index(full_gram(f));
            CHECK(u.image_generator == 3);
            CHECK(u.lemma_holds);
            CHECK(gl2_equivalent(trace_zero_sublattice(full_gram(f)).binary, {21, 21, 21}));
        }
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<long long> c(-12, 12);
        for (int i = 0; i < 300; ++i) {
            BinaryCubicForm f{c(rng), c(rng), c(rng), c(rng)};
            if (!is_irreducible(f) || std::gcd(std::gcd(3LL, std::llabs(f.b.to_ll())), std::llabs(f.c.to_ll())) != 1)
                continue;
            CHECK(trace_image_index(full_gram(f)).image_generator == 1);
        }
    }
}
