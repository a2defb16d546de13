#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <random>

#include "cubictrace/cubic_form.hpp"
#include "oracles.hpp"

using namespace cubictrace;

namespace {

BinaryCubicForm random_form(std::mt19937_64& rng, long long h)
{
    std::uniform_int_distribution<long long> c(-h, h);
    return {c(rng), c(rng), c(rng), c(rng)};
}

Unimodular2 random_unimodular(std::mt19937_64& rng, long long h)
{
    std::uniform_int_distribution<long long> c(-h, h);
    Unimodular2 m = Unimodular2(1, c(rng), 0, 1) * Unimodular2(1, 0, c(rng), 1);
    if (rng() & 1)
        m = m * Unimodular2::reflection();
    return m;
}

// direct expansion of the discriminant from the roots' symmetric functions
long long disc_direct(const BinaryCubicForm& f)
{
    long long a = f.a.to_ll(), b = f.b.to_ll(), c = f.c.to_ll(), d = f.d.to_ll();
    return b * b * c * c - 27 * a * a * d * d + 18 * a * b * c * d - 4 * a * c * c * c - 4 * b * b * b * d;
}

}  // namespace

TEST_SUITE("cforms")
{
    TEST_CASE("discriminant")
    {
        CHECK(disc_cubic({1, 0, 2, 11}) == -3299);
        CHECK(disc_cubic({1, 0, -16, 27}) == -3299);
        CHECK(disc_cubic({2, 3, -21, 4}) == 66825);
        CHECK(disc_cubic({1, 6, -9, 1}) == 3969);
        CHECK(disc_cubic({1, 0, -1, 1}) == -23);
        CHECK(BinaryCubicForm::parse("1,0,-16,27") == BinaryCubicForm{1, 0, -16, 27});
    }

    TEST_CASE("hessian")
    {
        CHECK(hessian({1, 0, 2, 11}) == BinaryQF{-6, -99, 4});
        CHECK(hessian({1, 0, 0, 0}) == BinaryQF{0, 0, 0});
        CHECK(hessian({1, 0, -16, 27}) == BinaryQF{48, -243, 256});
        CHECK(discriminant(hessian({1, 0, 2, 11})) == 9897);
    }

    TEST_CASE("covariance and disc identities on random samples")
    {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 1000; ++i) {
            auto f = random_form(rng, 25);
            auto m = random_unimodular(rng, 4);
            auto g = act_cubic(f, m);
            auto ref = oracle::cubic_substitute(f, m.a().to_ll(), m.b().to_ll(), m.c().to_ll(), m.d().to_ll());
            CHECK(g == BinaryCubicForm{ref[0], ref[1], ref[2], ref[3]});
            CHECK(disc_cubic(f) == disc_direct(f));
            CHECK(disc_cubic(g) == disc_cubic(f));
            CHECK(discriminant(hessian(f)) == Int(-3) * disc_cubic(f));
            CHECK(hessian(g) == apply(hessian(f), m));
        }
    }

    TEST_CASE("substitution by non-unimodular matrices")
    {
        BinaryCubicForm f{1, 0, 2, 11};
        auto g = substitute(f, Mat2{1, 0, 0, 3});
        CHECK(g == BinaryCubicForm{1, 0, 18, 297});
        auto ref = oracle::cubic_substitute(f, 2, 1, -1, 3);
        CHECK(substitute(f, Mat2{2, 1, -1, 3}) == BinaryCubicForm{ref[0], ref[1], ref[2], ref[3]});
    }

    TEST_CASE("irreducibility")
    {
        CHECK(is_irreducible({1, 0, 2, 11}));
        CHECK_FALSE(is_irreducible({1, 0, 0, 0}));
        CHECK_FALSE(is_irreducible({1, 0, -1, 0}));
        std::mt19937_64 rng(9);
        for (int i = 0; i < 600; ++i) {
            auto f = random_form(rng, 12);
            if (f.a == 0 || f.d == 0)
                continue;
            CHECK(is_irreducible(f) == !oracle::has_rational_root(f));
        }
    }

    TEST_CASE("shapes modulo p")
    {
        CHECK(mod_p_shape({1, 0, 0, -12}, 7) == ModPShape::Inert);
        auto s6 = mod_p_shape({1, 0, 0, -6}, 7);
        CHECK((s6 == ModPShape::Split || s6 == ModPShape::LinearQuadratic));
        CHECK(to_string(ModPShape::Inert) == "3");
        CHECK(parse_mod_p_shape("1^2 1") == ModPShape::DoubleRoot);
        CHECK_THROWS_AS(mod_p_shape({7, 14, 0, 21}, 7), InvalidInput);
    }

    TEST_CASE("reduction is a complete invariant")
    {
        std::mt19937_64 rng(77);
        int tried = 0;
        while (tried < 200) {
            auto f = random_form(rng, 8);
            if (!is_irreducible(f))
                continue;
            ++tried;
            auto r = reduce_cubic(f);
            CHECK(act_cubic(f, r.witness) == r.form);
            auto g = act_cubic(f, random_unimodular(rng, 3));
            CHECK(reduce_cubic(g).form == r.form);
        }
    }

    TEST_CASE("cubic equivalence")
    {
        BinaryCubicForm f{1, 0, 2, 11};
        auto e = cubic_equivalent(f, f);
        CHECK(e.status == EquivalenceStatus::Equivalent);
        REQUIRE(e.witness);
        CHECK(act_cubic(f, *e.witness) == f);

        std::mt19937_64 rng(1);
        for (int i = 0; i < 50; ++i) {
            auto m = random_unimodular(rng, 10);
            auto g = act_cubic(f, m);
            auto r = cubic_equivalent(f, g);
            CHECK(r.status == EquivalenceStatus::Equivalent);
            REQUIRE(r.witness);
            CHECK(act_cubic(f, *r.witness) == g);
        }
        BinaryCubicForm t{2, 3, -21, 4};
        auto tg = act_cubic(t, Unimodular2(3, 2, 1, 1));
        auto tr = cubic_equivalent(t, tg);
        CHECK(tr.status == EquivalenceStatus::Equivalent);
        REQUIRE(tr.witness);
        CHECK(act_cubic(t, *tr.witness) == tg);

        CHECK(cubic_equivalent({1, 0, 2, 11}, {1, 0, -16, 27}).status == EquivalenceStatus::Inequivalent);
    }

    TEST_CASE("enumeration small ranges")
    {
        auto e = enumerate_fundamental(-25, -20);
        REQUIRE(e.size() == 1);
        CHECK(e[0].disc == -23);
        CHECK(cubic_equivalent(e[0].form, {1, 0, -1, 1}).status == EquivalenceStatus::Equivalent);
        CHECK(enumerate_fundamental(-3299, -3299).size() == 4);
        CHECK(enumerate_fundamental(2, 20).empty());
    }

    TEST_CASE("enumeration against a coefficient box")
    {
        auto fast = enumerate_fundamental(-500, 500);
        auto slow = enumerate_box(-500, 500);
        std::map<long long, std::size_t> nf, ns;
        for (const auto& x : fast)
            ++nf[x.disc.to_ll()];
        for (const auto& x : slow)
            ++ns[x.disc.to_ll()];
        CHECK(nf == ns);

        // independent box search
        std::map<long long, std::set<BinaryCubicForm>> own;
        for (long long a = 1; a <= 6; ++a)
            for (long long b = -20; b <= 20; ++b)
                for (long long c = -20; c <= 20; ++c)
                    for (long long d = -30; d <= 30; ++d) {
                        BinaryCubicForm f{a, b, c, d};
                        long long D = disc_direct(f);
                        if (D < -500 || D > 500 || !oracle::fundamental(D))
                            continue;
                        if (std::gcd(std::gcd(a, std::llabs(b)), std::gcd(std::llabs(c), std::llabs(d))) != 1)
                            continue;
                        if (oracle::has_rational_root(f))
                            continue;
                        own[D].insert(f);
                    }
        // classes: connected components of the box under elementary substitutions
        for (auto& [D, forms] : own) {
            std::vector<BinaryCubicForm> list(forms.begin(), forms.end());
            std::map<BinaryCubicForm, std::size_t> index;
            for (std::size_t i = 0; i < list.size(); ++i)
                index[list[i]] = i;
            std::vector<std::size_t> parent(list.size());
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
                return parent[i] == i ? i : parent[i] = root(parent[i]);
            };
            const long long moves[4][4] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, -1}};
            for (std::size_t i = 0; i < list.size(); ++i)
                for (const auto& m : moves) {
                    auto h = oracle::cubic_substitute(list[i], m[0], m[1], m[2], m[3]);
                    if (h[0] < 0)
                        for (auto& x : h)
                            x = -x;
                    auto it = index.find(BinaryCubicForm{h[0], h[1], h[2], h[3]});
                    if (it != index.end())
                        parent[root(i)] = root(it->second);
                }
            std::set<std::size_t> roots;
            for (std::size_t i = 0; i < list.size(); ++i)
                roots.insert(root(i));
            // components the box splits apart are joined by a bounded witness search
            std::vector<std::size_t> comps(roots.begin(), roots.end());
            std::vector<BinaryCubicForm> classes;
            for (std::size_t r : comps) {
                bool seen = false;
                for (const auto& c : classes)
                    seen = seen || oracle::cubic_gl2_brute(c, list[r], 40);
                if (!seen)
                    classes.push_back(list[r]);
            }
            INFO("D = " << D);
            CHECK(classes.size() == nf[D]);
        }
        for (auto& [D, n] : nf)
            CHECK(own.count(D) == 1);
    }

    TEST_CASE("enumeration is thread independent")
    {
        EnumerationOptions o;
        o.threads = 3;
        CHECK(enumerate_fundamental(-4000, 4000, o) == enumerate_fundamental(-4000, 4000));
    }
}
