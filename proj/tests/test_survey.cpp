#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cubictrace/survey.hpp"
#include "oracles.hpp"

using namespace cubictrace;

TEST_SUITE("survey")
{
    TEST_CASE("g_K relations")
    {
        for (const auto& x : enumerate_fundamental(-5000, 5000)) {
            auto rec = make_record(x.form);
            auto g = gk_element(rec);
            INFO(x.form.str());
            CHECK(g.relation_ok);
            CHECK(g.negative_disc == (x.disc < 0));
            if (x.disc % 3 == 0) {
                CHECK(g.group_disc == -x.disc / 3);
                CHECK((g.order == 1 || g.order == 3));
            } else {
                CHECK(g.group_disc == Int(-3) * x.disc);
                // g^3 ~ C_form(d), and C_form has order 1 or 2
                CHECK(same_sl2_class(power(g.generator, 3), C_form(x.disc)));
                CHECK((g.order == 3 || g.order == 6 || g.order == 1 || g.order == 2));
            }
        }
    }

    TEST_CASE("cyclic subgroups")
    {
        auto grp = class_group(-23);
        CHECK(cyclic_subgroup(grp, {2, 1, 3}).size() == 3);
        CHECK(cyclic_subgroup(grp, {1, 1, 6}).size() == 1);
    }

    TEST_CASE("theta injectivity")
    {
        // smallest positive d carrying two fields
        long long first = 0;
        auto fs = enumerate_fundamental(2, 40000);
        for (std::size_t i = 1; i < fs.size() && !first; ++i)
            if (fs[i].disc == fs[i - 1].disc)
                first = fs[i].disc.to_ll();
        CHECK(first == 32009);
        CHECK(three_rank(class_group(first)) == 2);
        CHECK(theta_injectivity(Int(first)));
        CHECK(theta_injectivity(Int(229)));
    }

    TEST_CASE("scholz")
    {
        auto s = scholz_check(229);
        CHECK(s.s == 1);
        CHECK(s.r >= 1);
        CHECK(s.ok);
        s = scholz_check(5);
        CHECK(s.s == 0);
        CHECK(s.ok);
        CHECK_THROWS_AS(scholz_check(-23), InvalidInput);
    }

    TEST_CASE("small survey")
    {
        auto r = run_survey(-3300, 3300);
        CHECK(r.ok());
        CHECK(r.checks == all_checks());
        CHECK(r.total_fields == 382);
        std::size_t counted = 0;
        for (const auto& e : r.entries) {
            counted += e.fields.size();
            CHECK(oracle::fundamental(e.d.to_ll()));
        }
        CHECK(counted == r.total_fields);
        CHECK(counted == enumerate_fundamental(-3300, 3300).size());

        auto j = nlohmann::json::parse(to_json(r));
        CHECK(j["total_fields"] == 382);
        CHECK(j["failures"].empty());
        auto csv = to_csv(r);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.entries.size()) + 1);
    }

    TEST_CASE("principal-analogue collision at -3299")
    {
        SurveyOptions o;
        o.checks = {"principal-analogue"};
        auto r = run_survey(-3299, -3299, o);
        REQUIRE(r.entries.size() == 1);
        bool found = false;
        for (const auto& [f, g] : r.entries[0].collisions) {
            bool ab = cubic_equivalent(f, {1, 0, 2, 11}).status == EquivalenceStatus::Equivalent
                      && cubic_equivalent(g, {1, 0, -16, 27}).status == EquivalenceStatus::Equivalent;
            bool ba = cubic_equivalent(g, {1, 0, 2, 11}).status == EquivalenceStatus::Equivalent
                      && cubic_equivalent(f, {1, 0, -16, 27}).status == EquivalenceStatus::Equivalent;
            found = found || ab || ba;
        }
        CHECK(found);
    }

    TEST_CASE("survey edge cases")
    {
        auto e = run_survey(10, 5);
        CHECK(e.entries.empty());
        CHECK(e.total_fields == 0);
        SurveyOptions o;
        o.checks = {"no-such-check"};
        CHECK_THROWS_AS(run_survey(-100, 100, o), InvalidInput);
        o.checks = {"principal"};
        CHECK(run_survey(2, 20000, o).ok());
    }

    TEST_CASE("survey is deterministic across threads")
    {
        SurveyOptions a, b;
        b.threads = 4;
        CHECK(to_json(run_survey(-4000, 4000, a)) == to_json(run_survey(-4000, 4000, b)));
    }
}
