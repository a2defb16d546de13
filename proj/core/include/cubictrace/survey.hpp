#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cubictrace/cubes.hpp"
#include "cubictrace/fields.hpp"

namespace cubictrace {

/// Generator of the cyclic subgroup attached to a field: the class of q/2 when
/// 3 does not divide d, phi1(f_K) when it does.
struct GKElement {
    BinaryCubicForm form;
    BinaryQF generator;
    Int group_disc;                ///< -3d / gcd(3, d)^2
    unsigned long long order = 0;
    bool relation_ok = false;      ///< g^3 ~ C_form(d), resp. order | 3
    bool negative_disc = false;    ///< d < 0: outside the setting of the identities
};

/// group, when given, must be the class group of -3d / gcd(3, d)^2.
GKElement gk_element(const CubicFieldRecord& rec, const ClassGroup* group = nullptr);

/// Class indices of <g> in the class group of g's discriminant.
std::set<std::size_t> cyclic_subgroup(const ClassGroup& group, const BinaryQF& g);

/// The subgroups <g^2> (resp. <g>) are pairwise distinct over the given elements.
bool theta_injectivity(const std::vector<GKElement>& elements);
bool ordertrace_injectivity(const std::vector<GKElement>& elements);

/// Enumerates the fields of discriminant d itself.
bool theta_injectivity(Int d);

struct ScholzCheck {
    unsigned s = 0;   ///< 3-rank of Cl(d)
    unsigned r = 0;   ///< 3-rank of the class group of Q(sqrt(-3d))
    bool ok = false;
};

/// d > 0 fundamental.
ScholzCheck scholz_check(Int d);

/*
 * Check names: hasse grouprel grouprel2 caso3 principal principal-analogue
 * scholz gk theta ordertrace kernel tracedisc tamanio
 */
const std::vector<std::string>& all_checks();

struct SurveyOptions {
    std::set<std::string> checks;      ///< empty means all
    unsigned threads = 1;
    Int hasse_positive_max = 5000;     ///< hasse for d > 0 only up to this bound
    Int scholz_max = 5000;
};

struct FieldEntry {
    BinaryCubicForm form;
    BinaryQF trace_zero;
    TraceCase trace_case = TraceCase::Kernel;
    std::optional<unsigned long long> gk_order;
};

struct DiscEntry {
    Int d;
    std::vector<FieldEntry> fields;
    std::optional<HasseCount> hasse;
    std::optional<bool> principal_ok, grouprel_ok, grouprel2_ok, caso3_ok, kernel_ok, tracedisc_ok,
        tamanio_ok, gk_ok, theta_injective, ordertrace_injective;
    std::optional<ScholzCheck> scholz;
    /// Negative d: pairs of fields with GL2-equivalent trace-zero forms.
    std::vector<std::pair<BinaryCubicForm, BinaryCubicForm>> collisions;
};

struct Counterexample {
    std::string check;
    Int d;
    std::vector<BinaryCubicForm> forms;
    std::string detail;
};

struct SurveyReport {
    Int d_min, d_max;
    std::vector<std::string> checks;
    std::vector<DiscEntry> entries;     ///< one per fundamental d in range, sorted
    std::vector<Counterexample> failures;
    std::size_t total_fields = 0;

    bool ok() const { return failures.empty(); }
};

SurveyReport run_survey(Int d_min, Int d_max, const SurveyOptions& opts = {});

std::string to_json(const SurveyReport& r);
/// One row per discriminant.
std::string to_csv(const SurveyReport& r);

}  // namespace cubictrace
