#include "cubictrace/survey.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "parallel.hpp"

namespace cubictrace {

namespace {

Int gcd3(Int d)
{
    return divides(3, d) ? Int(3) : Int(1);
}

// Discriminant of Q(sqrt(-3d)) for fundamental d.
Int reflected_field_disc(Int d)
{
    return divides(3, d) ? -d / 3 : d * -3;
}

bool b_not_minus_c(const BinaryCubicForm& f)
{
    return !divides(3, f.b + f.c);
}

struct Outcome {
    DiscEntry entry;
    std::vector<Counterexample> failures;
};

class DiscWorker {
public:
    DiscWorker(const SurveyOptions& opts, const std::set<std::string>& checks, Int d,
               const std::vector<EnumeratedField>& fields)
        : opts_(opts), checks_(checks), d_(d), fields_(fields)
    {
        out_.entry.d = d;
    }

    Outcome run()
    {
        for (const auto& f : fields_) {
            try {
                records_.push_back(make_record(f.form));
            } catch (const std::exception& e) {
                fail("record", {f.form}, e.what());
            }
        }
        for (const auto& r : records_)
            out_.entry.fields.push_back({r.form, r.trace_zero.binary, r.trace_zero.case_tag, std::nullopt});

        guarded("kernel", [&] { kernel(); });
        guarded("tracedisc", [&] { tracedisc(); });
        guarded("tamanio", [&] { tamanio(); });
        guarded("hasse", [&] { hasse(); });
        guarded("grouprel", [&] { grouprel(); });
        guarded("grouprel2", [&] { grouprel2(); });
        guarded("caso3", [&] { caso3(); });
        guarded("principal", [&] { principal(); });
        guarded("principal-analogue", [&] { principal_analogue(); });
        guarded("gk", [&] { gk(); });
        guarded("scholz", [&] { scholz(); });
        return std::move(out_);
    }

private:
    bool enabled(const std::string& c) const { return checks_.count(c) > 0; }

    template <class F>
    void guarded(const std::string& check, F&& body)
    {
        if (!enabled(check) && !(check == "gk" && (enabled("theta") || enabled("ordertrace"))))
            return;
        try {
            body();
        } catch (const std::exception& e) {
            fail(check, {}, std::string("error: ") + e.what());
        }
    }

    void fail(const std::string& check, std::vector<BinaryCubicForm> forms, std::string detail)
    {
        out_.failures.push_back({check, d_, std::move(forms), std::move(detail)});
    }

    const ClassGroup& own_group()
    {
        if (!own_group_)
            own_group_.emplace(d_);
        return *own_group_;
    }

    void kernel()
    {
        bool ok = true;
        for (const auto& r : records_) {
            for (const auto& alt : applicable_trace_forms(r.form)) {
                if (!gl2_equivalent(alt.binary, r.kernel_form.binary)) {
                    ok = false;
                    fail("kernel", {r.form},
                         "case " + to_string(alt.case_tag) + " gives " + alt.binary.str()
                             + ", kernel gives " + r.kernel_form.binary.str());
                }
            }
        }
        out_.entry.kernel_ok = ok;
    }

    void tracedisc()
    {
        bool ok = true;
        for (const auto& r : records_) {
            const BinaryQF& q = r.trace_zero.binary;
            const Int want_content = gcd3(d_);
            if (discriminant(q) != d_ * -3 || content(q) != want_content) {
                ok = false;
                fail("tracedisc", {r.form},
                     "trace-zero form " + q.str() + " has discriminant " + discriminant(q).str()
                         + " and content " + content(q).str());
            }
        }
        out_.entry.tracedisc_ok = ok;
    }

    void tamanio()
    {
        bool ok = true;
        for (const auto& r : records_) {
            TraceImageIndex t = trace_image_index(full_gram(r.form));
            if (!t.lemma_holds) {
                ok = false;
                fail("tamanio", {r.form},
                     "trace image " + t.image_generator.str() + "Z, index " + t.index_OK_over_GK.str());
            }
        }
        out_.entry.tamanio_ok = ok;
    }

    void hasse()
    {
        if (d_.sign() > 0 && d_ > opts_.hasse_positive_max)
            return;
        HasseCount h;
        h.disc = d_;
        h.fields_found = fields_.size();
        std::size_t pow3 = 1;
        for (unsigned i = three_rank(own_group()); i > 0; --i)
            pow3 *= 3;
        h.predicted = (pow3 - 1) / 2;
        h.ok = h.fields_found == h.predicted;
        out_.entry.hasse = h;
        if (!h.ok)
            fail("hasse", {},
                 "found " + std::to_string(h.fields_found) + " fields, predicted "
                     + std::to_string(h.predicted));
    }

    void grouprel()
    {
        if (divides(3, d_) || records_.empty())
            return;
        bool ok = true;
        for (const auto& r : records_) {
            GroupRelation g = verify_grouprel(r.form);
            if (!g.holds || (b_not_minus_c(r.form) && g.sign != 1)) {
                ok = false;
                fail("grouprel", {r.form},
                     "q/2 * C = " + g.product.str() + ", sign " + std::to_string(g.sign));
            }
        }
        out_.entry.grouprel_ok = ok;
    }

    void grouprel2()
    {
        if (divides(3, d_) || records_.empty())
            return;
        bool ok = true;
        for (const auto& r : records_) {
            GroupRelation2 g = verify_grouprel2(r.form);
            if (!g.holds || (b_not_minus_c(r.form) && g.sign != 1)) {
                ok = false;
                fail("grouprel2", {r.form},
                     "pi1(T) = " + g.composed.q1.str() + ", sign " + std::to_string(g.sign));
            }
        }
        out_.entry.grouprel2_ok = ok;
    }

    void caso3()
    {
        if (!divides(3, d_) || records_.empty())
            return;
        bool ok = true;
        for (const auto& r : records_) {
            Caso3Result c = verify_caso3(r.form);
            if (!c.holds) {
                ok = false;
                fail("caso3", {r.form},
                     "phi1(f_K) = " + c.phi1_image.str() + ", q/6 = " + c.sixth_trace_form.str()
                         + (c.holds_up_to_inverse ? " (inverse classes)" : ""));
            }
        }
        out_.entry.caso3_ok = ok;
    }

    void principal()
    {
        if (d_.sign() < 0 || records_.empty())
            return;
        bool ok = true;
        for (std::size_t i = 0; i < records_.size(); ++i)
            for (std::size_t j = i + 1; j < records_.size(); ++j)
                if (gl2_equivalent(records_[i].trace_zero.binary, records_[j].trace_zero.binary)) {
                    ok = false;
                    fail("principal", {records_[i].form, records_[j].form},
                         "non-isomorphic fields with equivalent trace-zero forms");
                }
        out_.entry.principal_ok = ok;
    }

    void principal_analogue()
    {
        if (d_.sign() > 0)
            return;
        for (std::size_t i = 0; i < records_.size(); ++i)
            for (std::size_t j = i + 1; j < records_.size(); ++j)
                if (gl2_equivalent(records_[i].trace_zero.binary, records_[j].trace_zero.binary))
                    out_.entry.collisions.emplace_back(records_[i].form, records_[j].form);
    }

    void gk()
    {
        if (d_.sign() < 0 || records_.empty())
            return;
        const ClassGroup group(-3 * d_ / (gcd3(d_) * gcd3(d_)));
        std::vector<GKElement> elems;
        bool ok = true;
        for (std::size_t i = 0; i < records_.size(); ++i) {
            GKElement g = gk_element(records_[i], &group);
            out_.entry.fields[i].gk_order = g.order;
            if (!g.relation_ok) {
                ok = false;
                fail("gk", {g.form},
                     divides(3, d_) ? "order " + std::to_string(g.order) + " does not divide 3"
                                    : "g^3 is not C_form(d) for g = " + g.generator.str());
            }
            elems.push_back(g);
        }
        if (enabled("gk"))
            out_.entry.gk_ok = ok;
        if (enabled("theta")) {
            bool inj = theta_injectivity(elems);
            out_.entry.theta_injective = inj;
            if (!inj)
                fail("theta", forms(), "two fields share the subgroup <g^2>");
        }
        if (enabled("ordertrace")) {
            bool inj = ordertrace_injectivity(elems);
            out_.entry.ordertrace_injective = inj;
            if (!inj)
                fail("ordertrace", forms(), "two fields share the subgroup <g>");
        }
    }

    void scholz()
    {
        if (d_.sign() < 0 || d_ > opts_.scholz_max)
            return;
        ScholzCheck s;
        s.s = three_rank(own_group());
        s.r = three_rank(class_group(reflected_field_disc(d_)));
        s.ok = s.s <= s.r;
        out_.entry.scholz = s;
        if (!s.ok)
            fail("scholz", {}, "s = " + std::to_string(s.s) + " > r = " + std::to_string(s.r));
    }

    std::vector<BinaryCubicForm> forms() const
    {
        std::vector<BinaryCubicForm> v;
        for (const auto& r : records_)
            v.push_back(r.form);
        return v;
    }

    const SurveyOptions& opts_;
    const std::set<std::string>& checks_;
    Int d_;
    const std::vector<EnumeratedField>& fields_;
    std::vector<CubicFieldRecord> records_;
    std::optional<ClassGroup> own_group_;
    Outcome out_;
};

nlohmann::ordered_json opt_bool(const std::optional<bool>& b)
{
    return b ? nlohmann::ordered_json(*b) : nlohmann::ordered_json(nullptr);
}

std::string csv_bool(const std::optional<bool>& b)
{
    return b ? (*b ? "true" : "false") : "";
}

}  // namespace

GKElement gk_element(const CubicFieldRecord& rec, const ClassGroup* group)
{
    GKElement g;
    g.form = rec.form;
    const Int d = rec.disc;
    const Int n = gcd3(d);
    g.group_disc = d * -3 / (n * n);
    g.negative_disc = d.sign() < 0;
    if (n == 1) {
        g.generator = rec.trace_zero.binary;
        g.relation_ok = same_sl2_class(power(g.generator, 3), C_form(d));
    } else {
        g.generator = phi1(GaussianCubicForm::from_cubic(f_K_form(rec.form)));
    }
    if (group && group->discriminant() != g.group_disc)
        throw InvalidInput("gk_element: class group has the wrong discriminant");
    g.order = group ? order_of(g.generator, *group) : order_of(g.generator, class_group(g.group_disc));
    if (n == 3)
        g.relation_ok = 3 % g.order == 0;
    return g;
}

std::set<std::size_t> cyclic_subgroup(const ClassGroup& group, const BinaryQF& g)
{
    std::set<std::size_t> s;
    const std::size_t x = group.index_of(g);
    std::size_t y = group.identity_index();
    do {
        s.insert(y);
        y = group.compose_index(y, x);
    } while (y != group.identity_index());
    return s;
}

namespace {

bool distinct_subgroups(const std::vector<GKElement>& elements, int exponent)
{
    if (elements.size() < 2)
        return true;
    const ClassGroup group(elements.front().group_disc);
    std::set<std::set<std::size_t>> seen;
    for (const auto& e : elements) {
        BinaryQF h = exponent == 1 ? e.generator : power(e.generator, exponent);
        if (!seen.insert(cyclic_subgroup(group, h)).second)
            return false;
    }
    return true;
}

}  // namespace

bool theta_injectivity(const std::vector<GKElement>& elements)
{
    return distinct_subgroups(elements, 2);
}

bool ordertrace_injectivity(const std::vector<GKElement>& elements)
{
    return distinct_subgroups(elements, 1);
}

bool theta_injectivity(Int d)
{
    if (d.sign() <= 0 || !is_fundamental_discriminant(d))
        throw InvalidInput("theta_injectivity: " + d.str() + " is not a positive fundamental discriminant");
    std::vector<GKElement> elems;
    for (const auto& f : enumerate_fundamental(d, d))
        elems.push_back(gk_element(make_record(f.form)));
    return theta_injectivity(elems);
}

ScholzCheck scholz_check(Int d)
{
    if (d.sign() <= 0 || !is_fundamental_discriminant(d))
        throw InvalidInput("scholz_check: " + d.str() + " is not a positive fundamental discriminant");
    ScholzCheck s;
    s.s = three_rank(class_group(d));
    s.r = three_rank(class_group(reflected_field_disc(d)));
    s.ok = s.s <= s.r;
    return s;
}

const std::vector<std::string>& all_checks()
{
    static const std::vector<std::string> names{
        "hasse", "grouprel", "grouprel2", "caso3", "principal", "principal-analogue", "scholz",
        "gk", "theta", "ordertrace", "kernel", "tracedisc", "tamanio"};
    return names;
}

SurveyReport run_survey(Int d_min, Int d_max, const SurveyOptions& opts)
{
    std::set<std::string> checks = opts.checks;
    for (const auto& c : checks)
        if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
            throw InvalidInput("run_survey: unknown check '" + c + "'");
    if (checks.empty())
        checks.insert(all_checks().begin(), all_checks().end());

    SurveyReport report;
    report.d_min = d_min;
    report.d_max = d_max;
    for (const auto& c : all_checks())
        if (checks.count(c))
            report.checks.push_back(c);
    if (d_min > d_max)
        return report;

    EnumerationOptions eo;
    eo.threads = opts.threads;
    std::map<Int, std::vector<EnumeratedField>> by_disc;
    for (auto& f : enumerate_fundamental(d_min, d_max, eo))
        by_disc[f.disc].push_back(f);

    std::vector<Int> discs;
    for (Int d = d_min; d <= d_max; d += 1)
        if (is_fundamental_discriminant(d))
            discs.push_back(d);

    static const std::vector<EnumeratedField> none;
    std::vector<Outcome> outcomes(discs.size());
    detail::run_partitioned(opts.threads, discs.size(), [&](std::size_t i) {
        auto it = by_disc.find(discs[i]);
        DiscWorker w(opts, checks, discs[i], it == by_disc.end() ? none : it->second);
        outcomes[i] = w.run();
    });
    for (auto& o : outcomes) {
        report.total_fields += o.entry.fields.size();
        report.entries.push_back(std::move(o.entry));
        for (auto& f : o.failures)
            report.failures.push_back(std::move(f));
    }
    return report;
}

std::string to_json(const SurveyReport& r)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["range"] = {r.d_min.to_ll(), r.d_max.to_ll()};
    j["checks"] = r.checks;
    j["total_fields"] = r.total_fields;
    j["ok"] = r.ok();
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries) {
        ordered_json x;
        x["d"] = e.d.to_ll();
        ordered_json fields = ordered_json::array();
        for (const auto& f : e.fields) {
            ordered_json y;
            y["form"] = f.form.str();
            y["trace_zero"] = f.trace_zero.str();
            y["case"] = to_string(f.trace_case);
            if (f.gk_order)
                y["gk_order"] = *f.gk_order;
            fields.push_back(y);
        }
        x["fields"] = fields;
        if (e.hasse)
            x["hasse"] = {{"found", e.hasse->fields_found},
                          {"predicted", e.hasse->predicted},
                          {"ok", e.hasse->ok}};
        const std::pair<const char*, const std::optional<bool>*> flags[] = {
            {"principal_ok", &e.principal_ok},       {"grouprel_ok", &e.grouprel_ok},
            {"grouprel2_ok", &e.grouprel2_ok},       {"caso3_ok", &e.caso3_ok},
            {"kernel_ok", &e.kernel_ok},             {"tracedisc_ok", &e.tracedisc_ok},
            {"tamanio_ok", &e.tamanio_ok},           {"gk_ok", &e.gk_ok},
            {"theta_injective", &e.theta_injective}, {"ordertrace_injective", &e.ordertrace_injective}};
        for (const auto& [name, value] : flags)
            if (value->has_value())
                x[name] = opt_bool(*value);
        if (e.scholz)
            x["scholz"] = {{"s", e.scholz->s}, {"r", e.scholz->r}, {"ok", e.scholz->ok}};
        if (!e.collisions.empty()) {
            ordered_json c = ordered_json::array();
            for (const auto& [f, g] : e.collisions)
                c.push_back({f.str(), g.str()});
            x["collisions"] = c;
        }
        entries.push_back(x);
    }
    j["entries"] = entries;
    ordered_json failures = ordered_json::array();
    for (const auto& f : r.failures) {
        ordered_json forms = ordered_json::array();
        for (const auto& g : f.forms)
            forms.push_back(g.str());
        failures.push_back({{"check", f.check}, {"d", f.d.to_ll()}, {"forms", forms}, {"detail", f.detail}});
    }
    j["failures"] = failures;
    return j.dump(2) + "\n";
}

std::string to_csv(const SurveyReport& r)
{
    std::ostringstream os;
    os << "d,fields,hasse_found,hasse_predicted,hasse_ok,principal_ok,grouprel_ok,grouprel2_ok,caso3_ok,"
          "kernel_ok,tracedisc_ok,tamanio_ok,gk_ok,gk_orders,theta_injective,ordertrace_injective,"
          "scholz_s,scholz_r,scholz_ok,collisions\n";
    for (const auto& e : r.entries) {
        os << e.d << ',' << e.fields.size() << ',';
        if (e.hasse)
            os << e.hasse->fields_found << ',' << e.hasse->predicted << ',' << csv_bool(e.hasse->ok);
        else
            os << ",,";
        for (const auto* b : {&e.principal_ok, &e.grouprel_ok, &e.grouprel2_ok, &e.caso3_ok, &e.kernel_ok,
                              &e.tracedisc_ok, &e.tamanio_ok, &e.gk_ok})
            os << ',' << csv_bool(*b);
        os << ',';
        bool first = true;
        for (const auto& f : e.fields)
            if (f.gk_order) {
                os << (first ? "" : ";") << *f.gk_order;
                first = false;
            }
        os << ',' << csv_bool(e.theta_injective) << ',' << csv_bool(e.ordertrace_injective) << ',';
        if (e.scholz)
            os << e.scholz->s << ',' << e.scholz->r << ',' << csv_bool(e.scholz->ok);
        else
            os << ",,";
        os << ',' << e.collisions.size() << '\n';
    }
    return os.str();
}

}  // namespace cubictrace
