#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cubictrace/survey.hpp"

using namespace cubictrace;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kPass = 0, kViolation = 1, kInvalid = 2, kInconclusive = 3 };

int g_status = kPass;

void raise_status(int s)
{
    // inconclusive never hides a violation
    if (g_status == kPass || (g_status == kInconclusive && s == kViolation))
        g_status = s;
}

void emit(const json& j)
{
    std::cout << j.dump() << '\n';
}

json to_j(Int x)
{
    return x.to_ll();
}

json to_j(const Mat2& m)
{
    return json::array({json::array({to_j(m.a), to_j(m.b)}), json::array({to_j(m.c), to_j(m.d)})});
}

json to_j(const Unimodular2& m)
{
    return to_j(m.mat());
}

json to_j(const Mat3& m)
{
    json rows = json::array();
    for (const auto& r : m)
        rows.push_back(json::array({to_j(r[0]), to_j(r[1]), to_j(r[2])}));
    return rows;
}

Mat3 mat3_from_json(const json& j)
{
    Mat3 m;
    if (!j.is_array() || j.size() != 3)
        throw InvalidInput("expected a 3x3 integer matrix");
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3)
            throw InvalidInput("expected a 3x3 integer matrix");
        for (int k = 0; k < 3; ++k)
            m[i][k] = j[i][k].get<long long>();
    }
    return m;
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(Int(j.get<long long>()));
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    throw InvalidInput("basis coefficients must be integers or \"p/q\" strings");
}

struct SuppliedBasis {
    BinaryCubicForm form;
    std::array<ThetaPoly, 3> basis;
};

SuppliedBasis read_basis(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
    if (!j.contains("form") || !j.contains("basis") || !j["basis"].is_array() || j["basis"].size() != 3)
        throw InvalidInput(path + ": expected {\"form\": \"a,b,c,d\", \"basis\": [[..], [..], [..]]}");
    SuppliedBasis b;
    b.form = BinaryCubicForm::parse(j["form"].get<std::string>());
    for (int i = 0; i < 3; ++i) {
        const json& row = j["basis"][i];
        if (!row.is_array() || row.size() != 3)
            throw InvalidInput(path + ": each basis element needs three coefficients");
        for (int k = 0; k < 3; ++k)
            b.basis[i][k] = rational_from_json(row[k]);
    }
    return b;
}

json record_json(const CubicFieldRecord& r)
{
    return {{"form", r.form.str()},
            {"disc", to_j(r.disc)},
            {"signature", r.totally_real ? "totally-real" : "complex"},
            {"trace_zero", r.trace_zero.binary.str()},
            {"case", to_string(r.trace_zero.case_tag)},
            {"kernel_form", r.kernel_form.binary.str()},
            {"methods_agree", r.methods_agree},
            {"hessian", r.hessian.str()}};
}

json equivalence_json(const CubicEquivalence& e)
{
    json j{{"status", to_string(e.status)}, {"method", e.method}};
    j["witness"] = e.witness ? to_j(*e.witness) : json(nullptr);
    if (e.certificate_prime)
        j["certificate_prime"] = e.certificate_prime;
    return j;
}

// ---- qf ----

void add_qf(CLI::App& app)
{
    auto* qf = app.add_subcommand("qf", "binary quadratic forms")->require_subcommand(1);

    static std::string f1, f2, disc;
    static bool gl2 = false;

    auto* red = qf->add_subcommand("reduce", "reduce a form");
    red->add_option("form", f1, "a,b,c")->required();
    red->callback([] {
        BinaryQF f = BinaryQF::parse(f1);
        Int d = discriminant(f);
        Reduction r = d.sign() < 0 ? reduce_definite(f) : reduce_indefinite(f);
        json j{{"form", f.str()}, {"disc", to_j(d)}, {"reduced", r.form.str()}, {"witness", to_j(r.witness)}};
        if (d.sign() > 0) {
            json cycle = json::array();
            for (const auto& c : reduction_cycle(f))
                cycle.push_back(c.str());
            j["cycle"] = cycle;
        }
        emit(j);
    });

    auto* comp = qf->add_subcommand("compose", "Gauss composition");
    comp->add_option("f", f1, "a,b,c")->required();
    comp->add_option("g", f2, "a,b,c")->required();
    comp->callback([] {
        BinaryQF f = BinaryQF::parse(f1), g = BinaryQF::parse(f2);
        emit({{"f", f.str()}, {"g", g.str()}, {"composition", compose(f, g).str()}});
    });

    auto* cg = qf->add_subcommand("classgroup", "form class group of a discriminant");
    cg->add_option("disc", disc)->required();
    cg->callback([] {
        ClassGroup g = class_group(Int::parse(disc));
        json reps = json::array();
        for (const auto& r : g.representatives())
            reps.push_back(r.str());
        emit({{"discriminant", to_j(g.discriminant())},
              {"class_count", g.order()},
              {"invariant_factors", g.invariant_factors()},
              {"three_rank", three_rank(g)},
              {"ordinary_order", ordinary_class_number(g)},
              {"representatives", reps}});
    });

    auto* eq = qf->add_subcommand("equiv", "SL2 (or GL2) equivalence of two forms");
    eq->add_option("f", f1, "a,b,c")->required();
    eq->add_option("g", f2, "a,b,c")->required();
    eq->add_flag("--gl2", gl2, "allow determinant -1");
    eq->callback([] {
        BinaryQF f = BinaryQF::parse(f1), g = BinaryQF::parse(f2);
        json j{{"f", f.str()}, {"g", g.str()}};
        if (gl2) {
            j["gl2_equivalent"] = gl2_equivalent(f, g);
        } else {
            auto w = sl2_equivalent(f, g);
            j["sl2_equivalent"] = w.has_value();
            j["witness"] = w ? to_j(*w) : json(nullptr);
        }
        emit(j);
    });
}

// ---- cubic ----

void add_cubic(CLI::App& app)
{
    auto* cu = app.add_subcommand("cubic", "binary cubic forms")->require_subcommand(1);

    static std::string F, G, dmin, dmax, format = "json";
    static unsigned threads = 1;

    auto* disc = cu->add_subcommand("disc", "discriminant");
    disc->add_option("form", F, "a,b,c,d")->required();
    disc->callback([] {
        BinaryCubicForm f = BinaryCubicForm::parse(F);
        emit({{"form", f.str()}, {"disc", to_j(disc_cubic(f))}});
    });

    auto* hess = cu->add_subcommand("hessian", "Hessian covariant");
    hess->add_option("form", F, "a,b,c,d")->required();
    hess->callback([] {
        BinaryCubicForm f = BinaryCubicForm::parse(F);
        emit({{"form", f.str()}, {"hessian", hessian(f).str()}});
    });

    auto* eq = cu->add_subcommand("equiv", "GL2 equivalence of two cubic forms");
    eq->add_option("f", F, "a,b,c,d")->required();
    eq->add_option("g", G, "a,b,c,d")->required();
    eq->callback([] {
        CubicEquivalence e = cubic_equivalent(BinaryCubicForm::parse(F), BinaryCubicForm::parse(G));
        if (e.status == EquivalenceStatus::Inconclusive)
            raise_status(kInconclusive);
        emit(equivalence_json(e));
    });

    auto* en = cu->add_subcommand("enumerate", "cubic fields with fundamental discriminant in a range");
    en->add_option("--dmin", dmin)->required();
    en->add_option("--dmax", dmax)->required();
    en->add_option("--threads", threads);
    en->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    en->callback([] {
        EnumerationOptions o;
        o.threads = threads;
        auto fields = enumerate_fundamental(Int::parse(dmin), Int::parse(dmax), o);
        if (format == "csv")
            std::cout << "disc,form,reduced_form\n";
        for (const auto& f : fields) {
            if (format == "csv")
                std::cout << f.disc << ",\"" << f.form.str() << "\",\"" << f.reduced_form.str() << "\"\n";
            else
                emit({{"disc", to_j(f.disc)}, {"form", f.form.str()}, {"reduced_form", f.reduced_form.str()}});
        }
    });
}

// ---- trace ----

void add_trace(CLI::App& app)
{
    auto* tr = app.add_subcommand("trace", "trace forms")->require_subcommand(1);

    static std::string F, basis_path, target, m;
    static long long bound = 6;

    auto* form = tr->add_subcommand("form", "Gram matrix of the trace form on the ring basis");
    form->add_option("form", F, "a,b,c,d")->required();
    form->callback([] {
        TraceLattice l = full_gram(BinaryCubicForm::parse(F));
        TraceImageIndex t = trace_image_index(l);
        emit({{"form", l.form.str()},
              {"gram", to_j(l.gram)},
              {"det", to_j(mat3_det(l.gram))},
              {"trace_vector", {to_j(l.trace_vector[0]), to_j(l.trace_vector[1]), to_j(l.trace_vector[2])}},
              {"trace_image", to_j(t.image_generator)},
              {"index", to_j(t.index_OK_over_GK)},
              {"index_lemma_holds", t.lemma_holds}});
        if (!t.lemma_holds)
            raise_status(kViolation);
    });

    auto* zero = tr->add_subcommand("zero", "trace-zero binary form q/2");
    zero->add_option("form", F, "a,b,c,d")->required();
    zero->callback([] {
        BinaryCubicForm f = BinaryCubicForm::parse(F);
        TraceZeroForm k = trace_zero_sublattice(full_gram(f));
        json j{{"form", f.str()}, {"kernel", k.binary.str()}};
        if (is_fundamental_discriminant(disc_cubic(f))) {
            TraceZeroForm e = explicit_trace_form(f);
            bool agree = gl2_equivalent(e.binary, k.binary);
            j["explicit"] = e.binary.str();
            j["case"] = to_string(e.case_tag);
            j["agree"] = agree;
            if (!agree)
                raise_status(kViolation);
        }
        emit(j);
    });

    auto* gr = tr->add_subcommand("grouprel", "q/2 * C_d ~ H^(+-1)");
    gr->add_option("form", F, "a,b,c,d")->required();
    gr->callback([] {
        BinaryCubicForm f = BinaryCubicForm::parse(F);
        GroupRelation g = verify_grouprel(f);
        if (!g.holds)
            raise_status(kViolation);
        emit({{"form", f.str()},
              {"holds", g.holds},
              {"sign", g.sign},
              {"product", g.product.str()},
              {"hessian", hessian(f).str()}});
    });

    auto* c3 = tr->add_subcommand("caso3", "phi1(f_K) ~ q/6 for 3 | d");
    c3->add_option("form", F, "a,b,c,d")->required();
    c3->callback([] {
        Caso3Result r = verify_caso3(BinaryCubicForm::parse(F));
        if (!r.holds)
            raise_status(kViolation);
        emit({{"form", F},
              {"holds", r.holds},
              {"holds_up_to_inverse", r.holds_up_to_inverse},
              {"f_K", r.f_K.to_cubic().str()},
              {"phi1", r.phi1_image.str()},
              {"sixth_trace_form", r.sixth_trace_form.str()}});
    });

    auto* pure = tr->add_subcommand("pure", "trace Gram of Q(m^(1/3))");
    pure->add_option("m", m)->required();
    pure->callback([] { emit({{"m", m}, {"gram", to_j(pure_cubic_gram(Int::parse(m)).gram)}}); });

    auto* tc = tr->add_subcommand("ternary-check", "trace Gram on a supplied basis, optionally matched to a target");
    tc->add_option("basis", basis_path, "JSON file {form, basis}")->required();
    tc->add_option("--target", target, "JSON 3x3 Gram matrix");
    tc->add_option("--bound", bound, "entry bound for the search");
    tc->callback([] {
        SuppliedBasis b = read_basis(basis_path);
        TernaryForm t = gram_from_basis(b.form, b.basis);
        json j{{"form", b.form.str()}, {"gram", to_j(t.gram)}, {"det", to_j(mat3_det(t.gram))}};
        if (!target.empty()) {
            TernaryForm want{mat3_from_json(json::parse(target))};
            auto w = ternary_equivalent_bounded(t, want, bound);
            j["bound"] = bound;
            j["equivalent"] = w.has_value();
            j["witness"] = w ? to_j(*w) : json(nullptr);
            if (!w)
                raise_status(kInconclusive);
        }
        emit(j);
    });
}

// ---- cube ----

void add_cube(CLI::App& app)
{
    auto* cb = app.add_subcommand("cube", "Bhargava cubes")->require_subcommand(1);

    static std::string C, F, D, gauss, disc;
    static long long bound = 10;
    static unsigned threads = 1;

    auto* q1 = cb->add_subcommand("q1", "projections of a cube");
    auto* oc = q1->add_option("cube", C, "A00,A01,A10,A11,B00,B01,B10,B11");
    auto* of = q1->add_option("--field", F, "field cube of a,b,c,d");
    auto* od = q1->add_option("--c-cube", D, "the cube C_D");
    oc->excludes(of)->excludes(od);
    of->excludes(od);
    q1->callback([] {
        Cube c;
        if (!F.empty())
            c = field_cube(BinaryCubicForm::parse(F));
        else if (!D.empty())
            c = c_cube(Int::parse(D));
        else if (!C.empty())
            c = Cube::parse(C);
        else
            throw InvalidInput("give a cube, --field or --c-cube");
        emit({{"cube", c.str()},
              {"q1", q_i(c, 1).str()},
              {"q2", q_i(c, 2).str()},
              {"q3", q_i(c, 3).str()},
              {"disc", to_j(cube_disc(c))}});
    });

    auto* ph = cb->add_subcommand("phi1", "phi1 of a Gaussian form (a0, 3a1, 3a2, a3)");
    ph->add_option("form", gauss, "a0,a1,a2,a3")->required();
    ph->callback([] {
        GaussianCubicForm g = GaussianCubicForm::parse(gauss);
        BinaryQF q = phi1(g);
        emit({{"gaussian", g.str()}, {"cubic", g.to_cubic().str()}, {"phi1", q.str()}, {"disc", to_j(discriminant(q))}});
    });

    auto* g2 = cb->add_subcommand("grouprel2", "pi1(K_F + C_d) ~ (q/2)^(+-1)");
    g2->add_option("form", F, "a,b,c,d")->required();
    g2->callback([] {
        GroupRelation2 r = verify_grouprel2(BinaryCubicForm::parse(F));
        if (!r.holds)
            raise_status(kViolation);
        emit({{"form", F},
              {"holds", r.holds},
              {"sign", r.sign},
              {"q1", r.composed.q1.str()},
              {"q2", r.composed.q2.str()},
              {"q3", r.composed.q3.str()}});
    });

    auto* ss = cb->add_subcommand("surj-search", "3-torsion classes reached by phi1 in a coefficient box");
    ss->add_option("disc", disc)->required();
    ss->add_option("--bound", bound);
    ss->add_option("--threads", threads);
    ss->callback([] {
        SurjectivityReport r = phi1_surjectivity_search(Int::parse(disc), bound, threads);
        json hits = json::array();
        for (const auto& t : r.torsion) {
            json h{{"target", t.target.str()},
                   {"witness", t.witness ? json(t.witness->str()) : json(nullptr)},
                   {"forms_found", t.forms_found}};
            if (r.kernel_trivial_in_box)
                h["sl2_classes_found"] = t.sl2_classes_found;
            hits.push_back(h);
        }
        json j{{"disc", to_j(r.disc)}, {"bound", r.coeff_bound}, {"torsion", hits}, {"all_hit", r.all_hit}};
        if (r.kernel_trivial_in_box)
            j["kernel_trivial_in_box"] = *r.kernel_trivial_in_box;
        if (r.kernel_trivial_in_box == false)
            raise_status(kViolation);
        else if (!r.all_hit)
            raise_status(kInconclusive);
        emit(j);
    });
}

// ---- field ----

void add_field(CLI::App& app)
{
    auto* fd = app.add_subcommand("field", "cubic fields")->require_subcommand(1);

    static std::string F, G, d;
    static long long p = 0, p_max = 1000;

    auto* rec = fd->add_subcommand("record", "field record of a form");
    rec->add_option("form", F, "a,b,c,d")->required();
    rec->callback([] {
        CubicFieldRecord r = make_record(BinaryCubicForm::parse(F));
        if (!r.methods_agree)
            raise_status(kViolation);
        emit(record_json(r));
    });

    auto* sp = fd->add_subcommand("split", "factorization shape mod p");
    sp->add_option("form", F, "a,b,c,d")->required();
    sp->add_option("p", p)->required();
    sp->callback([] {
        emit({{"form", F}, {"p", p}, {"shape", to_string(splitting_type(BinaryCubicForm::parse(F), p))}});
    });

    auto* di = fd->add_subcommand("distinguish", "non-isomorphism certificate by splitting, then isomorphism test");
    di->add_option("f", F, "a,b,c,d")->required();
    di->add_option("g", G, "a,b,c,d")->required();
    di->add_option("--pmax", p_max);
    di->callback([] {
        BinaryCubicForm f = BinaryCubicForm::parse(F), g = BinaryCubicForm::parse(G);
        auto prime = distinguishing_prime(f, g, p_max);
        json j{{"f", f.str()}, {"g", g.str()}, {"pmax", p_max}};
        j["prime"] = prime ? json(*prime) : json(nullptr);
        if (prime) {
            j["shapes"] = {to_string(splitting_type(f, *prime)), to_string(splitting_type(g, *prime))};
            j["isomorphic"] = to_string(Verdict::No);
        } else {
            IsomorphismResult r = is_isomorphic(f, g, p_max);
            j["isomorphic"] = to_string(r.verdict);
            j["method"] = r.method;
            if (r.witness)
                j["witness"] = to_j(*r.witness);
            if (r.verdict == Verdict::Undecided)
                raise_status(kInconclusive);
        }
        emit(j);
    });

    auto* ha = fd->add_subcommand("hasse", "number of cubic fields against (3^r - 1) / 2");
    ha->add_option("disc", d)->required();
    ha->callback([] {
        HasseCount h = hasse_count_check(Int::parse(d));
        if (!h.ok)
            raise_status(kViolation);
        emit({{"disc", to_j(h.disc)}, {"fields_found", h.fields_found}, {"predicted", h.predicted}, {"ok", h.ok}});
    });
}

// ---- survey ----

void add_survey(CLI::App& app)
{
    auto* sv = app.add_subcommand("survey", "verification campaigns")->require_subcommand(1);

    static std::string dmin, dmax, out, format = "json", hasse_max = "5000", scholz_max = "5000";
    static std::vector<std::string> checks;
    static unsigned threads = 1;

    auto* run = sv->add_subcommand("run", "run checks over a discriminant range");
    run->add_option("--dmin", dmin)->required();
    run->add_option("--dmax", dmax)->required();
    run->add_option("--checks", checks, "comma-separated check names (default: all)")->delimiter(',');
    run->add_option("--threads", threads);
    run->add_option("--out", out, "output file (default: stdout)");
    run->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--hasse-positive-max", hasse_max);
    run->add_option("--scholz-max", scholz_max);
    run->callback([] {
        SurveyOptions o;
        o.checks.insert(checks.begin(), checks.end());
        o.threads = threads;
        o.hasse_positive_max = Int::parse(hasse_max);
        o.scholz_max = Int::parse(scholz_max);
        SurveyReport r = run_survey(Int::parse(dmin), Int::parse(dmax), o);
        const std::string body = format == "csv" ? to_csv(r) : to_json(r);
        if (out.empty()) {
            std::cout << body;
        } else {
            std::ofstream f(out);
            if (!f)
                throw InvalidInput("cannot write " + out);
            f << body;
        }
        std::cerr << r.total_fields << " fields, " << r.failures.size() << " failures\n";
        if (!r.ok())
            raise_status(kViolation);
    });
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact arithmetic for trace forms of cubic fields, class groups and Bhargava cubes"};
    app.require_subcommand(1);
    add_qf(app);
    add_cubic(app);
    add_trace(app);
    add_cube(app);
    add_field(app);
    add_survey(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInvalid;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kInvalid;
    } catch (const json::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::logic_error& e) {
        std::cerr << "violation: " << e.what() << '\n';
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return g_status;
}
