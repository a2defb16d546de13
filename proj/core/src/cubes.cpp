#include "cubictrace/cubes.hpp"

#include <map>

#include "parallel.hpp"
#include "parse_util.hpp"

namespace cubictrace {

namespace {

Int det2(Int a, Int b, Int c, Int d)
{
    return a * d - b * c;
}

// -det of the matrix whose columns are M1 v and M2 v
BinaryQF column_form(const Mat2& m1, const Mat2& m2)
{
    // M1 v = (m1.a x + m1.b y, m1.c x + m1.d y)
    const Int xx = det2(m1.a, m2.a, m1.c, m2.c);
    const Int yy = det2(m1.b, m2.b, m1.d, m2.d);
    const Int xy = m1.a * m2.d + m1.b * m2.c - m2.a * m1.d - m2.b * m1.c;
    return {-xx, -xy, -yy};
}

Mat2 lin(Int p, const Mat2& x, Int q, const Mat2& y)
{
    return {p * x.a + q * y.a, p * x.b + q * y.b, p * x.c + q * y.c, p * x.d + q * y.d};
}

void require_proper(const Unimodular2& g, const char* what)
{
    if (g.det() != 1)
        throw InvalidInput(std::string("gamma_act: ") + what + " has determinant -1");
}

// Negative discriminant: a negative definite form (A, B, C) stands for the
// class of (-A, B, -C) with orientation -1.
bool negative(const BinaryQF& q)
{
    return discriminant(q).sign() < 0 && q.a.sign() < 0;
}

BinaryQF positive_part(const BinaryQF& q)
{
    return negative(q) ? BinaryQF{-q.a, q.b, -q.c} : q;
}

BinaryQF with_orientation(const BinaryQF& q, bool neg)
{
    return neg ? BinaryQF{-q.a, q.b, -q.c} : q;
}

BinaryQF oriented_canonical(const BinaryQF& q)
{
    return with_orientation(canonical_form(positive_part(q)), negative(q));
}

BinaryQF oriented_compose(const BinaryQF& x, const BinaryQF& y)
{
    return with_orientation(compose(positive_part(x), positive_part(y)), negative(x) != negative(y));
}

bool trivial_product(const BinaryQF& q1, const BinaryQF& q2, const BinaryQF& q3)
{
    BinaryQF p = oriented_compose(oriented_compose(q1, q2), q3);
    return !negative(p) && same_sl2_class(p, identity_form(discriminant(q1)));
}

}  // namespace

std::string Cube::str() const
{
    std::string s;
    for (const Mat2* m : {&A, &B})
        for (Int x : {m->a, m->b, m->c, m->d})
            s += (s.empty() ? "" : ",") + x.str();
    return s;
}

Cube Cube::parse(const std::string& text)
{
    auto v = detail::parse_int_list(text, 8, "cube");
    return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
}

GaussianCubicForm GaussianCubicForm::from_cubic(const BinaryCubicForm& f)
{
    if (!divides(3, f.b) || !divides(3, f.c))
        throw InvalidInput("cubic form " + f.str() + " is not Gaussian");
    return {f.a, f.b / 3, f.c / 3, f.d};
}

std::string GaussianCubicForm::str() const
{
    return a0.str() + "," + a1.str() + "," + a2.str() + "," + a3.str();
}

GaussianCubicForm GaussianCubicForm::parse(const std::string& text)
{
    auto v = detail::parse_int_list(text, 4, "Gaussian cubic form");
    return {v[0], v[1], v[2], v[3]};
}

BinaryQF q_i(const Cube& c, int i)
{
    switch (i) {
    case 1: {
        const Mat2& A = c.A;
        const Mat2& B = c.B;
        return {-A.det(), -(A.a * B.d + B.a * A.d - A.b * B.c - B.b * A.c), -B.det()};
    }
    case 2: return column_form(c.A, c.B);
    case 3: return column_form(c.A.transpose(), c.B.transpose());
    default: throw InvalidInput("q_i: index must be 1, 2 or 3");
    }
}

Int cube_disc(const Cube& c)
{
    Int d1 = discriminant(q_i(c, 1)), d2 = discriminant(q_i(c, 2)), d3 = discriminant(q_i(c, 3));
    if (d1 != d2 || d1 != d3)
        throw std::logic_error("cube_disc: projections disagree");
    return d1;
}

Cube gamma_act(const Cube& c, const Unimodular2& g1, const Unimodular2& g2, const Unimodular2& g3)
{
    require_proper(g1, "g1");
    require_proper(g2, "g2");
    require_proper(g3, "g3");
    const Mat2 g2t = g2.mat().transpose();
    const Mat2 a = g3.mat() * c.A * g2t;
    const Mat2 b = g3.mat() * c.B * g2t;
    return {lin(g1.a(), a, g1.b(), b), lin(g1.c(), a, g1.d(), b)};
}

Cube iota(const GaussianCubicForm& f)
{
    return {{f.a0, f.a1, f.a1, f.a2}, {f.a1, f.a2, f.a2, f.a3}};
}

Cube field_cube(const BinaryCubicForm& f)
{
    return iota({f.a * 3, f.b, f.c, f.d * 3});
}

Cube c_cube(Int D)
{
    if (!is_fundamental_discriminant(D))
        throw InvalidInput("c_cube: " + D.str() + " is not a fundamental discriminant");
    if (floor_mod(D, 4).is_zero())
        return {{0, 3, 1, 0}, {D / 4, 0, 0, -1}};
    return {{0, 3, 1, 0}, {(D + 3) / 4, 3, 0, -1}};
}

CubeClass cube_class(const Cube& c)
{
    const Int disc = cube_disc(c);
    BinaryQF q[3] = {q_i(c, 1), q_i(c, 2), q_i(c, 3)};
    for (int i = 0; i < 3; ++i)
        if (!is_primitive(q[i]))
            throw InvalidInput("cube_class: projection Q" + std::to_string(i + 1) + " = " + q[i].str()
                               + " is not primitive");
    if (!trivial_product(q[0], q[1], q[2]))
        throw std::logic_error("cube_class: Q1 * Q2 * Q3 is not the identity class");
    return {disc, oriented_canonical(q[0]), oriented_canonical(q[1]), oriented_canonical(q[2])};
}

CubeClass compose_classes(const CubeClass& x, const CubeClass& y)
{
    if (x.disc != y.disc)
        throw InvalidInput("compose_classes: discriminants differ (" + x.disc.str() + " vs "
                           + y.disc.str() + ")");
    CubeClass r{x.disc, oriented_compose(x.q1, y.q1), oriented_compose(x.q2, y.q2),
                oriented_compose(x.q3, y.q3)};
    if (!trivial_product(r.q1, r.q2, r.q3))
        throw std::logic_error("compose_classes: relation lost under composition");
    return r;
}

BinaryQF phi1(const GaussianCubicForm& f)
{
    return {f.a1 * f.a1 - f.a0 * f.a2, f.a1 * f.a2 - f.a0 * f.a3, f.a2 * f.a2 - f.a1 * f.a3};
}

GroupRelation2 verify_grouprel2(const BinaryCubicForm& f)
{
    const Int d = disc_cubic(f);
    if (!is_fundamental_discriminant(d))
        throw InvalidInput("verify_grouprel2: " + d.str() + " is not a fundamental discriminant");
    if (divides(3, d))
        throw InvalidInput("verify_grouprel2: 3 divides the discriminant " + d.str());
    GroupRelation2 r;
    r.composed = compose_classes(cube_class(field_cube(f)), cube_class(c_cube(d)));
    const BinaryQF q = explicit_trace_form(f).binary;
    if (same_sl2_class(r.composed.q1, q))
        r.sign = 1;
    else if (same_sl2_class(r.composed.q1, inverse(q)))
        r.sign = -1;
    r.holds = r.sign != 0;
    return r;
}

Caso3Result verify_caso3(const BinaryCubicForm& f)
{
    Caso3Result r;
    r.f_K = GaussianCubicForm::from_cubic(f_K_form(f));
    r.phi1_image = phi1(r.f_K);
    const BinaryQF q = explicit_trace_form(f).binary;
    r.sixth_trace_form = {exact_div(q.a, 3, "caso3"), exact_div(q.b, 3, "caso3"), exact_div(q.c, 3, "caso3")};
    if (discriminant(r.phi1_image) != discriminant(r.sixth_trace_form))
        return r;
    r.holds = same_sl2_class(r.phi1_image, r.sixth_trace_form);
    r.holds_up_to_inverse = r.holds || same_sl2_class(r.phi1_image, inverse(r.sixth_trace_form));
    return r;
}

SurjectivityReport phi1_surjectivity_search(Int disc, long long bound, unsigned threads)
{
    if (!is_fundamental_discriminant(disc))
        throw InvalidInput("phi1_surjectivity_search: " + disc.str() + " is not a fundamental discriminant");
    if (bound < 0)
        throw InvalidInput("phi1_surjectivity_search: negative coefficient bound");
    const ClassGroup group(disc);

    struct Hit {
        std::size_t cls;
        GaussianCubicForm f;
    };
    const std::size_t parts = static_cast<std::size_t>(2 * bound + 1);
    std::vector<std::vector<Hit>> found(parts);
    auto work = [&](std::size_t idx) {
        const Int a0 = Int(static_cast<long long>(idx) - bound);
        for (long long x1 = -bound; x1 <= bound; ++x1)
            for (long long x2 = -bound; x2 <= bound; ++x2) {
                const Int a1 = x1, a2 = x2;
                const Int A1 = a1 * a1 - a0 * a2;
                // disc(phi1) = alpha a3^2 + beta a3 + gamma + disc
                const Int alpha = a0 * a0;
                const Int beta = -a0 * a1 * a2 * 2 + A1 * a1 * 4;
                const Int gamma = a1 * a1 * a2 * a2 - A1 * a2 * a2 * 4 - disc;
                std::vector<Int> roots;
                if (alpha.is_zero()) {
                    if (beta.is_zero()) {
                        if (gamma.is_zero())
                            for (long long x3 = -bound; x3 <= bound; ++x3)
                                roots.push_back(x3);
                    } else if (divides(beta, gamma)) {
                        roots.push_back(-gamma / beta);
                    }
                } else {
                    Int delta = beta * beta - alpha * gamma * 4;
                    if (delta.sign() >= 0 && is_square(delta)) {
                        Int s = isqrt(delta);
                        for (Int num : {-beta + s, -beta - s}) {
                            if (divides(alpha * 2, num))
                                roots.push_back(num / (alpha * 2));
                            if (s.is_zero())
                                break;
                        }
                    }
                }
                for (Int a3 : roots) {
                    if (abs(a3) > Int(bound))
                        continue;
                    GaussianCubicForm f{a0, a1, a2, a3};
                    BinaryQF q = phi1(f);
                    if (discriminant(q) != disc)
                        throw std::logic_error("phi1_surjectivity_search: discriminant mismatch");
                    if (!is_primitive(q))
                        continue;
                    found[idx].push_back({group.index_of(q), f});
                }
            }
    };
    detail::run_partitioned(threads, parts, work);

    SurjectivityReport rep;
    rep.disc = disc;
    rep.coeff_bound = bound;
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < group.order(); ++i)
        if (group.power_index(i, 3) == group.identity_index()) {
            slot[i] = rep.torsion.size();
            rep.torsion.push_back({group.representatives()[i], std::nullopt, 0, 0});
        }
    const bool track_kernel = disc < Int(-3);
    // per class: (GL2 reduced key, representative) of each SL2-class seen
    std::vector<std::vector<std::pair<BinaryCubicForm, BinaryCubicForm>>> classes(rep.torsion.size());
    bool kernel_trivial = true;
    for (const auto& part : found)
        for (const auto& h : part) {
            auto it = slot.find(h.cls);
            if (it == slot.end())
                throw std::logic_error("phi1 image " + phi1(h.f).str() + " is not 3-torsion");
            TorsionHit& t = rep.torsion[it->second];
            ++t.forms_found;
            if (!t.witness)
                t.witness = h.f;
            if (!track_kernel)
                continue;
            const BinaryCubicForm cubic = h.f.to_cubic();
            const BinaryCubicForm key = reduce_cubic(cubic).form;
            bool known = false;
            for (const auto& [k, r] : classes[it->second]) {
                if (k != key)
                    continue;
                CubicEquivalence e = cubic_sl2_equivalent(cubic, r);
                if (e.status == EquivalenceStatus::Equivalent) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                classes[it->second].emplace_back(key, cubic);
                if (classes[it->second].size() > 1)
                    kernel_trivial = false;
            }
        }
    rep.all_hit = true;
    for (std::size_t i = 0; i < rep.torsion.size(); ++i) {
        rep.torsion[i].sl2_classes_found = classes[i].size();
        rep.all_hit = rep.all_hit && rep.torsion[i].witness.has_value();
    }
    if (track_kernel)
        rep.kernel_trivial_in_box = kernel_trivial;
    return rep;
}

}  // namespace cubictrace
