#include "cubictrace/qform.hpp"

#include <algorithm>
#include <sstream>

#include "parse_util.hpp"

namespace cubictrace {

namespace {

// Precomputed data for rho steps at a fixed positive discriminant.
struct IndefiniteContext {
    Int disc;
    Int root;  // floor(sqrt(disc)); sqrt(disc) is irrational

    explicit IndefiniteContext(Int d) : disc(d), root(isqrt(d)) {}

    bool is_reduced(const BinaryQF& f) const
    {
        if (f.b.sign() <= 0 || f.b > root)
            return false;
        Int two_a = abs(f.a) * 2;
        Int lo = f.b + two_a;
        if (!(disc < lo * lo))
            return false;
        Int hi = two_a - f.b;
        return hi.sign() <= 0 || hi * hi < disc;
    }

    // r = -b (mod 2c) in the normalizing interval of the rho operator.
    Int normalizer(Int minus_b, Int c) const
    {
        Int m = abs(c) * 2;
        Int lower = abs(c) > root ? -abs(c) + 1 : root - m + 1;
        return lower + floor_mod(minus_b - lower, m);
    }

    BinaryQF rho(const BinaryQF& f, Int* t_out = nullptr) const
    {
        Int r = normalizer(-f.b, f.c);
        if (t_out)
            *t_out = exact_div(r + f.b, f.c * 2, "rho");
        Int c_new = exact_div(r * r - disc, f.c * 4, "rho");
        return {f.c, r, c_new};
    }

    BinaryQF reduce(BinaryQF f) const
    {
        while (!is_reduced(f))
            f = rho(f);
        return f;
    }
};

Unimodular2 rho_matrix(Int t)
{
    return Unimodular2(Mat2{0, -1, 1, t});
}

void require_nonsquare(Int disc, const char* what)
{
    if (disc.is_zero() || is_square(disc))
        throw InvalidInput(std::string(what) + ": square discriminant " + disc.str());
}

// An SL2-equivalent form with a > 0 (indefinite forms), used by composition.
BinaryQF with_positive_a(const BinaryQF& f)
{
    if (f.a.sign() > 0)
        return f;
    if (f.c.sign() > 0)
        return {f.c, -f.b, f.a};
    IndefiniteContext ctx(discriminant(f));
    BinaryQF g = ctx.reduce(f);
    while (g.a.sign() <= 0)
        g = ctx.rho(g);
    return g;
}

}  // namespace

std::string BinaryQF::str() const
{
    return a.str() + "," + b.str() + "," + c.str();
}

BinaryQF BinaryQF::parse(const std::string& text)
{
    auto v = detail::parse_int_list(text, 3, "quadratic form");
    return {v[0], v[1], v[2]};
}

std::ostream& operator<<(std::ostream& os, const BinaryQF& f)
{
    return os << "(" << f.str() << ")";
}

Int discriminant(const BinaryQF& f)
{
    return f.b * f.b - f.a * f.c * 4;
}

Int content(const BinaryQF& f)
{
    return gcd(f.a, f.b, f.c);
}

bool is_primitive(const BinaryQF& f)
{
    return content(f) == 1;
}

BinaryQF primitive_part(const BinaryQF& f)
{
    Int g = content(f);
    if (g.is_zero())
        return f;
    return {f.a / g, f.b / g, f.c / g};
}

BinaryQF scale(const BinaryQF& f, Int k)
{
    return {f.a * k, f.b * k, f.c * k};
}

BinaryQF apply(const BinaryQF& f, const Unimodular2& m)
{
    const Int al = m.a(), be = m.b(), ga = m.c(), de = m.d();
    return {f(al, ga),
            f.a * al * be * 2 + f.b * (al * de + be * ga) + f.c * ga * de * 2,
            f(be, de)};
}

BinaryQF inverse(const BinaryQF& f)
{
    return {f.a, -f.b, f.c};
}

bool is_reduced_definite(const BinaryQF& f)
{
    if (abs(f.b) > f.a || f.a > f.c)
        return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b.sign() < 0)
        return false;
    return true;
}

Reduction reduce_definite(const BinaryQF& input)
{
    if (discriminant(input).sign() >= 0 || input.a.sign() <= 0)
        throw InvalidInput("reduce_definite: form " + input.str() + " is not positive definite");
    BinaryQF f = input;
    Unimodular2 w;
    const Unimodular2 swap(Mat2{0, -1, 1, 0});
    while (true) {
        // translate b into (-a, a]
        Int two_a = f.a * 2;
        Int t = floor_div(f.a - f.b, two_a);
        if (!t.is_zero()) {
            Unimodular2 tr(Mat2{1, t, 0, 1});
            f = apply(f, tr);
            w = w * tr;
        }
        if (f.a > f.c) {
            f = apply(f, swap);
            w = w * swap;
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b.sign() < 0) {
        f = apply(f, swap);
        w = w * swap;
    }
    return {f, w};
}

bool is_reduced_indefinite(const BinaryQF& f)
{
    Int d = discriminant(f);
    if (d.sign() <= 0 || is_square(d))
        return false;
    return IndefiniteContext(d).is_reduced(f);
}

Reduction rho_step(const BinaryQF& f)
{
    Int d = discriminant(f);
    require_nonsquare(d, "rho_step");
    if (d.sign() < 0)
        throw InvalidInput("rho_step: definite form " + f.str());
    IndefiniteContext ctx(d);
    Int t;
    BinaryQF g = ctx.rho(f, &t);
    return {g, rho_matrix(t)};
}

Reduction reduce_indefinite(const BinaryQF& input)
{
    Int d = discriminant(input);
    if (d.sign() <= 0)
        throw InvalidInput("reduce_indefinite: form " + input.str() + " is not indefinite");
    require_nonsquare(d, "reduce_indefinite");
    IndefiniteContext ctx(d);
    BinaryQF f = input;
    Unimodular2 w;
    while (!ctx.is_reduced(f)) {
        Int t;
        f = ctx.rho(f, &t);
        w = w * rho_matrix(t);
    }
    return {f, w};
}

std::vector<BinaryQF> reduction_cycle(const BinaryQF& f)
{
    Int d = discriminant(f);
    if (d.sign() <= 0)
        throw InvalidInput("reduction_cycle: needs a positive discriminant, got " + d.str());
    require_nonsquare(d, "reduction_cycle");
    IndefiniteContext ctx(d);
    BinaryQF start = ctx.reduce(f);
    std::vector<BinaryQF> cycle{start};
    for (BinaryQF g = ctx.rho(start); g != start; g = ctx.rho(g))
        cycle.push_back(g);
    return cycle;
}

BinaryQF canonical_form(const BinaryQF& f)
{
    Int d = discriminant(f);
    require_nonsquare(d, "canonical_form");
    if (d.sign() < 0) {
        if (f.a.sign() < 0) {
            BinaryQF r = reduce_definite({-f.a, -f.b, -f.c}).form;
            return {-r.a, -r.b, -r.c};
        }
        return reduce_definite(f).form;
    }
    auto cycle = reduction_cycle(f);
    return *std::min_element(cycle.begin(), cycle.end());
}

bool same_sl2_class(const BinaryQF& f, const BinaryQF& g)
{
    if (discriminant(f) != discriminant(g))
        return false;
    return canonical_form(f) == canonical_form(g);
}

std::optional<Unimodular2> sl2_equivalent(const BinaryQF& f, const BinaryQF& g)
{
    Int d = discriminant(f);
    if (d != discriminant(g))
        throw InvalidInput("sl2_equivalent: discriminants differ (" + d.str() + " vs "
                           + discriminant(g).str() + ")");
    require_nonsquare(d, "sl2_equivalent");
    if (d.sign() < 0) {
        if (f.a.sign() != g.a.sign())
            return std::nullopt;
        int s = f.a.sign();
        Reduction rf = reduce_definite(scale(f, s));
        Reduction rg = reduce_definite(scale(g, s));
        if (rf.form != rg.form)
            return std::nullopt;
        return rf.witness * rg.witness.inverse();
    }
    IndefiniteContext ctx(d);
    Reduction rf = reduce_indefinite(f);
    Reduction rg = reduce_indefinite(g);
    BinaryQF cur = rf.form;
    Unimodular2 walk;
    do {
        if (cur == rg.form)
            return rf.witness * walk * rg.witness.inverse();
        Int t;
        cur = ctx.rho(cur, &t);
        walk = walk * rho_matrix(t);
    } while (cur != rf.form);
    return std::nullopt;
}

bool gl2_equivalent(const BinaryQF& f, const BinaryQF& g)
{
    if (content(f) != content(g))
        return false;
    BinaryQF pf = primitive_part(f), pg = primitive_part(g);
    if (discriminant(pf) != discriminant(pg))
        throw InvalidInput("gl2_equivalent: discriminants differ");
    return same_sl2_class(pf, pg) || same_sl2_class(pf, inverse(pg));
}

void check_class_group_discriminant(Int disc)
{
    Int r = floor_mod(disc, 4);
    if (r != 0 && r != 1)
        throw InvalidInput("discriminant " + disc.str() + " is not 0 or 1 mod 4");
    require_nonsquare(disc, "class group");
}

BinaryQF identity_form(Int disc)
{
    check_class_group_discriminant(disc);
    if (floor_mod(disc, 4).is_zero())
        return {1, 0, -disc / 4};
    return {1, 1, (1 - disc) / 4};
}

BinaryQF compose(const BinaryQF& f, const BinaryQF& g)
{
    Int disc = discriminant(f);
    if (disc != discriminant(g))
        throw InvalidInput("compose: discriminants differ (" + disc.str() + " vs "
                           + discriminant(g).str() + ")");
    check_class_group_discriminant(disc);
    if (!is_primitive(f) || !is_primitive(g))
        throw InvalidInput("compose: imprimitive input");
    if (disc.sign() < 0 && (f.a.sign() < 0 || g.a.sign() < 0))
        throw InvalidInput("compose: negative definite input");

    BinaryQF f1 = with_positive_a(f), f2 = with_positive_a(g);
    if (f1.a > f2.a)
        std::swap(f1, f2);
    const Int s = exact_div(f1.b + f2.b, 2, "compose");
    const Int n = f2.b - s;

    Int y1, d;
    if (divides(f1.a, f2.a)) {
        y1 = 0;
        d = f1.a;
    } else {
        ExtGcd e = ext_gcd(f2.a, f1.a);
        y1 = e.u;
        d = e.g;
    }
    Int x2, y2, d1;
    if (divides(d, s)) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        ExtGcd e = ext_gcd(s, d);
        x2 = e.u;
        y2 = -e.v;
        d1 = e.g;
    }
    const Int v1 = f1.a / d1;
    const Int v2 = f2.a / d1;
    const Int r = floor_mod(y1 * y2 * n - x2 * f2.c, v1);
    const Int b3 = f2.b + v2 * r * 2;
    const Int a3 = v1 * v2;
    const Int c3 = exact_div(b3 * b3 - disc, a3 * 4, "compose");
    return canonical_form({a3, b3, c3});
}

BinaryQF power(const BinaryQF& f, long long n)
{
    Int disc = discriminant(f);
    BinaryQF base = n < 0 ? inverse(f) : f;
    unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                                 : static_cast<unsigned long long>(n);
    BinaryQF result = canonical_form(identity_form(disc));
    base = canonical_form(base);
    while (e) {
        if (e & 1ULL)
            result = compose(result, base);
        e >>= 1ULL;
        if (e)
            base = compose(base, base);
    }
    return result;
}

}  // namespace cubictrace
