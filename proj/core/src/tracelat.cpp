#include "cubictrace/tracelat.hpp"

#include <algorithm>

namespace cubictrace {

namespace {

void require_field_form(const BinaryCubicForm& f, const char* what)
{
    if (f.a.is_zero())
        throw InvalidInput(std::string(what) + ": leading coefficient of " + f.str() + " is zero");
    if (!is_irreducible(f))
        throw InvalidInput(std::string(what) + ": form " + f.str() + " is reducible");
}

void require_fundamental(Int d, const char* what)
{
    if (!is_fundamental_discriminant(d))
        throw InvalidInput(std::string(what) + ": " + d.str() + " is not a fundamental discriminant");
}

struct KernelBasis {
    Int g;                // gcd of the trace vector
    Mat3 u;               // unimodular, t U = (g, 0, 0)
};

KernelBasis trace_kernel(const std::array<Int, 3>& t)
{
    std::array<Int, 3> v = t;
    Mat3 u = mat3_identity();
    auto swap_cols = [&](int i, int j) {
        std::swap(v[i], v[j]);
        for (int r = 0; r < 3; ++r)
            std::swap(u[r][i], u[r][j]);
    };
    while (true) {
        int best = -1;
        for (int i = 0; i < 3; ++i)
            if (!v[i].is_zero() && (best < 0 || abs(v[i]) < abs(v[best])))
                best = i;
        if (best < 0)
            throw InvalidInput("trace vector is zero");
        swap_cols(0, best);
        bool done = true;
        for (int j = 1; j < 3; ++j) {
            Int q = floor_div(v[j], v[0]);
            v[j] -= q * v[0];
            for (int r = 0; r < 3; ++r)
                u[r][j] -= q * u[r][0];
            if (!v[j].is_zero())
                done = false;
        }
        if (done)
            break;
    }
    if (v[0].sign() < 0) {
        v[0] = -v[0];
        for (int r = 0; r < 3; ++r)
            u[r][0] = -u[r][0];
    }
    return {v[0], u};
}

Int pairing(const Mat3& g, const std::array<Int, 3>& x, const std::array<Int, 3>& y)
{
    Int s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += x[i] * g[i][j] * y[j];
    return s;
}

std::array<Int, 3> column(const Mat3& m, int j)
{
    return {m[0][j], m[1][j], m[2][j]};
}

bool positive_definite(const Mat3& g)
{
    Int m1 = g[0][0];
    Int m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    return m1.sign() > 0 && m2.sign() > 0 && mat3_det(g).sign() > 0;
}

Mat3 negated(const Mat3& g)
{
    Mat3 r = g;
    for (auto& row : r)
        for (auto& x : row)
            x = -x;
    return r;
}

}  // namespace

Rational::Rational(Int n, Int d)
{
    if (d.is_zero())
        throw InvalidInput("rational with zero denominator");
    if (d.sign() < 0) {
        n = -n;
        d = -d;
    }
    Int g = gcd(n, d);
    if (g.is_zero())
        g = 1;
    n_ = n / g;
    d_ = d / g;
}

std::string Rational::str() const
{
    return d_ == 1 ? n_.str() : n_.str() + "/" + d_.str();
}

Rational Rational::parse(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return {Int::parse(s), 1};
    return {Int::parse(std::string_view(s).substr(0, slash)),
            Int::parse(std::string_view(s).substr(slash + 1))};
}

Rational operator+(const Rational& x, const Rational& y)
{
    return {x.n_ * y.d_ + y.n_ * x.d_, x.d_ * y.d_};
}

Rational operator-(const Rational& x, const Rational& y)
{
    return {x.n_ * y.d_ - y.n_ * x.d_, x.d_ * y.d_};
}

Rational operator*(const Rational& x, const Rational& y)
{
    return {x.n_ * y.n_, x.d_ * y.d_};
}

Rational operator/(const Rational& x, const Rational& y)
{
    if (y.n_.is_zero())
        throw std::domain_error("rational division by zero");
    return {x.n_ * y.d_, x.d_ * y.n_};
}

BasisTraces basis_traces(const BinaryCubicForm& f)
{
    require_field_form(f, "basis_traces");
    return {f.b, -f.c, f.b * f.b - f.a * f.c * 2, f.c * f.c - f.b * f.d * 2, -f.a * f.d * 3};
}

TraceLattice full_gram(const BinaryCubicForm& f)
{
    BasisTraces t = basis_traces(f);
    TraceLattice l;
    l.form = f;
    l.gram = Mat3{{{3, t.tr_alpha, t.tr_beta},
                   {t.tr_alpha, t.tr_alpha2, t.tr_alphabeta},
                   {t.tr_beta, t.tr_alphabeta, t.tr_beta2}}};
    l.trace_vector = {3, t.tr_alpha, t.tr_beta};
    return l;
}

std::string to_string(TraceCase c)
{
    switch (c) {
    case TraceCase::B0: return "B0";
    case TraceCase::C0: return "C0";
    case TraceCase::BmC: return "BmC";
    case TraceCase::BpC: return "BpC";
    case TraceCase::Kernel: return "kernel";
    }
    return "?";
}

TraceZeroForm trace_zero_sublattice(const TraceLattice& l)
{
    KernelBasis k = trace_kernel(l.trace_vector);
    auto k1 = column(k.u, 1), k2 = column(k.u, 2);
    Int q11 = pairing(l.gram, k1, k1), q12 = pairing(l.gram, k1, k2), q22 = pairing(l.gram, k2, k2);
    if (!divides(2, q11) || !divides(2, q22))
        throw std::logic_error("trace_zero_sublattice: tr(x^2) is odd on a trace-zero vector of "
                               + l.form.str());
    return {{q11 / 2, q12, q22 / 2}, TraceCase::Kernel};
}

std::vector<TraceZeroForm> applicable_trace_forms(const BinaryCubicForm& f)
{
    require_fundamental(disc_cubic(f), "explicit_trace_form");
    const BinaryQF h = hessian(f);
    const Int P = h.a, Q = h.b, R = h.c;
    const char* what = "explicit_trace_form";
    std::vector<TraceZeroForm> out;
    if (divides(3, f.b))
        out.push_back({{exact_div(P, 3, what), Q, R * 3}, TraceCase::B0});
    if (divides(3, f.c))
        out.push_back({{P * 3, Q, exact_div(R, 3, what)}, TraceCase::C0});
    if (divides(3, f.b + f.c))
        out.push_back({{P * 3, P * 2 - Q, exact_div(P + R - Q, 3, what)}, TraceCase::BmC});
    if (divides(3, f.b - f.c))
        out.push_back({{P * 3, P * 2 + Q, exact_div(P + Q + R, 3, what)}, TraceCase::BpC});
    return out;
}

TraceZeroForm explicit_trace_form(const BinaryCubicForm& f)
{
    auto all = applicable_trace_forms(f);
    if (all.empty())
        throw std::logic_error("explicit_trace_form: residues of b and c not covered");
    return all.front();
}

BinaryQF C_form(Int d)
{
    require_fundamental(d, "C_form");
    if (floor_mod(d, 4).is_zero())
        return {3, 0, d / 4};
    return {3, 3, (d + 3) / 4};
}

GroupRelation verify_grouprel(const BinaryCubicForm& f)
{
    const Int d = disc_cubic(f);
    require_fundamental(d, "verify_grouprel");
    if (divides(3, d))
        throw InvalidInput("verify_grouprel: 3 divides the discriminant " + d.str());
    const BinaryQF q = explicit_trace_form(f).binary;
    const BinaryQF h = hessian(f);
    GroupRelation r;
    r.product = compose(q, C_form(d));
    if (same_sl2_class(r.product, h))
        r.sign = 1;
    else if (same_sl2_class(r.product, inverse(h)))
        r.sign = -1;
    r.holds = r.sign != 0;
    return r;
}

BinaryCubicForm f_K_form(const BinaryCubicForm& f)
{
    const Int d = disc_cubic(f);
    require_fundamental(d, "f_K_form");
    if (!divides(3, d))
        throw InvalidInput("f_K_form: 3 does not divide the discriminant " + d.str());
    Mat2 m;
    if (divides(3, f.b))
        m = {1, 0, 0, 3};
    else if (divides(3, f.c))
        m = {3, 0, 0, 1};
    else if (divides(3, f.b + f.c))
        m = {1, 0, -1, -3};
    else
        m = {1, 0, 1, 3};
    BinaryCubicForm g = substitute(f, m);
    const char* what = "f_K_form";
    return {exact_div(g.a, 3, what), exact_div(g.b, 3, what), exact_div(g.c, 3, what),
            exact_div(g.d, 3, what)};
}

TernaryForm pure_cubic_gram(Int m)
{
    if (m.sign() <= 0)
        throw InvalidInput("pure_cubic_gram: m must be positive");
    if (is_cube(m))
        throw InvalidInput("pure_cubic_gram: " + m.str() + " is a perfect cube");
    Int r = floor_mod(m, 9);
    if (r == 1 || r == 8)
        throw InvalidInput("pure_cubic_gram: " + m.str() + " is +-1 mod 9");
    for (const auto& pp : factor(m))
        if (pp.exponent >= 3)
            throw InvalidInput("pure_cubic_gram: " + m.str() + " is not cube-free");
    SquarefreePart s = squarefree_part(m);
    Int x = s.free * s.square * 3;
    return {Mat3{{{3, 0, 0}, {0, 0, x}, {0, x, 0}}}};
}

std::array<ThetaPoly, 3> standard_basis(const BinaryCubicForm& f)
{
    require_field_form(f, "standard_basis");
    // d / theta = -(a theta^2 + b theta + c)
    return {ThetaPoly{Rational(1), Rational(0), Rational(0)},
            ThetaPoly{Rational(0), Rational(-f.a), Rational(0)},
            ThetaPoly{Rational(-f.c), Rational(-f.b), Rational(-f.a)}};
}

TernaryForm gram_from_basis(const BinaryCubicForm& f, const std::array<ThetaPoly, 3>& basis)
{
    if (f.a.is_zero())
        throw InvalidInput("gram_from_basis: leading coefficient is zero");
    if (disc_cubic(f).is_zero())
        throw InvalidInput("gram_from_basis: zero discriminant");
    // power sums of the roots of x^3 + (b/a) x^2 + (c/a) x + d/a
    const Rational e1(-f.b, f.a), e2(f.c, f.a), e3(-f.d, f.a);
    std::array<Rational, 5> p{Rational(3), e1, Rational(0), Rational(0), Rational(0)};
    p[2] = e1 * p[1] - e2 * Rational(2);
    for (int k = 3; k < 5; ++k)
        p[k] = e1 * p[k - 1] - e2 * p[k - 2] + e3 * p[k - 3];
    TernaryForm t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational s(0);
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v)
                    s = s + basis[i][u] * basis[j][v] * p[u + v];
            if (!s.is_integer())
                throw InvalidInput("gram_from_basis: trace " + s.str() + " is not integral; the basis of "
                                   + f.str() + " does not span an order");
            t.gram[i][j] = s.num();
        }
    return t;
}

std::optional<Mat3> ternary_equivalent_bounded(const TernaryForm& t1, const TernaryForm& t2, long long bound)
{
    if (!mat3_symmetric(t1.gram) || !mat3_symmetric(t2.gram))
        throw InvalidInput("ternary_equivalent_bounded: non-symmetric Gram matrix");
    if (mat3_det(t1.gram) != mat3_det(t2.gram))
        return std::nullopt;
    if (t1.gram == t2.gram)
        return mat3_identity();
    Mat3 g1 = t1.gram, g2 = t2.gram;
    if (!positive_definite(g1)) {
        g1 = negated(g1);
        g2 = negated(g2);
    }
    if (!positive_definite(g1) || !positive_definite(g2))
        throw InvalidInput("ternary_equivalent_bounded: only definite forms are supported");

    using Vec = std::array<Int, 3>;
    std::array<std::vector<Vec>, 3> cand;
    for (long long x = -bound; x <= bound; ++x)
        for (long long y = -bound; y <= bound; ++y)
            for (long long z = -bound; z <= bound; ++z) {
                Vec v{x, y, z};
                Int n = pairing(g1, v, v);
                for (int i = 0; i < 3; ++i)
                    if (n == g2[i][i])
                        cand[i].push_back(v);
            }
    for (const auto& v0 : cand[0])
        for (const auto& v1 : cand[1]) {
            if (pairing(g1, v0, v1) != g2[0][1])
                continue;
            for (const auto& v2 : cand[2]) {
                if (pairing(g1, v0, v2) != g2[0][2] || pairing(g1, v1, v2) != g2[1][2])
                    continue;
                Mat3 m{{{v0[0], v1[0], v2[0]}, {v0[1], v1[1], v2[1]}, {v0[2], v1[2], v2[2]}}};
                if (abs(mat3_det(m)) == 1)
                    return m;
            }
        }
    return std::nullopt;
}

TraceImageIndex trace_image_index(const TraceLattice& l)
{
    KernelBasis k = trace_kernel(l.trace_vector);
    Mat3 m = k.u;
    for (int r = 0; r < 3; ++r)
        m[r][0] = r == 0 ? 1 : 0;
    TraceImageIndex out;
    out.image_generator = k.g;
    out.index_OK_over_GK = abs(mat3_det(m));
    out.lemma_holds = divides(k.g, 3) && out.index_OK_over_GK == Int(3) / k.g;
    return out;
}

}  // namespace cubictrace
