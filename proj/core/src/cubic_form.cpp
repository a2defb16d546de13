#include "cubictrace/cubic_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "parallel.hpp"
#include "parse_util.hpp"

namespace cubictrace {

namespace {

using Poly3 = std::array<Int, 4>;  // coefficients of x^3, x^2 y, x y^2, y^3

// (p0 x + p1 y)^i (q0 x + q1 y)^(3-i)
Poly3 product_of_linears(Int p0, Int p1, Int q0, Int q1, int i)
{
    std::array<Int, 4> r{1, 0, 0, 0};
    int deg = 0;
    auto mul = [&](Int l0, Int l1) {
        std::array<Int, 4> s{0, 0, 0, 0};
        for (int k = 0; k <= deg; ++k) {
            if (r[k].is_zero())
                continue;
            s[k] += r[k] * l0;
            s[k + 1] += r[k] * l1;
        }
        r = s;
        ++deg;
    };
    for (int k = 0; k < i; ++k)
        mul(p0, p1);
    for (int k = i; k < 3; ++k)
        mul(q0, q1);
    return r;
}


void require_nonzero_disc(const BinaryCubicForm& f, const char* what)
{
    if (disc_cubic(f).is_zero())
        throw InvalidInput(std::string(what) + ": form " + f.str() + " has zero discriminant");
}

struct UpperRoot {
    long double u;  // real part
    long double n;  // squared modulus
};

// The root of F(x, 1) in the upper half plane, for disc(F) < 0.
UpperRoot upper_root(const BinaryCubicForm& f)
{
    if (f.a.is_zero()) {
        long double b = f.b.to_ldouble(), c = f.c.to_ldouble(), d = f.d.to_ldouble();
        return {-c / (2 * b), d / b};
    }
    const long double a = f.a.to_ldouble();
    const long double B = f.b.to_ldouble() / a, C = f.c.to_ldouble() / a, E = f.d.to_ldouble() / a;
    auto p = [&](long double x) { return ((x + B) * x + C) * x + E; };
    long double bound = 1 + std::max({std::fabs(B), std::fabs(C), std::fabs(E)});
    long double lo = -bound, hi = bound;
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        long double mid = (lo + hi) / 2;
        if (mid == lo || mid == hi)
            break;
        if (p(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    const long double theta = (lo + hi) / 2;
    const long double s = B + theta;
    long double n = std::fabs(theta) > 1 ? -E / theta : C + s * theta;
    return {-s / 2, n};
}

constexpr long double kRootTolerance = 1e-12L;

bool root_reduced(const UpperRoot& r, long double tol)
{
    return std::fabs(r.u) <= 0.5L + tol && r.n >= 1 - tol;
}

CubicReduction reduce_negative(const BinaryCubicForm& input)
{
    BinaryCubicForm f = input;
    Unimodular2 w;
    const Unimodular2 inversion(Mat2{0, 1, -1, 0});
    for (int guard = 0;; ++guard) {
        if (guard > 10000)
            throw std::runtime_error("reduce_cubic: no convergence for " + input.str());
        UpperRoot r = upper_root(f);
        if (std::fabs(r.u) > 0.5L + kRootTolerance) {
            Int n = Int(static_cast<long long>(std::llround(r.u)));
            Unimodular2 t(Mat2{1, n, 0, 1});
            f = act_cubic(f, t);
            w = w * t;
            continue;
        }
        if (r.n < 1 - kRootTolerance) {
            f = act_cubic(f, inversion);
            w = w * inversion;
            continue;
        }
        break;
    }
    // reduced forms of one orbit differ by small substitutions
    std::optional<CubicReduction> best;
    for (const auto& s : small_unimodular()) {
        BinaryCubicForm g = act_cubic(f, s);
        Unimodular2 m = w * s;
        if (g.a.sign() < 0) {
            g = negate(g);
            m = m * Unimodular2::minus_identity();
        }
        if (!root_reduced(upper_root(g), 1e-9L))
            continue;
        if (!best || g < best->form)
            best = CubicReduction{g, m};
    }
    if (!best)
        throw std::logic_error("reduce_cubic: no reduced representative for " + input.str());
    return *best;
}

CubicReduction reduce_positive(const BinaryCubicForm& input)
{
    BinaryQF h = hessian(input);
    if (h.a.sign() <= 0)
        throw std::logic_error("reduce_cubic: Hessian of " + input.str() + " is not positive definite");
    Reduction rh = reduce_definite(h);
    BinaryCubicForm f = act_cubic(input, rh.witness);
    Unimodular2 w = rh.witness;
    BinaryQF hr = rh.form;
    if (hr.b.sign() < 0) {
        f = act_cubic(f, Unimodular2::reflection());
        w = w * Unimodular2::reflection();
        hr = apply(hr, Unimodular2::reflection());
    }
    std::optional<CubicReduction> best;
    for (const auto& s : small_unimodular()) {
        if (apply(hr, s) != hr)
            continue;
        BinaryCubicForm g = act_cubic(f, s);
        const Int lead = !g.a.is_zero() ? g.a : !g.b.is_zero() ? g.b : !g.c.is_zero() ? g.c : g.d;
        if (lead.sign() <= 0)
            continue;
        if (!best || g < best->form)
            best = CubicReduction{g, w * s};
    }
    if (!best)
        throw std::logic_error("reduce_cubic: no positive representative for " + input.str());
    return *best;
}

// A generator of the proper automorphs of an indefinite form with
// non-square discriminant.
Unimodular2 automorph_generator(const BinaryQF& h)
{
    Reduction r = reduce_indefinite(h);
    Unimodular2 walk;
    BinaryQF cur = r.form;
    do {
        Reduction step = rho_step(cur);
        cur = step.form;
        walk = walk * step.witness;
    } while (cur != r.form);
    return r.witness * walk * r.witness.inverse();
}

CubicEquivalence equivalence_impl(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                  const EquivalenceOptions& opts, bool proper_only)
{
    const Int disc = disc_cubic(f);
    if (disc != disc_cubic(g))
        throw InvalidInput("cubic_equivalent: discriminants differ (" + disc.str() + " vs "
                           + disc_cubic(g).str() + ")");
    if (disc.is_zero())
        throw InvalidInput("cubic_equivalent: zero discriminant");

    auto accept = [&](const Unimodular2& m, const char* method) -> std::optional<CubicEquivalence> {
        if (proper_only && m.det() != 1)
            return std::nullopt;
        if (act_cubic(f, m) != g)
            throw std::logic_error("cubic_equivalent: witness check failed");
        CubicEquivalence out;
        out.status = EquivalenceStatus::Equivalent;
        out.witness = m;
        out.method = method;
        return out;
    };

    CubicReduction rf = reduce_cubic(f), rg = reduce_cubic(g);
    const Unimodular2 back = rg.witness.inverse();
    for (const auto& s : small_unimodular()) {
        if (act_cubic(rf.form, s) != rg.form)
            continue;
        if (auto r = accept(rf.witness * s * back, "reduction"))
            return *r;
    }
    CubicEquivalence out;
    if (disc.sign() > 0) {
        out.status = EquivalenceStatus::Inequivalent;
        out.method = "reduction";
        return out;
    }

    if (content(f) != content(g)) {
        out.status = EquivalenceStatus::Inequivalent;
        out.method = "content";
        return out;
    }
    for (long long p : primes_up_to(opts.certificate_prime_max)) {
        if (divides(Int(p), content(f)))
            continue;
        if (mod_p_shape(f, p) != mod_p_shape(g, p)) {
            out.status = EquivalenceStatus::Inequivalent;
            out.method = "splitting";
            out.certificate_prime = p;
            return out;
        }
    }

    // Hessian transporter: every witness has the form t w A^k (+-1), with t
    // the identity or the reflection and w in SL2 taking hessian(f)|t to
    // hessian(g).
    const BinaryQF hf = hessian(f), hg = hessian(g);
    if (is_square(discriminant(hg))) {
        out.method = "square Hessian discriminant";
        return out;
    }
    Unimodular2 gen;
    try {
        gen = automorph_generator(hg);
    } catch (const OverflowError&) {
        out.method = "automorph overflow";
        return out;
    }
    std::vector<Unimodular2> starts;
    for (const auto& t : {Unimodular2::identity(), Unimodular2::reflection()}) {
        if (auto w = sl2_equivalent(apply(hf, t), hg))
            starts.push_back(t * *w);
    }
    bool exhausted_bound = false;
    for (const auto& start : starts) {
        for (const auto& step : {gen, gen.inverse()}) {
            Unimodular2 m = start;
            long long k = 0;
            long long bound = opts.automorph_bound_start;
            try {
                while (true) {
                    for (const auto& eps : {Unimodular2::identity(), Unimodular2::minus_identity()}) {
                        Unimodular2 cand = m * eps;
                        if (act_cubic(f, cand) == g)
                            if (auto r = accept(cand, "hessian transporter"))
                                return *r;
                    }
                    if (++k > bound) {
                        if (bound >= opts.automorph_bound_max) {
                            exhausted_bound = true;
                            break;
                        }
                        bound = std::min(bound * 2, opts.automorph_bound_max);
                    }
                    m = m * step;
                }
            } catch (const OverflowError&) {
                // coefficients left the exact range; this direction is done
            }
        }
    }
    out.method = exhausted_bound ? "automorph bound exhausted" : "transporter overflow";
    return out;
}

bool in_range(Int x, Int lo, Int hi)
{
    return lo <= x && x <= hi;
}

class FundamentalCache {
public:
    bool operator()(Int d)
    {
        auto it = cache_.find(d);
        if (it != cache_.end())
            return it->second;
        bool r = is_fundamental_discriminant(d);
        cache_.emplace(d, r);
        return r;
    }

private:
    std::unordered_map<Int, bool> cache_;
};

// Positive discriminants: walk the reduced Hessians (P, Q, R) and recover the
// forms through 4 P^3 = G(1,0)^2 + 27 D a^2 with G(1,0) = 2bP - 3aQ.
std::vector<EnumeratedField> enumerate_positive(Int lo, Int hi, unsigned threads)
{
    if (hi < 1)
        return {};
    lo = std::max(lo, Int(1));
    const Int pmax = isqrt(hi);
    const std::size_t parts = static_cast<std::size_t>(pmax.to_ll());
    std::vector<std::vector<EnumeratedField>> found(parts);
    detail::run_partitioned(threads, parts, [&](std::size_t idx) {
        const Int P = Int(static_cast<long long>(idx) + 1);
        FundamentalCache fundamental;
        std::vector<EnumeratedField>& out = found[idx];
        for (Int Q = 0; Q <= P; Q += 1) {
            Int rlo = std::max(P, ceil_div(lo * 3 + Q * Q, P * 4));
            Int rhi = floor_div(hi * 3 + Q * Q, P * 4);
            for (Int R = rlo; R <= rhi; R += 1) {
                Int num = P * R * 4 - Q * Q;
                if (!divides(3, num))
                    continue;
                Int D = num / 3;
                if (D * 27 > P * P * P * 4 || !fundamental(D))
                    continue;
                std::set<BinaryCubicForm> seen;
                for (Int a = 1; D * 27 * a * a <= P * P * P * 4; a += 1) {
                    Int g2 = P * P * P * 4 - D * 27 * a * a;
                    if (!is_square(g2))
                        continue;
                    Int g = isqrt(g2);
                    for (Int g1 : {g, -g}) {
                        if (g.is_zero() && g1 != g)
                            continue;
                        Int bn = g1 + a * Q * 3;
                        if (!divides(P * 2, bn))
                            continue;
                        Int b = bn / (P * 2);
                        Int cn = b * b - P;
                        if (!divides(a * 3, cn))
                            continue;
                        Int c = cn / (a * 3);
                        Int dn = b * c - Q;
                        if (!divides(a * 9, dn))
                            continue;
                        Int d = dn / (a * 9);
                        if (c * c - b * d * 3 != R)
                            continue;
                        BinaryCubicForm f{a, b, c, d};
                        if (disc_cubic(f) != D)
                            throw std::logic_error("enumerate: discriminant mismatch for " + f.str());
                        if (!is_primitive(f) || !is_irreducible(f))
                            continue;
                        BinaryCubicForm red = reduce_cubic(f).form;
                        if (seen.insert(red).second)
                            out.push_back({D, f, red});
                    }
                }
            }
        }
    });
    std::vector<EnumeratedField> all;
    for (auto& v : found)
        all.insert(all.end(), v.begin(), v.end());
    return all;
}

// Negative discriminants: forms whose complex root lies in the fundamental
// domain, with a > 0 and b >= 0.  With root u + iv, real root t and
// s = |t - (u + iv)|^2 one has |D| = 4 a^4 v^2 s^2, which bounds everything.
std::vector<EnumeratedField> enumerate_negative(Int lo, Int hi, unsigned threads)
{
    if (lo > -1)
        return {};
    hi = std::min(hi, Int(-1));
    const long double amax_d = std::sqrt(std::sqrt(16.0L * (-lo).to_ldouble() / 27.0L));
    const long long amax = static_cast<long long>(std::floor(amax_d + 1e-9L));
    const long double root_abs = std::sqrt((-lo).to_ldouble());
    std::vector<std::vector<BinaryCubicForm>> found(static_cast<std::size_t>(std::max(amax, 0LL)));
    detail::run_partitioned(threads, found.size(), [&](std::size_t idx) {
        const long long a = static_cast<long long>(idx) + 1;
        const long double a2 = static_cast<long double>(a) * a;
        const long double s = root_abs / (std::sqrt(3.0L) * a2);
        const long double theta = 0.5L + std::sqrt(s);
        const long double nmax = 0.25L + std::pow(root_abs / (2 * a2), 2.0L / 3.0L);
        const long long bmax = static_cast<long long>(a * (theta + 1)) + 1;
        const long long cmax = static_cast<long long>(a * (theta + nmax)) + 1;
        const long long dmax = static_cast<long long>(a * theta * nmax) + 1;
        FundamentalCache fundamental;
        for (long long b = 0; b <= bmax; ++b)
            for (long long c = -cmax; c <= cmax; ++c)
                for (long long d = -dmax; d <= dmax; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    Int D = disc_cubic(f);
                    if (!in_range(D, lo, hi) || !fundamental(D))
                        continue;
                    if (!is_primitive(f) || !is_irreducible(f))
                        continue;
                    if (!root_reduced(upper_root(f), 1e-9L))
                        continue;
                    found[idx].push_back(f);
                }
    });
    std::map<Int, std::vector<BinaryCubicForm>> by_disc;
    for (auto& v : found)
        for (auto& f : v)
            by_disc[disc_cubic(f)].push_back(f);

    std::vector<EnumeratedField> all;
    for (auto& [D, forms] : by_disc) {
        std::sort(forms.begin(), forms.end());
        std::vector<std::pair<BinaryCubicForm, BinaryCubicForm>> reps;  // (form, reduced)
        for (const auto& f : forms) {
            BinaryCubicForm red = reduce_cubic(f).form;
            bool dup = false;
            for (const auto& [rep, rep_red] : reps) {
                for (const auto& s : small_unimodular())
                    if (act_cubic(red, s) == rep_red) {
                        dup = true;
                        break;
                    }
                if (dup)
                    break;
            }
            for (std::size_t i = 0; !dup && i < reps.size(); ++i) {
                CubicEquivalence e = cubic_equivalent(f, reps[i].first);
                if (e.status == EquivalenceStatus::Inconclusive)
                    throw std::runtime_error("enumerate: cannot separate " + f.str() + " and "
                                             + reps[i].first.str() + " (" + e.method + ")");
                dup = e.status == EquivalenceStatus::Equivalent;
            }
            if (!dup)
                reps.emplace_back(f, red);
        }
        for (const auto& [rep, red] : reps)
            all.push_back({D, rep, red});
    }
    return all;
}

void sort_fields(std::vector<EnumeratedField>& v)
{
    std::sort(v.begin(), v.end(), [](const EnumeratedField& x, const EnumeratedField& y) {
        if (x.disc != y.disc)
            return x.disc < y.disc;
        return x.form < y.form;
    });
}

}  // namespace

std::string BinaryCubicForm::str() const
{
    return a.str() + "," + b.str() + "," + c.str() + "," + d.str();
}

BinaryCubicForm BinaryCubicForm::parse(const std::string& text)
{
    auto v = detail::parse_int_list(text, 4, "cubic form");
    return {v[0], v[1], v[2], v[3]};
}

std::ostream& operator<<(std::ostream& os, const BinaryCubicForm& f)
{
    return os << "(" << f.str() << ")";
}

Int disc_cubic(const BinaryCubicForm& f)
{
    const Int a = f.a, b = f.b, c = f.c, d = f.d;
    return b * b * c * c - a * a * d * d * 27 + a * b * c * d * 18 - a * c * c * c * 4
         - b * b * b * d * 4;
}

BinaryQF hessian(const BinaryCubicForm& f)
{
    return {f.b * f.b - f.a * f.c * 3, f.b * f.c - f.a * f.d * 9, f.c * f.c - f.b * f.d * 3};
}

BinaryCubicForm act_cubic(const BinaryCubicForm& f, const Unimodular2& m)
{
    return substitute(f, m.mat());
}

BinaryCubicForm substitute(const BinaryCubicForm& f, const Mat2& m)
{
    const std::array<Int, 4> coef{f.a, f.b, f.c, f.d};
    Poly3 r{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        if (coef[i].is_zero())
            continue;
        // x^(3-i) y^i  ->  (alpha x + beta y)^(3-i) (gamma x + delta y)^i
        Poly3 t = product_of_linears(m.a, m.b, m.c, m.d, 3 - i);
        for (int k = 0; k < 4; ++k)
            r[k] += coef[i] * t[k];
    }
    return {r[0], r[1], r[2], r[3]};
}

BinaryCubicForm negate(const BinaryCubicForm& f)
{
    return {-f.a, -f.b, -f.c, -f.d};
}

Int content(const BinaryCubicForm& f)
{
    return gcd(gcd(f.a, f.b), gcd(f.c, f.d));
}

bool is_primitive(const BinaryCubicForm& f)
{
    return content(f) == 1;
}

bool is_irreducible(const BinaryCubicForm& f)
{
    if (f.a.is_zero() || f.d.is_zero())
        return false;
    // rational roots p/q of F(x, 1) have q | a and p | d
    auto divisors = [](Int n) {
        std::vector<Int> out{1};
        for (const auto& pp : factor(n)) {
            std::size_t k = out.size();
            Int q = 1;
            for (unsigned e = 0; e < pp.exponent; ++e) {
                q *= pp.prime;
                for (std::size_t i = 0; i < k; ++i)
                    out.push_back(out[i] * q);
            }
        }
        return out;
    };
    const auto dp = divisors(f.d), dq = divisors(f.a);
    for (Int p : dp)
        for (Int q : dq) {
            if (gcd(p, q) != 1)
                continue;
            for (Int s : {p, -p})
                if (f(s, q).is_zero())
                    return false;
        }
    return true;
}

BinaryCubicForm normalize_leading(const BinaryCubicForm& f)
{
    if (f.a.is_zero() && !f.d.is_zero())
        return {f.d, f.c, f.b, f.a};
    return f;
}

std::string to_string(ModPShape s)
{
    switch (s) {
    case ModPShape::Split: return "111";
    case ModPShape::LinearQuadratic: return "21";
    case ModPShape::Inert: return "3";
    case ModPShape::DoubleRoot: return "1^2 1";
    case ModPShape::TripleRoot: return "1^3";
    }
    return "?";
}

ModPShape parse_mod_p_shape(const std::string& s)
{
    for (auto v : {ModPShape::Split, ModPShape::LinearQuadratic, ModPShape::Inert,
                   ModPShape::DoubleRoot, ModPShape::TripleRoot})
        if (to_string(v) == s)
            return v;
    throw InvalidInput("unknown splitting type \"" + s + "\"");
}

ModPShape mod_p_shape(const BinaryCubicForm& f, long long p)
{
    if (p < 2 || !is_prime(Int(p)))
        throw InvalidInput("mod_p_shape: " + std::to_string(p) + " is not prime");
    if (p > 100000000LL)
        throw InvalidInput("mod_p_shape: prime " + std::to_string(p) + " is too large");
    std::vector<long long> poly;  // high degree first
    for (Int x : {f.a, f.b, f.c, f.d})
        poly.push_back(floor_mod(x, Int(p)).to_ll());
    std::vector<int> mults;
    int at_infinity = 0;
    while (!poly.empty() && poly.front() == 0) {
        poly.erase(poly.begin());
        ++at_infinity;
    }
    if (poly.empty())
        throw InvalidInput("mod_p_shape: " + std::to_string(p) + " divides every coefficient of "
                           + f.str());
    if (at_infinity > 0)
        mults.push_back(at_infinity);
    auto mulmod = [p](long long x, long long y) {
        return static_cast<long long>(static_cast<__int128>(x) * y % p);
    };
    for (long long t = 0; t < p && poly.size() > 1; ++t) {
        int m = 0;
        while (poly.size() > 1) {
            // synthetic division by (x - t)
            std::vector<long long> q(poly.size() - 1);
            long long acc = 0;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
                acc = (mulmod(acc, t) + poly[i]) % p;
                q[i] = acc;
            }
            long long rem = (mulmod(acc, t) + poly.back()) % p;
            if (rem != 0)
                break;
            poly = std::move(q);
            ++m;
        }
        if (m > 0)
            mults.push_back(m);
    }
    std::sort(mults.rbegin(), mults.rend());
    const int remaining = static_cast<int>(poly.size()) - 1;
    if (mults == std::vector<int>{1, 1, 1})
        return ModPShape::Split;
    if (mults == std::vector<int>{2, 1})
        return ModPShape::DoubleRoot;
    if (mults == std::vector<int>{3})
        return ModPShape::TripleRoot;
    if (mults == std::vector<int>{1} && remaining == 2)
        return ModPShape::LinearQuadratic;
    if (mults.empty() && remaining == 3)
        return ModPShape::Inert;
    throw std::logic_error("mod_p_shape: impossible factorization pattern");
}

CubicReduction reduce_cubic(const BinaryCubicForm& f)
{
    require_nonzero_disc(f, "reduce_cubic");
    return disc_cubic(f).sign() > 0 ? reduce_positive(f) : reduce_negative(f);
}

std::string to_string(EquivalenceStatus s)
{
    switch (s) {
    case EquivalenceStatus::Equivalent: return "equivalent";
    case EquivalenceStatus::Inequivalent: return "inequivalent";
    case EquivalenceStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

CubicEquivalence cubic_equivalent(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                  const EquivalenceOptions& opts)
{
    return equivalence_impl(f, g, opts, false);
}

CubicEquivalence cubic_sl2_equivalent(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                      const EquivalenceOptions& opts)
{
    return equivalence_impl(f, g, opts, true);
}

std::vector<EnumeratedField> enumerate_fundamental(Int disc_min, Int disc_max,
                                                   const EnumerationOptions& opts)
{
    if (disc_min > disc_max)
        throw InvalidInput("enumerate: empty range [" + disc_min.str() + ", " + disc_max.str() + "]");
    auto out = enumerate_negative(disc_min, disc_max, opts.threads);
    auto pos = enumerate_positive(disc_min, disc_max, opts.threads);
    out.insert(out.end(), pos.begin(), pos.end());
    sort_fields(out);
    return out;
}

std::vector<EnumeratedField> enumerate_box(Int disc_min, Int disc_max, const CoefficientBox& box)
{
    FundamentalCache fundamental;
    std::map<Int, std::vector<std::pair<BinaryCubicForm, BinaryCubicForm>>> reps;
    for (long long a = -box.a; a <= box.a; ++a)
        for (long long b = -box.b; b <= box.b; ++b)
            for (long long c = -box.c; c <= box.c; ++c)
                for (long long d = -box.d; d <= box.d; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    Int D = disc_cubic(f);
                    if (!in_range(D, disc_min, disc_max) || !fundamental(D))
                        continue;
                    if (!is_primitive(f) || !is_irreducible(f))
                        continue;
                    auto& list = reps[D];
                    BinaryCubicForm red = reduce_cubic(f).form;
                    bool dup = false;
                    for (const auto& r : list) {
                        if (r.second == red) {
                            dup = true;
                            break;
                        }
                    }
                    for (std::size_t i = 0; !dup && i < list.size(); ++i) {
                        CubicEquivalence e = cubic_equivalent(f, list[i].first);
                        if (e.status == EquivalenceStatus::Inconclusive)
                            throw std::runtime_error("enumerate_box: cannot separate " + f.str()
                                                     + " and " + list[i].first.str());
                        dup = e.status == EquivalenceStatus::Equivalent;
                    }
                    if (!dup)
                        list.emplace_back(f, red);
                }
    std::vector<EnumeratedField> out;
    for (const auto& [D, list] : reps)
        for (const auto& [f, red] : list)
            out.push_back({D, f, red});
    sort_fields(out);
    return out;
}

}  // namespace cubictrace
