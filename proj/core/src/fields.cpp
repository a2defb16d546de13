#include "cubictrace/fields.hpp"

#include "cubictrace/class_group.hpp"

namespace cubictrace {

CubicFieldRecord make_record(const BinaryCubicForm& f)
{
    if (!is_irreducible(f))
        throw InvalidInput("make_record: " + f.str() + " is reducible");
    if (!is_primitive(f))
        throw InvalidInput("make_record: " + f.str() + " is not primitive");
    CubicFieldRecord r;
    r.form = f;
    r.disc = disc_cubic(f);
    if (!is_fundamental_discriminant(r.disc))
        throw InvalidInput("make_record: discriminant " + r.disc.str()
                           + " is not fundamental; use a supplied basis instead");
    r.totally_real = r.disc.sign() > 0;
    r.trace_zero = explicit_trace_form(f);
    r.kernel_form = trace_zero_sublattice(full_gram(f));
    r.methods_agree = gl2_equivalent(r.trace_zero.binary, r.kernel_form.binary);
    r.hessian = hessian(f);
    return r;
}

SplittingType splitting_type(const BinaryCubicForm& f, long long p)
{
    return mod_p_shape(f, p);
}

std::optional<long long> distinguishing_prime(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                              long long p_max)
{
    const Int df = disc_cubic(f), dg = disc_cubic(g);
    if (df.is_zero() || dg.is_zero())
        throw InvalidInput("distinguishing_prime: zero discriminant");
    const Int cf = content(f), cg = content(g);
    for (long long p : primes_up_to(p_max)) {
        if (divides(p, df) || divides(p, dg) || divides(p, cf) || divides(p, cg))
            continue;
        if (mod_p_shape(f, p) != mod_p_shape(g, p))
            return p;
    }
    return std::nullopt;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Undecided: return "undecided";
    }
    return "?";
}

IsomorphismResult is_isomorphic(const BinaryCubicForm& f, const BinaryCubicForm& g, long long p_max)
{
    if (!is_irreducible(f) || !is_irreducible(g))
        throw InvalidInput("is_isomorphic: both forms must be irreducible");
    if (disc_cubic(f) != disc_cubic(g))
        throw InvalidInput("is_isomorphic: discriminants differ");
    IsomorphismResult r;
    if (auto p = distinguishing_prime(f, g, p_max)) {
        r.verdict = Verdict::No;
        r.prime = p;
        r.method = "splitting at p = " + std::to_string(*p);
        return r;
    }
    EquivalenceOptions opts;
    opts.certificate_prime_max = p_max;
    CubicEquivalence e = cubic_equivalent(f, g, opts);
    r.method = e.method;
    switch (e.status) {
    case EquivalenceStatus::Equivalent:
        r.verdict = Verdict::Yes;
        r.witness = e.witness;
        break;
    case EquivalenceStatus::Inequivalent:
        r.verdict = Verdict::No;
        if (e.certificate_prime > 0)
            r.prime = e.certificate_prime;
        break;
    case EquivalenceStatus::Inconclusive:
        r.verdict = Verdict::Undecided;
        break;
    }
    return r;
}

HasseCount hasse_count_check(Int d)
{
    if (!is_fundamental_discriminant(d))
        throw InvalidInput("hasse_count_check: " + d.str() + " is not a fundamental discriminant");
    HasseCount h;
    h.disc = d;
    h.fields_found = enumerate_fundamental(d, d).size();
    std::size_t pow3 = 1;
    for (unsigned i = three_rank(class_group(d)); i > 0; --i)
        pow3 *= 3;
    h.predicted = (pow3 - 1) / 2;
    h.ok = h.fields_found == h.predicted;
    return h;
}

}  // namespace cubictrace
