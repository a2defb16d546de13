#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubictrace/arith.hpp"
#include "cubictrace/qform.hpp"

namespace cubictrace {

/// The binary cubic form a x^3 + b x^2 y + c x y^2 + d y^3.
struct BinaryCubicForm {
    Int a = 0, b = 0, c = 0, d = 0;

    friend bool operator==(const BinaryCubicForm&, const BinaryCubicForm&) = default;
    friend auto operator<=>(const BinaryCubicForm&, const BinaryCubicForm&) = default;

    /// "a,b,c,d"
    std::string str() const;
    static BinaryCubicForm parse(const std::string& text);

    Int operator()(Int x, Int y) const
    {
        return a * x * x * x + b * x * x * y + c * x * y * y + d * y * y * y;
    }
};

std::ostream& operator<<(std::ostream& os, const BinaryCubicForm& f);

/// b^2 c^2 - 27 a^2 d^2 + 18 abcd - 4 a c^3 - 4 b^3 d
Int disc_cubic(const BinaryCubicForm& f);

/// (P, Q, R) = (b^2 - 3ac, bc - 9ad, c^2 - 3bd); discriminant is -3 disc_cubic(f).
BinaryQF hessian(const BinaryCubicForm& f);

/// (F|M)(x, y) = F(alpha x + beta y, gamma x + delta y); same convention as apply().
BinaryCubicForm act_cubic(const BinaryCubicForm& f, const Unimodular2& m);

/// Substitution by an arbitrary integer matrix.
BinaryCubicForm substitute(const BinaryCubicForm& f, const Mat2& m);

BinaryCubicForm negate(const BinaryCubicForm& f);
Int content(const BinaryCubicForm& f);
bool is_primitive(const BinaryCubicForm& f);

/// No rational root on the projective line (so a != 0 and d != 0).
bool is_irreducible(const BinaryCubicForm& f);

/// Swap (x, y) -> (y, x) when a == 0 and d != 0.
BinaryCubicForm normalize_leading(const BinaryCubicForm& f);

/// Factorization shape of a binary cubic over F_p.
enum class ModPShape { Split, LinearQuadratic, Inert, DoubleRoot, TripleRoot };

/// "111", "21", "3", "1^2 1", "1^3"
std::string to_string(ModPShape s);
ModPShape parse_mod_p_shape(const std::string& s);

/// Throws InvalidInput if p divides every coefficient.
ModPShape mod_p_shape(const BinaryCubicForm& f, long long p);

struct CubicReduction {
    BinaryCubicForm form;
    Unimodular2 witness;  ///< act_cubic(input, witness) == form
};

/*
 * Reduced representative of the GL2(Z)-orbit.
 *
 * Positive discriminant: the Hessian is brought to the reduced form
 * 0 <= Q <= P <= R; among the forms with that Hessian whose first nonzero
 * coefficient is positive the lexicographically smallest is returned, so the result is a complete
 * invariant.
 *
 * Negative discriminant: the complex root of F(x, 1) in the upper half plane
 * is moved into the standard fundamental domain; among the forms of the
 * orbit with a >= 0 and root in the closed domain the lexicographically
 * smallest is returned.  Root locations are only used to choose the
 * substitutions; the returned form and witness are exact.
 */
CubicReduction reduce_cubic(const BinaryCubicForm& f);

enum class EquivalenceStatus { Equivalent, Inequivalent, Inconclusive };

std::string to_string(EquivalenceStatus s);

struct CubicEquivalence {
    EquivalenceStatus status = EquivalenceStatus::Inconclusive;
    std::optional<Unimodular2> witness;  ///< act_cubic(F, witness) == G
    std::string method;                  ///< how the answer was certified
    long long certificate_prime = 0;     ///< set when inequivalence is certified mod p
};

struct EquivalenceOptions {
    long long automorph_bound_start = 32;
    long long automorph_bound_max = 1024;
    long long certificate_prime_max = 1000;
};

/*
 * GL2(Z)-equivalence of binary cubic forms of equal nonzero discriminant.
 * Reduced representatives are compared first.  For positive discriminants
 * that comparison is decisive.  For negative discriminants a differing
 * factorization shape modulo a prime certifies inequivalence, and otherwise
 * the Hessian transporter M = w A^k (w taking one Hessian to the other, A a
 * generator of its proper automorphs) is searched with an escalating bound
 * on |k|.  Exhausting the bound gives Inconclusive.
 */
CubicEquivalence cubic_equivalent(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                  const EquivalenceOptions& opts = {});

/// Same as cubic_equivalent restricted to witnesses of determinant +1.
CubicEquivalence cubic_sl2_equivalent(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                      const EquivalenceOptions& opts = {});

struct EnumeratedField {
    Int disc;
    BinaryCubicForm form;          ///< representative produced by the search
    BinaryCubicForm reduced_form;  ///< reduce_cubic(form).form

    friend bool operator==(const EnumeratedField&, const EnumeratedField&) = default;
};

struct EnumerationOptions {
    unsigned threads = 1;
};

/*
 * One representative per GL2(Z)-class of irreducible primitive cubic forms
 * whose discriminant is a fundamental discriminant in [disc_min, disc_max].
 * Sorted by (disc, form).
 */
std::vector<EnumeratedField> enumerate_fundamental(Int disc_min, Int disc_max,
                                                   const EnumerationOptions& opts = {});

struct CoefficientBox {
    long long a = 6, b = 20, c = 20, d = 30;
};

/*
 * Independent enumeration: every form in the coefficient box with a
 * fundamental discriminant in range, deduplicated with cubic_equivalent.
 * Used to cross-check enumerate_fundamental at small height.
 */
std::vector<EnumeratedField> enumerate_box(Int disc_min, Int disc_max, const CoefficientBox& box = {});

}  // namespace cubictrace

template <>
struct std::hash<cubictrace::BinaryCubicForm> {
    std::size_t operator()(const cubictrace::BinaryCubicForm& f) const noexcept
    {
        std::hash<cubictrace::Int> h;
        std::size_t s = h(f.a);
        s = s * 1000003U ^ h(f.b);
        s = s * 1000003U ^ h(f.c);
        s = s * 1000003U ^ h(f.d);
        return s;
    }
};
