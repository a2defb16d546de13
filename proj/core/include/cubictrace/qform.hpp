#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "cubictrace/arith.hpp"
#include "cubictrace/int.hpp"

namespace cubictrace {

/// The integral binary quadratic form a x^2 + b x y + c y^2.
struct BinaryQF {
    Int a = 0, b = 0, c = 0;

    friend bool operator==(const BinaryQF&, const BinaryQF&) = default;
    friend auto operator<=>(const BinaryQF&, const BinaryQF&) = default;

    /// "a,b,c"
    std::string str() const;
    static BinaryQF parse(const std::string& text);

    Int operator()(Int x, Int y) const { return a * x * x + b * x * y + c * y * y; }
};

std::ostream& operator<<(std::ostream& os, const BinaryQF& f);

Int discriminant(const BinaryQF& f);
Int content(const BinaryQF& f);
bool is_primitive(const BinaryQF& f);
/// f / content(f)
BinaryQF primitive_part(const BinaryQF& f);
/// Multiply all coefficients by k.
BinaryQF scale(const BinaryQF& f, Int k);

/// (f|M)(x, y) = f(alpha x + beta y, gamma x + delta y) for M = [[alpha, beta], [gamma, delta]].
BinaryQF apply(const BinaryQF& f, const Unimodular2& m);

/// The opposite form (a, -b, c); its class is the inverse class.
BinaryQF inverse(const BinaryQF& f);

struct Reduction {
    BinaryQF form;
    Unimodular2 witness;  ///< apply(input, witness) == form, det +1
};

/// |b| <= a <= c, and b >= 0 when |b| == a or a == c.
bool is_reduced_definite(const BinaryQF& f);

/// Positive definite forms only (discriminant < 0, a > 0).
Reduction reduce_definite(const BinaryQF& f);

/// 0 < b < sqrt(D) and |sqrt(D) - 2|a|| < b, evaluated exactly.
bool is_reduced_indefinite(const BinaryQF& f);

/// One application of the rho operator; returns the new form and the step matrix.
Reduction rho_step(const BinaryQF& f);

/// Indefinite (non-square positive discriminant) forms.
Reduction reduce_indefinite(const BinaryQF& f);

/// The cycle of reduced forms SL2-equivalent to f, in rho order, starting at reduce_indefinite(f).
std::vector<BinaryQF> reduction_cycle(const BinaryQF& f);

/*
 * A canonical representative of the SL2(Z)-class of f: the reduced form when
 * the discriminant is negative, the smallest form of the reduction cycle when
 * it is positive.
 */
BinaryQF canonical_form(const BinaryQF& f);

bool same_sl2_class(const BinaryQF& f, const BinaryQF& g);

/// Witness M (det +1) with apply(f, M) == g, when one exists.
std::optional<Unimodular2> sl2_equivalent(const BinaryQF& f, const BinaryQF& g);

/// GL2(Z)-equivalence; inputs are divided by their content first.
bool gl2_equivalent(const BinaryQF& f, const BinaryQF& g);

/// The principal form (1, 0, -D/4) or (1, 1, (1-D)/4).
BinaryQF identity_form(Int disc);

/// Gauss composition; the result is the canonical representative of the composite class.
BinaryQF compose(const BinaryQF& f, const BinaryQF& g);

/// f^n in the class group (n may be negative); canonical representative.
BinaryQF power(const BinaryQF& f, long long n);

/// Throws InvalidInput unless disc = 0, 1 (mod 4) and is not a square.
void check_class_group_discriminant(Int disc);

}  // namespace cubictrace

template <>
struct std::hash<cubictrace::BinaryQF> {
    std::size_t operator()(const cubictrace::BinaryQF& f) const noexcept
    {
        std::hash<cubictrace::Int> h;
        std::size_t s = h(f.a);
        s = s * 1000003U ^ h(f.b);
        s = s * 1000003U ^ h(f.c);
        return s;
    }
};
