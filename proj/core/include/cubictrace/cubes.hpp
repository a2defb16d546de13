#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubictrace/class_group.hpp"
#include "cubictrace/tracelat.hpp"

namespace cubictrace {

/// A 2x2x2 integer cube given by its front face A and back face B.
struct Cube {
    Mat2 A{0, 0, 0, 0};
    Mat2 B{0, 0, 0, 0};

    friend bool operator==(const Cube&, const Cube&) = default;

    /// "A00,A01,A10,A11,B00,B01,B10,B11"
    std::string str() const;
    static Cube parse(const std::string& text);
};

/// The cubic form (a0, 3 a1, 3 a2, a3).
struct GaussianCubicForm {
    Int a0 = 0, a1 = 0, a2 = 0, a3 = 0;

    friend bool operator==(const GaussianCubicForm&, const GaussianCubicForm&) = default;
    friend auto operator<=>(const GaussianCubicForm&, const GaussianCubicForm&) = default;

    BinaryCubicForm to_cubic() const { return {a0, a1 * 3, a2 * 3, a3}; }
    /// Throws InvalidInput unless the middle coefficients are divisible by 3.
    static GaussianCubicForm from_cubic(const BinaryCubicForm& f);

    /// "a0,a1,a2,a3"
    std::string str() const;
    static GaussianCubicForm parse(const std::string& text);
};

/*
 * Q1 = -det(A x + B y), Q2 = -det(A v | B v), Q3 = -det(A^t v | B^t v) with
 * v = (x, y)^t.
 */
BinaryQF q_i(const Cube& c, int i);

/// Common discriminant of the three projections.
Int cube_disc(const Cube& c);

/*
 * (g1, g2, g3) . (A, B): both faces become g3 X g2^t, then g1 mixes the
 * faces, (A, B) -> (p A + q B, r A + s B) for g1 = [[p, q], [r, s]].
 * Q1 becomes apply(Q1, g1^t); Q2 and Q3 are changed by g2 and g3 likewise.
 */
Cube gamma_act(const Cube& c, const Unimodular2& g1, const Unimodular2& g2, const Unimodular2& g3);

/// A = [[a0, a1], [a1, a2]], B = [[a1, a2], [a2, a3]].
Cube iota(const GaussianCubicForm& f);

/// iota of (3a, b, c, 3d); its first projection is the Hessian.
Cube field_cube(const BinaryCubicForm& f);

/// Cube with first projection C_form(D).  Requires D fundamental.
Cube c_cube(Int D);

/// SL2-classes of the three projections (canonical representatives).
struct CubeClass {
    Int disc;
    BinaryQF q1, q2, q3;

    friend bool operator==(const CubeClass&, const CubeClass&) = default;
};

/// Requires primitive projections; throws std::logic_error if Q1 * Q2 * Q3 is not trivial.
CubeClass cube_class(const Cube& c);

CubeClass compose_classes(const CubeClass& x, const CubeClass& y);

/// (a1^2 - a0 a2, a1 a2 - a0 a3, a2^2 - a1 a3)
BinaryQF phi1(const GaussianCubicForm& f);

struct GroupRelation2 {
    bool holds = false;
    int sign = 0;             ///< +1: pi1(T) ~ q/2, -1: pi1(T) ~ (q/2)^-1
    CubeClass composed;       ///< class of field_cube(F) + c_cube(d)
};

/// Requires d fundamental and 3 not dividing d.
GroupRelation2 verify_grouprel2(const BinaryCubicForm& f);

struct Caso3Result {
    bool holds = false;               ///< phi1(f_K) ~ q/6
    bool holds_up_to_inverse = false;
    GaussianCubicForm f_K;
    BinaryQF phi1_image;
    BinaryQF sixth_trace_form;
};

/// Requires d fundamental and 3 | d.
Caso3Result verify_caso3(const BinaryCubicForm& f);

struct TorsionHit {
    BinaryQF target;                          ///< canonical representative of the class
    std::optional<GaussianCubicForm> witness; ///< first Gaussian form found mapping onto it
    std::size_t forms_found = 0;              ///< Gaussian forms in the box mapping onto it
    std::size_t sl2_classes_found = 0;        ///< their distinct SL2-classes (Delta < -3 only)
};

struct SurjectivityReport {
    Int disc;
    long long coeff_bound = 0;
    std::vector<TorsionHit> torsion;  ///< one entry per class x with x^3 = 1
    bool all_hit = false;
    /// Delta < -3: no class was hit by two SL2-inequivalent Gaussian forms.
    std::optional<bool> kernel_trivial_in_box;
};

/*
 * Search Gaussian forms with |a_i| <= coeff_bound whose cube has
 * discriminant disc, and record which 3-torsion classes phi1 reaches.
 */
SurjectivityReport phi1_surjectivity_search(Int disc, long long coeff_bound, unsigned threads = 1);

}  // namespace cubictrace
