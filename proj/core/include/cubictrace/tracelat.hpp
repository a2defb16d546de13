#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cubictrace/cubic_form.hpp"

namespace cubictrace {

/// Exact rational number with positive denominator in lowest terms.
class Rational {
public:
    Rational(Int n = 0, Int d = 1);

    Int num() const { return n_; }
    Int den() const { return d_; }
    bool is_integer() const { return d_ == 1; }

    /// "p" or "p/q"
    std::string str() const;
    static Rational parse(const std::string& s);

    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);
    Rational operator-() const { return {-n_, d_}; }

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    Int n_, d_;
};

/// Traces of alpha = -a theta, beta = d / theta and their products.
struct BasisTraces {
    Int tr_alpha, tr_beta, tr_alpha2, tr_beta2, tr_alphabeta;

    friend bool operator==(const BasisTraces&, const BasisTraces&) = default;
};

BasisTraces basis_traces(const BinaryCubicForm& f);

/// Gram matrix of (x, y) -> tr(xy) on the basis {1, -a theta, d / theta}.
struct TraceLattice {
    BinaryCubicForm form;
    Mat3 gram;
    std::array<Int, 3> trace_vector;  ///< traces of the basis elements
};

TraceLattice full_gram(const BinaryCubicForm& f);

/// Which description of the trace-zero module produced a form.
enum class TraceCase { B0, C0, BmC, BpC, Kernel };

std::string to_string(TraceCase c);

/// The binary form tr(x^2) / 2 on the trace-zero module.
struct TraceZeroForm {
    BinaryQF binary;
    TraceCase case_tag = TraceCase::Kernel;
};

/*
 * Kernel of the trace functional on the lattice, found with a unimodular
 * column reduction of the trace vector, with the pairing restricted to it
 * and halved.  Throws std::logic_error if the halving is not integral.
 */
TraceZeroForm trace_zero_sublattice(const TraceLattice& l);

/*
 * Closed form in terms of the Hessian (P, Q, R), by the residues of b and c
 * modulo 3, first match in the order b = 0, c = 0, b = -c, b = c.
 * Requires a fundamental discriminant.
 */
TraceZeroForm explicit_trace_form(const BinaryCubicForm& f);

/// Every case of the closed form whose residue condition holds, in the same order.
std::vector<TraceZeroForm> applicable_trace_forms(const BinaryCubicForm& f);

/// (3, 0, d/4) for d = 0 mod 4, else (3, 3, (d+3)/4).  Requires d fundamental.
BinaryQF C_form(Int d);

struct GroupRelation {
    bool holds = false;
    int sign = 0;       ///< +1: q * C ~ H, -1: q * C ~ H^-1
    BinaryQF product;   ///< canonical form of q * C
};

/// Tests (q/2) * C_d ~ H^(+-1) in the form class group of -3d; 3 must not divide d.
GroupRelation verify_grouprel(const BinaryCubicForm& f);

/*
 * f_K for 3 | d: one third of F(x, 3y), F(3x, y), F(x, -3y - x) or
 * F(x, 3y + x) by the same case split as explicit_trace_form.
 */
BinaryCubicForm f_K_form(const BinaryCubicForm& f);

struct TernaryForm {
    Mat3 gram;

    friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
};

/// Trace Gram of Q(m^(1/3)) on {1, alpha, alpha^2 / m_s}, m = m_f m_s^2.
TernaryForm pure_cubic_gram(Int m);

/// Element sum c_i theta^i of Q(theta), theta a root of F(x, 1).
using ThetaPoly = std::array<Rational, 3>;

/// The basis {1, -a theta, d / theta} written in powers of theta.
std::array<ThetaPoly, 3> standard_basis(const BinaryCubicForm& f);

/// Exact trace Gram on a supplied basis; throws InvalidInput if not integral.
TernaryForm gram_from_basis(const BinaryCubicForm& f, const std::array<ThetaPoly, 3>& basis);

/*
 * Search for M with entries in [-bound, bound] and det M = +-1 such that
 * M^t T1 M = T2.  Equal matrices give the identity; otherwise only
 * definite forms are supported.  Absence means none exists within the bound.
 */
std::optional<Mat3> ternary_equivalent_bounded(const TernaryForm& t1, const TernaryForm& t2,
                                               long long bound = 6);

struct TraceImageIndex {
    Int image_generator;     ///< gcd of the basis traces
    Int index_OK_over_GK;    ///< [O : Z + O^0]
    bool lemma_holds;        ///< index == |g Z / 3 Z| = 3 / g
};

TraceImageIndex trace_image_index(const TraceLattice& l);

}  // namespace cubictrace
