#pragma once

#include <optional>
#include <string>

#include "cubictrace/cubic_form.hpp"
#include "cubictrace/tracelat.hpp"

namespace cubictrace {

struct CubicFieldRecord {
    BinaryCubicForm form;
    Int disc;
    bool totally_real = false;
    TraceZeroForm trace_zero;    ///< closed-form trace-zero form
    TraceZeroForm kernel_form;   ///< the same lattice from the trace kernel
    bool methods_agree = false;  ///< the two are GL2-equivalent
    BinaryQF hessian;
};

/// Requires F irreducible, primitive, with fundamental discriminant.
CubicFieldRecord make_record(const BinaryCubicForm& f);

using SplittingType = ModPShape;

/// Shape of F(x, y) mod p.  p must be prime and must not divide every coefficient.
SplittingType splitting_type(const BinaryCubicForm& f, long long p);

/*
 * Smallest prime p <= p_max dividing neither discriminant where the shapes
 * differ.  The forms may describe non-maximal orders of the fields compared.
 */
std::optional<long long> distinguishing_prime(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                              long long p_max = 1000);

enum class Verdict { Yes, No, Undecided };

std::string to_string(Verdict v);

struct IsomorphismResult {
    Verdict verdict = Verdict::Undecided;
    std::optional<Unimodular2> witness;   ///< F|M = G when verdict is Yes
    std::optional<long long> prime;       ///< splitting certificate when verdict is No
    std::string method;
};

/*
 * Splitting certificates first, then cubic_equivalent.  Requires both forms
 * irreducible with equal discriminants.
 */
IsomorphismResult is_isomorphic(const BinaryCubicForm& f, const BinaryCubicForm& g,
                                long long p_max = 1000);

struct HasseCount {
    Int disc;
    std::size_t fields_found = 0;
    std::size_t predicted = 0;  ///< (3^r - 1) / 2, r the 3-rank of Cl(d)
    bool ok = false;
};

HasseCount hasse_count_check(Int d);

}  // namespace cubictrace
