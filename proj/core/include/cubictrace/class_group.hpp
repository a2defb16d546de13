#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "cubictrace/qform.hpp"

namespace cubictrace {

/*
 * Form class group of a non-square discriminant: SL2(Z)-classes of primitive
 * forms under Gauss composition (the narrow class group).  Classes are
 * indexed 0..order()-1 in increasing order of their canonical representative.
 *
 * Composition is evaluated on demand; full_table() materializes it.
 */
class ClassGroup {
public:
    explicit ClassGroup(Int disc);

    Int discriminant() const { return disc_; }
    std::size_t order() const { return reps_.size(); }
    const std::vector<BinaryQF>& representatives() const { return reps_; }
    std::size_t identity_index() const { return identity_; }

    /// Index of the class of f; f must be primitive of this discriminant.
    std::size_t index_of(const BinaryQF& f) const;

    std::size_t compose_index(std::size_t i, std::size_t j) const;
    std::size_t inverse_index(std::size_t i) const;
    std::size_t power_index(std::size_t i, long long n) const;
    std::size_t order_of_index(std::size_t i) const;

    std::vector<std::vector<std::size_t>> full_table() const;

    /// Invariant factors d1 | d2 | ... | dk, all > 1.  Empty for the trivial group.
    std::vector<unsigned long long> invariant_factors() const;

private:
    Int disc_;
    std::vector<BinaryQF> reps_;
    // every reduced form (positive discriminants) or canonical form -> class index
    std::unordered_map<BinaryQF, std::size_t> lookup_;
    std::size_t identity_ = 0;
};

ClassGroup class_group(Int disc);

/// r such that 3^r = #{x : x^3 = 1}.
unsigned three_rank(const ClassGroup& g);

/*
 * Order of the ordinary (wide) class group: the narrow group modulo the
 * class of -identity_form, which is trivial unless the discriminant is
 * positive and no unit has norm -1.
 */
std::size_t ordinary_class_number(const ClassGroup& g);

/// Multiplicative order of the class of f.
unsigned long long order_of(const BinaryQF& f, const ClassGroup& g);

}  // namespace cubictrace
