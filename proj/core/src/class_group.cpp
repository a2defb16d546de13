#include "cubictrace/class_group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cubictrace {

namespace {

std::vector<BinaryQF> reduced_definite_forms(Int disc)
{
    std::vector<BinaryQF> out;
    const Int parity = floor_mod(disc, 2);
    for (Int a = 1; a * a * 3 <= -disc; a += 1) {
        for (Int b = -a + 1; b <= a; b += 1) {
            if (floor_mod(b, 2) != parity)
                continue;
            Int num = b * b - disc;
            if (!divides(a * 4, num))
                continue;
            Int c = num / (a * 4);
            if (c < a || (c == a && b.sign() < 0))
                continue;
            BinaryQF f{a, b, c};
            if (is_primitive(f))
                out.push_back(f);
        }
    }
    return out;
}

std::vector<BinaryQF> reduced_indefinite_forms(Int disc)
{
    std::vector<BinaryQF> out;
    const Int root = isqrt(disc);
    const Int parity = floor_mod(disc, 2);
    for (Int b = 1; b <= root; b += 1) {
        if (floor_mod(b, 2) != parity)
            continue;
        const Int n = abs(b * b - disc) / 4;  // -a*c
        for (Int a = 1; a * a <= n; a += 1) {
            if (!divides(a, n))
                continue;
            for (Int aa : {a, n / a}) {
                for (int sign : {1, -1}) {
                    BinaryQF f{aa * sign, b, -(n / aa) * sign};
                    if (is_primitive(f) && is_reduced_indefinite(f))
                        out.push_back(f);
                }
                if (aa == n / aa)
                    break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ClassGroup::ClassGroup(Int disc) : disc_(disc)
{
    check_class_group_discriminant(disc);
    if (disc.sign() < 0) {
        reps_ = reduced_definite_forms(disc);
        std::sort(reps_.begin(), reps_.end());
        for (std::size_t i = 0; i < reps_.size(); ++i)
            lookup_.emplace(reps_[i], i);
    } else {
        auto reduced = reduced_indefinite_forms(disc);
        std::set<BinaryQF> pending(reduced.begin(), reduced.end());
        std::vector<std::vector<BinaryQF>> cycles;
        while (!pending.empty()) {
            auto cycle = reduction_cycle(*pending.begin());
            for (const auto& g : cycle)
                pending.erase(g);
            cycles.push_back(std::move(cycle));
        }
        std::sort(cycles.begin(), cycles.end(), [](const auto& x, const auto& y) {
            return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
        });
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            reps_.push_back(*std::min_element(cycles[i].begin(), cycles[i].end()));
            for (const auto& g : cycles[i])
                lookup_.emplace(g, i);
        }
    }
    identity_ = index_of(identity_form(disc));
}

std::size_t ClassGroup::index_of(const BinaryQF& f) const
{
    if (cubictrace::discriminant(f) != disc_)
        throw InvalidInput("class group: form " + f.str() + " has discriminant "
                           + cubictrace::discriminant(f).str() + ", expected " + disc_.str());
    if (!is_primitive(f))
        throw InvalidInput("class group: form " + f.str() + " is not primitive");
    BinaryQF key = disc_.sign() < 0 ? reduce_definite(f).form : reduce_indefinite(f).form;
    auto it = lookup_.find(key);
    if (it == lookup_.end())
        throw std::logic_error("class group: reduced form " + key.str() + " missing from table");
    return it->second;
}

std::size_t ClassGroup::compose_index(std::size_t i, std::size_t j) const
{
    return index_of(compose(reps_.at(i), reps_.at(j)));
}

std::size_t ClassGroup::inverse_index(std::size_t i) const
{
    return index_of(inverse(reps_.at(i)));
}

std::size_t ClassGroup::power_index(std::size_t i, long long n) const
{
    return index_of(power(reps_.at(i), n));
}

std::size_t ClassGroup::order_of_index(std::size_t i) const
{
    std::size_t k = 1;
    for (std::size_t x = i; x != identity_; x = compose_index(x, i))
        ++k;
    return k;
}

std::vector<std::vector<std::size_t>> ClassGroup::full_table() const
{
    const std::size_t h = order();
    std::vector<std::vector<std::size_t>> t(h, std::vector<std::size_t>(h));
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j)
            t[i][j] = t[j][i] = compose_index(i, j);
    return t;
}

std::vector<unsigned long long> ClassGroup::invariant_factors() const
{
    const auto h = static_cast<long long>(order());
    // prime -> exponents of the cyclic p-power factors, descending
    std::map<Int, std::vector<unsigned>> primary;
    for (const auto& pp : factor(Int(h))) {
        const long long p = pp.prime.to_ll();
        std::vector<std::size_t> elems(order());
        for (std::size_t i = 0; i < order(); ++i)
            elems[i] = i;
        // counts[k] = #{x : x^(p^k) = 1}
        std::vector<long long> counts{1};
        std::vector<std::size_t> cur = elems;
        const long long full = pow(Int(p), pp.exponent).to_ll();
        while (counts.back() < full) {
            for (auto& x : cur)
                x = power_index(x, p);
            counts.push_back(static_cast<long long>(std::count(cur.begin(), cur.end(), identity_)));
        }
        // e[k] = number of cyclic factors of order >= p^k
        std::vector<unsigned> e;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            long long ratio = counts[k] / counts[k - 1];
            unsigned r = 0;
            while (ratio > 1) {
                ratio /= p;
                ++r;
            }
            e.push_back(r);
        }
        std::vector<unsigned> exps;
        for (std::size_t k = 0; k < e.size(); ++k) {
            unsigned next = k + 1 < e.size() ? e[k + 1] : 0;
            for (unsigned m = 0; m < e[k] - next; ++m)
                exps.push_back(static_cast<unsigned>(k + 1));
        }
        std::sort(exps.rbegin(), exps.rend());
        primary[pp.prime] = exps;
    }
    std::size_t width = 0;
    for (const auto& [p, exps] : primary)
        width = std::max(width, exps.size());
    std::vector<unsigned long long> out;
    for (std::size_t i = 0; i < width; ++i) {
        Int d = 1;
        for (const auto& [p, exps] : primary)
            if (i < exps.size())
                d *= pow(p, exps[i]);
        out.push_back(static_cast<unsigned long long>(d.to_ll()));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

ClassGroup class_group(Int disc)
{
    return ClassGroup(disc);
}

unsigned three_rank(const ClassGroup& g)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.power_index(i, 3) == g.identity_index())
            ++count;
    unsigned r = 0;
    while (count > 1) {
        count /= 3;
        ++r;
    }
    return r;
}

std::size_t ordinary_class_number(const ClassGroup& g)
{
    if (g.discriminant().sign() < 0)
        return g.order();
    BinaryQF minus_one = scale(identity_form(g.discriminant()), -1);
    return g.index_of(minus_one) == g.identity_index() ? g.order() : g.order() / 2;
}

unsigned long long order_of(const BinaryQF& f, const ClassGroup& g)
{
    return g.order_of_index(g.index_of(f));
}

}  // namespace cubictrace
