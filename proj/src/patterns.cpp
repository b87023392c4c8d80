#include "rigidrel/patterns.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rigidrel
{

namespace
{
    constexpr Rank kLookupLimit = Rank{1} << 26;
}

std::vector<Permutation> all_permutations(int n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Permutation inverse(const Permutation & p)
{
    Permutation q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        q[p[j]] = static_cast<Element>(j);
    return q;
}

PatternSpace::PatternSpace(int ell, int arity) : ell_(ell), h_(arity)
{
    if (ell < 1 || arity < 1)
        throw InvalidArgument("pattern space needs l >= 1 and h >= 1");
    const Rank count = checked_power(ell, arity, kLookupLimit);
    lookup_.assign(count, -1);
    for (Rank r = 0; r < count; ++r) {
        Tuple t = tuple_unrank(r, arity, ell);
        if (image_size(t) == ell) {
            lookup_[r] = static_cast<int>(patterns_.size());
            patterns_.push_back(std::move(t));
        }
    }
}

std::optional<std::size_t> PatternSpace::index_of(std::span<const Element> pattern) const
{
    if (static_cast<int>(pattern.size()) != h_)
        return std::nullopt;
    for (auto e : pattern)
        if (e < 0 || e >= ell_)
            return std::nullopt;
    const int idx = lookup_[tuple_rank(pattern, ell_)];
    if (idx < 0)
        return std::nullopt;
    return static_cast<std::size_t>(idx);
}

std::size_t PatternSpace::act(const Permutation & pi, std::size_t idx) const
{
    const Tuple & p = patterns_[idx];
    Rank r = 0;
    for (auto e : p)
        r = r * static_cast<Rank>(ell_) + static_cast<Rank>(pi[e]);
    return static_cast<std::size_t>(lookup_[r]);
}

IndexSet PatternSpace::act(const Permutation & pi, const IndexSet & set) const
{
    IndexSet out(size());
    for (auto i = set.find_first(); i != IndexSet::npos; i = set.find_next(i))
        out.set(act(pi, i));
    return out;
}

Tuple compose(std::span<const Element> x, std::span<const Element> pattern)
{
    Tuple out(pattern.size());
    for (std::size_t m = 0; m < pattern.size(); ++m)
        out[m] = x[pattern[m]];
    return out;
}

InjectiveTuples::InjectiveTuples(int k, int ell) : k_(k), ell_(ell)
{
    if (ell < 1 || ell > k)
        throw InvalidArgument("injective tuples need 1 <= l <= k, got l = " + std::to_string(ell));
    const Rank count = checked_power(k, ell, kLookupLimit);
    lookup_.assign(count, -1);
    for (Rank r = 0; r < count; ++r) {
        Tuple t = tuple_unrank(r, ell, k);
        if (image_size(t) == ell) {
            lookup_[r] = static_cast<int>(tuples_.size());
            tuples_.push_back(std::move(t));
        }
    }
}

std::size_t InjectiveTuples::index_of(std::span<const Element> x) const
{
    if (static_cast<int>(x.size()) != ell_)
        throw InvalidArgument("tuple length does not match l");
    const int idx = lookup_[tuple_rank(x, k_)];
    if (idx < 0)
        throw InvalidArgument("tuple is not injective");
    return static_cast<std::size_t>(idx);
}

std::vector<std::vector<Element>> subsets_of_size(int k, int ell)
{
    std::vector<std::vector<Element>> out;
    if (ell < 0 || ell > k)
        return out;
    std::vector<Element> c(ell);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        int j = ell - 1;
        while (j >= 0 && c[j] == k - ell + j)
            --j;
        if (j < 0)
            break;
        ++c[j];
        for (int m = j + 1; m < ell; ++m)
            c[m] = c[m - 1] + 1;
    }
    return out;
}

} // namespace rigidrel
