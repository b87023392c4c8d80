#ifndef RIGIDREL_PATTERNS_HPP
#define RIGIDREL_PATTERNS_HPP

// Index patterns: surjective h-tuples over {0..l-1} (the 0-based form of
// [l] = {1..l}), the symmetric group acting on them, and injective l-tuples
// over the base set.

#include <optional>
#include <span>
#include <vector>

#include "rigidrel/kernel.hpp"

namespace rigidrel
{

/// Permutation of {0..n-1}; p[j] is the image of j.
using Permutation = std::vector<Element>;

/// All permutations of {0..n-1} in lexicographic order (identity first).
std::vector<Permutation> all_permutations(int n);
Permutation inverse(const Permutation & p);

/// Subset of a PatternSpace, one bit per pattern index.
using IndexSet = boost::dynamic_bitset<>;

/// The set of surjective h-tuples over {0..l-1}, indexed in lexicographic
/// order, together with the left action pi . i = pi o i.
class PatternSpace
{
  public:
    PatternSpace(int ell, int arity);

    int ell() const noexcept { return ell_; }
    int arity() const noexcept { return h_; }
    std::size_t size() const noexcept { return patterns_.size(); }

    const Tuple & pattern(std::size_t idx) const { return patterns_[idx]; }
    const std::vector<Tuple> & patterns() const noexcept { return patterns_; }
    std::optional<std::size_t> index_of(std::span<const Element> pattern) const;

    /// Index of pi o pattern(idx).
    std::size_t act(const Permutation & pi, std::size_t idx) const;
    /// { pi o i : i in set }.
    IndexSet act(const Permutation & pi, const IndexSet & set) const;

    IndexSet empty_set() const { return IndexSet(size()); }

  private:
    int ell_;
    int h_;
    std::vector<Tuple> patterns_;
    std::vector<int> lookup_;
};

/// x o i: the h-tuple (x[i_0], ..., x[i_{h-1}]).
Tuple compose(std::span<const Element> x, std::span<const Element> pattern);

/// beta_l^l(k): injective l-tuples over {0..k-1} in lexicographic order, with
/// a dense rank lookup.
class InjectiveTuples
{
  public:
    InjectiveTuples(int k, int ell);

    int k() const noexcept { return k_; }
    int ell() const noexcept { return ell_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    const Tuple & operator[](std::size_t idx) const { return tuples_[idx]; }
    const std::vector<Tuple> & tuples() const noexcept { return tuples_; }

    /// Throws InvalidArgument when x is not injective or has the wrong length.
    std::size_t index_of(std::span<const Element> x) const;

  private:
    int k_;
    int ell_;
    std::vector<Tuple> tuples_;
    std::vector<int> lookup_;
};

/// Sorted l-subsets of {0..k-1} in lexicographic order.
std::vector<std::vector<Element>> subsets_of_size(int k, int ell);

} // namespace rigidrel

#endif
