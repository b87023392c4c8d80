#ifndef RIGIDREL_KERNEL_HPP
#define RIGIDREL_KERNEL_HPP

// Core value types: the base set {0..k-1}, tuples, relations as dense
// membership masks, and unary / n-ary partial functions.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace rigidrel
{

using Element = int;
using Rank = std::uint64_t;
using Tuple = std::vector<Element>;
using Mask = boost::dynamic_bitset<>;

inline constexpr Element kUndefined = -1;

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Out-of-range tuple entry, rank, or malformed serialized value.
class EncodingError : public Error
{
  public:
    using Error::Error;
};

/// Operands built over different base sets or with different arities.
class MismatchError : public Error
{
  public:
    using Error::Error;
};

/// An enumeration or allocation guard was exceeded.
class CapacityError : public Error
{
  public:
    using Error::Error;
};

/// A precondition on an argument value does not hold.
class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

/// Size of the base set {0..k-1}; always at least 2.
class Domain
{
  public:
    explicit Domain(int k);

    int size() const noexcept { return k_; }
    friend bool operator==(Domain, Domain) = default;

  private:
    int k_;
};

/// k^n, throwing CapacityError when the result exceeds `limit`.
Rank checked_power(int k, int n, Rank limit = Rank{1} << 40);

Rank tuple_rank(std::span<const Element> t, int k);
Tuple tuple_unrank(Rank r, int arity, int k);

/// Number of distinct entries.
int image_size(std::span<const Element> t);

/// Sorted distinct entries.
std::vector<Element> image(std::span<const Element> t);

/// The n-tuples over `base` with exactly m distinct entries, in lexicographic
/// order of the sorted base.
std::vector<Tuple> beta(int m, int n, std::span<const Element> base);

/// Tuples over {0..k-1} with fewer than m distinct entries.
std::vector<Tuple> beta_below(int m, int n, int k);

class Relation
{
  public:
    /// The empty h-ary relation.
    Relation(Domain d, int arity);

    static Relation from_tuples(Domain d, int arity, const std::vector<Tuple> & tuples);
    static Relation from_mask(Domain d, int arity, Mask mask);
    /// Bit r of `code` is the membership of the tuple with rank r; needs k^h <= 64.
    static Relation from_code(Domain d, int arity, std::uint64_t code);
    static Relation full(Domain d, int arity);
    static Relation diagonal(Domain d, int arity);

    int k() const noexcept { return k_; }
    Domain domain() const { return Domain{k_}; }
    int arity() const noexcept { return h_; }
    Rank tuple_count() const noexcept { return mask_.size(); }

    bool contains(std::span<const Element> t) const;
    bool contains_rank(Rank r) const { return mask_.test(r); }

    void insert(std::span<const Element> t);
    void insert_rank(Rank r) { mask_.set(r); }

    std::size_t size() const { return mask_.count(); }
    bool empty() const { return mask_.none(); }

    const Mask & mask() const noexcept { return mask_; }
    /// Inverse of from_code; needs k^h <= 64.
    std::uint64_t code() const;

    /// Members in increasing rank order.
    std::vector<Tuple> tuples() const;

    template <typename Fn>
    void for_each_rank(Fn && fn) const
    {
        for (auto r = mask_.find_first(); r != Mask::npos; r = mask_.find_next(r))
            fn(static_cast<Rank>(r));
    }

    friend bool operator==(const Relation & a, const Relation & b)
    {
        return a.k_ == b.k_ && a.h_ == b.h_ && a.mask_ == b.mask_;
    }

  private:
    int k_;
    int h_;
    Mask mask_;
};

/// A partial self-map of {0..k-1}.
class PartialUnaryFn
{
  public:
    /// The nowhere-defined function.
    explicit PartialUnaryFn(Domain d);
    /// `table[x]` is the value at x, or kUndefined.
    PartialUnaryFn(Domain d, std::vector<Element> table);

    static PartialUnaryFn identity(Domain d);
    static PartialUnaryFn constant(Domain d, Element c);
    /// Enumeration code in base k+1, digit 0 meaning undefined; point 0 is
    /// the most significant digit.
    static PartialUnaryFn from_code(Domain d, Rank code);

    int k() const noexcept { return static_cast<int>(table_.size()); }
    bool defined(Element x) const { return table_[x] != kUndefined; }
    Element operator()(Element x) const { return table_[x]; }
    const std::vector<Element> & table() const noexcept { return table_; }

    std::vector<Element> dom() const;
    std::vector<Element> img() const;
    int dom_size() const;
    int img_size() const;

    bool below_identity() const;
    bool injective() const;

    PartialUnaryFn restrict_to(std::span<const Element> points) const;

    friend bool operator==(const PartialUnaryFn &, const PartialUnaryFn &) = default;

  private:
    std::vector<Element> table_;
};

/// An n-ary partial function on {0..k-1}, stored as a dense table over all
/// k^n argument ranks.
class PartialFn
{
  public:
    PartialFn(Domain d, int arity);

    /// Throws EncodingError on bad entries or a repeated argument tuple.
    static PartialFn from_graph(Domain d, int arity,
                                const std::vector<std::pair<Tuple, Element>> & graph);
    static PartialFn from_unary(const PartialUnaryFn & f);
    /// The total i-th projection (0-based i).
    static PartialFn projection(Domain d, int arity, int i);

    int k() const noexcept { return k_; }
    int arity() const noexcept { return n_; }
    Rank table_size() const noexcept { return table_.size(); }

    bool defined_at(Rank r) const { return table_[r] != kUndefined; }
    Element at(Rank r) const { return table_[r]; }
    Element operator()(std::span<const Element> args) const;

    void define(std::span<const Element> args, Element value);
    void define_rank(Rank r, Element value);

    /// Domain argument ranks in increasing order.
    std::vector<Rank> dom() const;
    std::size_t dom_size() const;
    /// Sorted distinct values.
    std::vector<Element> values() const;

    PartialFn restrict_to(std::span<const Rank> ranks) const;

    std::vector<std::pair<Tuple, Element>> graph() const;

    friend bool operator==(const PartialFn &, const PartialFn &) = default;

  private:
    int k_;
    int n_;
    std::vector<Element> table_;
};

bool is_partial_projection(const PartialFn & f);
bool is_partial_constant(const PartialFn & f);
bool is_trivial(const PartialFn & f);

/// f <= g: dom(f) is contained in dom(g) and the two agree on dom(f).
bool subfunction_of(const PartialFn & f, const PartialFn & g);

/// x -> f(g_1(x), ..., g_n(x)), defined where every g_i is defined and the
/// inner tuple lies in dom(f).
PartialFn compose(const PartialFn & f, const std::vector<PartialFn> & inner);

} // namespace rigidrel

#endif
