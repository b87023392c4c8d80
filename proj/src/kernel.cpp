#include "rigidrel/kernel.hpp"

#include <algorithm>
#include <string>

namespace rigidrel
{

namespace
{
    // Relations and tables are allocated densely; keep them under 1 Gbit.
    constexpr Rank kDenseLimit = Rank{1} << 30;

    void check_arity(int n)
    {
        if (n < 1)
            throw InvalidArgument("arity must be at least 1, got " + std::to_string(n));
    }
}

Domain::Domain(int k) : k_(k)
{
    if (k < 2)
        throw InvalidArgument("domain size must be at least 2, got " + std::to_string(k));
}

Rank checked_power(int k, int n, Rank limit)
{
    Rank result = 1;
    for (int i = 0; i < n; ++i) {
        if (result > limit / static_cast<Rank>(k))
            throw CapacityError(std::to_string(k) + "^" + std::to_string(n) + " exceeds capacity "
                                + std::to_string(limit));
        result *= static_cast<Rank>(k);
    }
    return result;
}

Rank tuple_rank(std::span<const Element> t, int k)
{
    Rank r = 0;
    for (auto x : t) {
        if (x < 0 || x >= k)
            throw EncodingError("tuple entry " + std::to_string(x) + " outside {0.."
                                + std::to_string(k - 1) + "}");
        r = r * static_cast<Rank>(k) + static_cast<Rank>(x);
    }
    return r;
}

Tuple tuple_unrank(Rank r, int arity, int k)
{
    const Rank bound = checked_power(k, arity, ~Rank{0} / static_cast<Rank>(k));
    if (r >= bound)
        throw EncodingError("rank " + std::to_string(r) + " outside [0, " + std::to_string(bound) + ")");
    Tuple t(arity);
    for (int i = arity - 1; i >= 0; --i) {
        t[i] = static_cast<Element>(r % static_cast<Rank>(k));
        r /= static_cast<Rank>(k);
    }
    return t;
}

std::vector<Element> image(std::span<const Element> t)
{
    std::vector<Element> out(t.begin(), t.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int image_size(std::span<const Element> t)
{
    return static_cast<int>(image(t).size());
}

std::vector<Tuple> beta(int m, int n, std::span<const Element> base)
{
    check_arity(n);
    std::vector<Element> sorted = image(base);
    const int b = static_cast<int>(sorted.size());
    std::vector<Tuple> out;
    if (m < 1 || m > b || m > n)
        return out;
    const Rank count = checked_power(b, n, kDenseLimit);
    std::vector<int> digits(n, 0);
    Tuple t(n);
    for (Rank c = 0; c < count; ++c) {
        for (int i = 0; i < n; ++i)
            t[i] = sorted[digits[i]];
        if (image_size(t) == m)
            out.push_back(t);
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[i] < b)
                break;
            digits[i] = 0;
        }
    }
    return out;
}

std::vector<Tuple> beta_below(int m, int n, int k)
{
    check_arity(n);
    std::vector<Tuple> out;
    const Rank count = checked_power(k, n, kDenseLimit);
    for (Rank r = 0; r < count; ++r) {
        Tuple t = tuple_unrank(r, n, k);
        if (image_size(t) < m)
            out.push_back(std::move(t));
    }
    return out;
}

Relation::Relation(Domain d, int arity) : k_(d.size()), h_(arity)
{
    check_arity(arity);
    mask_.resize(checked_power(k_, h_, kDenseLimit));
}

Relation Relation::from_tuples(Domain d, int arity, const std::vector<Tuple> & tuples)
{
    Relation rho(d, arity);
    for (const auto & t : tuples)
        rho.insert(t);
    return rho;
}

Relation Relation::from_mask(Domain d, int arity, Mask mask)
{
    Relation rho(d, arity);
    if (mask.size() != rho.mask_.size())
        throw EncodingError("mask has " + std::to_string(mask.size()) + " bits, expected "
                            + std::to_string(rho.mask_.size()));
    rho.mask_ = std::move(mask);
    return rho;
}

Relation Relation::from_code(Domain d, int arity, std::uint64_t code)
{
    Relation rho(d, arity);
    if (rho.tuple_count() > 64)
        throw CapacityError("relation code needs k^h <= 64");
    if (rho.tuple_count() < 64 && (code >> rho.tuple_count()) != 0)
        throw EncodingError("relation code " + std::to_string(code) + " has bits beyond k^h");
    for (Rank r = 0; r < rho.tuple_count(); ++r)
        if ((code >> r) & 1u)
            rho.mask_.set(r);
    return rho;
}

Relation Relation::full(Domain d, int arity)
{
    Relation rho(d, arity);
    rho.mask_.set();
    return rho;
}

Relation Relation::diagonal(Domain d, int arity)
{
    Relation rho(d, arity);
    for (Element x = 0; x < rho.k_; ++x)
        rho.insert(Tuple(arity, x));
    return rho;
}

bool Relation::contains(std::span<const Element> t) const
{
    if (static_cast<int>(t.size()) != h_)
        throw MismatchError("tuple of length " + std::to_string(t.size()) + " tested against "
                            + std::to_string(h_) + "-ary relation");
    return mask_.test(tuple_rank(t, k_));
}

void Relation::insert(std::span<const Element> t)
{
    if (static_cast<int>(t.size()) != h_)
        throw MismatchError("tuple of length " + std::to_string(t.size()) + " inserted into "
                            + std::to_string(h_) + "-ary relation");
    mask_.set(tuple_rank(t, k_));
}

std::uint64_t Relation::code() const
{
    if (tuple_count() > 64)
        throw CapacityError("relation code needs k^h <= 64");
    std::uint64_t c = 0;
    for_each_rank([&](Rank r) { c |= std::uint64_t{1} << r; });
    return c;
}

std::vector<Tuple> Relation::tuples() const
{
    std::vector<Tuple> out;
    out.reserve(size());
    for_each_rank([&](Rank r) { out.push_back(tuple_unrank(r, h_, k_)); });
    return out;
}

PartialUnaryFn::PartialUnaryFn(Domain d) : table_(d.size(), kUndefined) {}

PartialUnaryFn::PartialUnaryFn(Domain d, std::vector<Element> table) : table_(std::move(table))
{
    if (static_cast<int>(table_.size()) != d.size())
        throw MismatchError("unary table of length " + std::to_string(table_.size())
                            + " for domain size " + std::to_string(d.size()));
    for (auto v : table_)
        if (v != kUndefined && (v < 0 || v >= d.size()))
            throw EncodingError("unary value " + std::to_string(v) + " outside the domain");
}

PartialUnaryFn PartialUnaryFn::identity(Domain d)
{
    std::vector<Element> t(d.size());
    for (Element x = 0; x < d.size(); ++x)
        t[x] = x;
    return PartialUnaryFn(d, std::move(t));
}

PartialUnaryFn PartialUnaryFn::constant(Domain d, Element c)
{
    return PartialUnaryFn(d, std::vector<Element>(d.size(), c));
}

PartialUnaryFn PartialUnaryFn::from_code(Domain d, Rank code)
{
    const int k = d.size();
    std::vector<Element> t(k);
    for (int x = k - 1; x >= 0; --x) {
        t[x] = static_cast<Element>(code % static_cast<Rank>(k + 1)) - 1;
        code /= static_cast<Rank>(k + 1);
    }
    if (code != 0)
        throw EncodingError("unary function code out of range");
    return PartialUnaryFn(d, std::move(t));
}

std::vector<Element> PartialUnaryFn::dom() const
{
    std::vector<Element> out;
    for (Element x = 0; x < k(); ++x)
        if (defined(x))
            out.push_back(x);
    return out;
}

std::vector<Element> PartialUnaryFn::img() const
{
    std::vector<Element> vals;
    for (auto v : table_)
        if (v != kUndefined)
            vals.push_back(v);
    return image(vals);
}

int PartialUnaryFn::dom_size() const
{
    return static_cast<int>(std::count_if(table_.begin(), table_.end(),
                                          [](Element v) { return v != kUndefined; }));
}

int PartialUnaryFn::img_size() const
{
    return static_cast<int>(img().size());
}

bool PartialUnaryFn::below_identity() const
{
    for (Element x = 0; x < k(); ++x)
        if (defined(x) && table_[x] != x)
            return false;
    return true;
}

bool PartialUnaryFn::injective() const
{
    return img_size() == dom_size();
}

PartialUnaryFn PartialUnaryFn::restrict_to(std::span<const Element> points) const
{
    std::vector<Element> t(k(), kUndefined);
    for (auto x : points) {
        if (x < 0 || x >= k())
            throw EncodingError("restriction point outside the domain");
        t[x] = table_[x];
    }
    return PartialUnaryFn(Domain{k()}, std::move(t));
}

PartialFn::PartialFn(Domain d, int arity) : k_(d.size()), n_(arity)
{
    check_arity(arity);
    table_.assign(checked_power(k_, n_, kDenseLimit), kUndefined);
}

PartialFn PartialFn::from_graph(Domain d, int arity,
                                const std::vector<std::pair<Tuple, Element>> & graph)
{
    PartialFn f(d, arity);
    for (const auto & [args, value] : graph) {
        if (static_cast<int>(args.size()) != arity)
            throw EncodingError("graph entry of arity " + std::to_string(args.size())
                                + " in a " + std::to_string(arity) + "-ary function");
        const Rank r = tuple_rank(args, f.k_);
        if (f.defined_at(r))
            throw EncodingError("argument tuple listed twice in graph");
        f.define_rank(r, value);
    }
    return f;
}

PartialFn PartialFn::from_unary(const PartialUnaryFn & g)
{
    PartialFn f(Domain{g.k()}, 1);
    for (Element x = 0; x < g.k(); ++x)
        if (g.defined(x))
            f.define_rank(static_cast<Rank>(x), g(x));
    return f;
}

PartialFn PartialFn::projection(Domain d, int arity, int i)
{
    if (i < 0 || i >= arity)
        throw InvalidArgument("projection index out of range");
    PartialFn f(d, arity);
    for (Rank r = 0; r < f.table_size(); ++r)
        f.table_[r] = tuple_unrank(r, arity, f.k_)[i];
    return f;
}

Element PartialFn::operator()(std::span<const Element> args) const
{
    if (static_cast<int>(args.size()) != n_)
        throw MismatchError("wrong number of arguments");
    return table_[tuple_rank(args, k_)];
}

void PartialFn::define(std::span<const Element> args, Element value)
{
    if (static_cast<int>(args.size()) != n_)
        throw MismatchError("wrong number of arguments");
    define_rank(tuple_rank(args, k_), value);
}

void PartialFn::define_rank(Rank r, Element value)
{
    if (r >= table_size())
        throw EncodingError("argument rank out of range");
    if (value != kUndefined && (value < 0 || value >= k_))
        throw EncodingError("value " + std::to_string(value) + " outside the domain");
    table_[r] = value;
}

std::vector<Rank> PartialFn::dom() const
{
    std::vector<Rank> out;
    for (Rank r = 0; r < table_size(); ++r)
        if (defined_at(r))
            out.push_back(r);
    return out;
}

std::size_t PartialFn::dom_size() const
{
    return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(),
                                                  [](Element v) { return v != kUndefined; }));
}

std::vector<Element> PartialFn::values() const
{
    std::vector<Element> vals;
    for (auto v : table_)
        if (v != kUndefined)
            vals.push_back(v);
    return image(vals);
}

PartialFn PartialFn::restrict_to(std::span<const Rank> ranks) const
{
    PartialFn g(Domain{k_}, n_);
    for (auto r : ranks) {
        if (r >= table_size())
            throw EncodingError("restriction rank out of range");
        g.table_[r] = table_[r];
    }
    return g;
}

std::vector<std::pair<Tuple, Element>> PartialFn::graph() const
{
    std::vector<std::pair<Tuple, Element>> out;
    for (Rank r = 0; r < table_size(); ++r)
        if (defined_at(r))
            out.emplace_back(tuple_unrank(r, n_, k_), table_[r]);
    return out;
}

bool is_partial_projection(const PartialFn & f)
{
    for (int i = 0; i < f.arity(); ++i) {
        bool ok = true;
        for (Rank r = 0; r < f.table_size() && ok; ++r)
            if (f.defined_at(r) && tuple_unrank(r, f.arity(), f.k())[i] != f.at(r))
                ok = false;
        if (ok)
            return true;
    }
    return false;
}

bool is_partial_constant(const PartialFn & f)
{
    return f.values().size() <= 1;
}

bool is_trivial(const PartialFn & f)
{
    return is_partial_constant(f) || is_partial_projection(f);
}

bool subfunction_of(const PartialFn & f, const PartialFn & g)
{
    if (f.k() != g.k() || f.arity() != g.arity())
        throw MismatchError("subfunction test between functions of different shape");
    for (Rank r = 0; r < f.table_size(); ++r)
        if (f.defined_at(r) && f.at(r) != g.at(r))
            return false;
    return true;
}

PartialFn compose(const PartialFn & f, const std::vector<PartialFn> & inner)
{
    if (static_cast<int>(inner.size()) != f.arity())
        throw MismatchError("composition needs one inner function per argument of f");
    if (inner.empty())
        throw InvalidArgument("composition needs at least one inner function");
    const int m = inner.front().arity();
    for (const auto & g : inner)
        if (g.k() != f.k() || g.arity() != m)
            throw MismatchError("inner functions must share domain and arity");
    PartialFn out(Domain{f.k()}, m);
    Tuple mid(f.arity());
    for (Rank r = 0; r < out.table_size(); ++r) {
        bool ok = true;
        for (int i = 0; i < f.arity() && ok; ++i) {
            mid[i] = inner[i].at(r);
            ok = mid[i] != kUndefined;
        }
        if (ok)
            out.define_rank(r, f(mid));
    }
    return out;
}

} // namespace rigidrel
