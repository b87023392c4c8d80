#include "rigidrel/rigidity.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>

#include "rigidrel/parallel.hpp"
#include "rigidrel/preserve.hpp"

namespace rigidrel
{

namespace
{
    void check_ell(const Relation & rho, int ell)
    {
        if (ell < 1 || ell > rho.k())
            throw InvalidArgument("l must satisfy 1 <= l <= k = " + std::to_string(rho.k()) + ", got "
                                  + std::to_string(ell));
    }

    void check_nonempty(const Relation & rho)
    {
        if (rho.empty())
            throw InvalidArgument("relation is empty; only nonempty relations are considered");
    }

    std::vector<Rank> place_values(int k, int h)
    {
        std::vector<Rank> w(h);
        Rank p = 1;
        for (int i = h - 1; i >= 0; --i) {
            w[i] = p;
            p *= static_cast<Rank>(k);
        }
        return w;
    }

    // Advances `v` to the next tuple over {0..k-1} in lexicographic order.
    bool next_tuple(std::vector<Element> & v, int k)
    {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
            if (++v[i] < k)
                return true;
            v[i] = 0;
        }
        return false;
    }

    bool all_distinct(const std::vector<Element> & v)
    {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] == v[j])
                    return false;
        return true;
    }

    PartialUnaryFn map_on(int k, const std::vector<Element> & dom, const std::vector<Element> & vals)
    {
        std::vector<Element> t(k, kUndefined);
        for (std::size_t j = 0; j < dom.size(); ++j)
            t[dom[j]] = vals[j];
        return PartialUnaryFn(Domain{k}, std::move(t));
    }

    // Members u of rho inside dom^h, each reduced to per-position weights:
    // g o u has rank sum_j g(dom[j]) * weight[j].
    std::vector<std::vector<Rank>> local_weights(const Relation & rho, const std::vector<Element> & dom)
    {
        const int k = rho.k();
        const int h = rho.arity();
        const int d = static_cast<int>(dom.size());
        const auto place = place_values(k, h);
        std::vector<std::vector<Rank>> out;
        std::vector<Element> digits(h, 0);
        do {
            Rank r = 0;
            for (int i = 0; i < h; ++i)
                r += static_cast<Rank>(dom[digits[i]]) * place[i];
            if (rho.contains_rank(r)) {
                std::vector<Rank> w(d, 0);
                for (int i = 0; i < h; ++i)
                    w[digits[i]] += place[i];
                out.push_back(std::move(w));
            }
        } while (next_tuple(digits, d));
        return out;
    }

    // First injective value tuple on `dom`, other than the identity, under
    // which every local member stays in rho.
    std::optional<std::vector<Element>> first_preserving_on(const Relation & rho,
                                                            const std::vector<Element> & dom)
    {
        const int k = rho.k();
        const auto weights = local_weights(rho, dom);
        std::vector<Element> v(dom.size(), 0);
        do {
            if (v == dom || !all_distinct(v))
                continue;
            bool preserved = true;
            for (const auto & w : weights) {
                Rank r = 0;
                for (std::size_t j = 0; j < w.size(); ++j)
                    r += static_cast<Rank>(v[j]) * w[j];
                if (!rho.contains_rank(r)) {
                    preserved = false;
                    break;
                }
            }
            if (preserved)
                return v;
        } while (next_tuple(v, k));
        return std::nullopt;
    }
}

bool omega_member(const PartialUnaryFn & f, int ell)
{
    return f.below_identity() || f.img_size() < ell;
}

std::vector<PartialUnaryFn> enumerate_psi(int k, int ell)
{
    Domain d{k};
    if (ell < 1 || ell > k)
        throw InvalidArgument("l must satisfy 1 <= l <= k");
    std::vector<PartialUnaryFn> out;
    for (const auto & dom : subsets_of_size(k, ell)) {
        std::vector<Element> v(ell, 0);
        do {
            if (v != dom && all_distinct(v))
                out.push_back(map_on(d.size(), dom, v));
        } while (next_tuple(v, k));
    }
    return out;
}

std::string to_string(FailingSide side)
{
    switch (side) {
    case FailingSide::none:
        return "none";
    case FailingSide::omega_containment:
        return "omega_containment";
    case FailingSide::psi_exclusion:
        return "psi_exclusion";
    }
    return "unknown";
}

RigidityReport omega_contained(const Relation & rho, int ell)
{
    check_nonempty(rho);
    check_ell(rho, ell);
    const int k = rho.k();
    const int h = rho.arity();
    RigidityReport report;
    report.rigid = true;
    if (ell < 2)
        return report;

    auto fail = [&](const Tuple & u, const std::vector<Element> & dom, const std::vector<Element> & vals) {
        report.rigid = false;
        report.failing_side = FailingSide::omega_containment;
        report.failing_function = map_on(k, dom, vals);
        report.witness_tuple = u;
        return report;
    };

    // Constant collapses: the diagonal must be in rho.
    const Tuple first = tuple_unrank(rho.mask().find_first(), h, k);
    const std::vector<Element> first_dom = image(first);
    for (Element c = 0; c < k; ++c)
        if (!rho.contains(Tuple(h, c)))
            return fail(first, first_dom, std::vector<Element>(first_dom.size(), c));
    if (ell == 2)
        return report;

    const auto place = place_values(k, h);
    const Mask & m = rho.mask();
    for (auto r = m.find_first(); r != Mask::npos; r = m.find_next(r)) {
        const Tuple u = tuple_unrank(r, h, k);
        const std::vector<Element> dom = image(u);
        std::vector<int> pos(h);
        for (int i = 0; i < h; ++i)
            pos[i] = static_cast<int>(std::lower_bound(dom.begin(), dom.end(), u[i]) - dom.begin());
        std::vector<Element> g(dom.size(), 0);
        do {
            if (image_size(g) >= ell)
                continue;
            Rank img = 0;
            for (int i = 0; i < h; ++i)
                img += static_cast<Rank>(g[pos[i]]) * place[i];
            if (!rho.contains_rank(img))
                return fail(u, dom, g);
        } while (next_tuple(g, k));
    }
    return report;
}

std::optional<PartialUnaryFn> first_preserving_psi(const Relation & rho, int ell, ScanOptions opts)
{
    check_ell(rho, ell);
    const int k = rho.k();
    const auto domains = subsets_of_size(k, ell);
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{none};
    std::mutex lock;
    std::optional<std::vector<Element>> best_values;

    run_workers(std::max(1u, opts.jobs), [&](unsigned) {
        while (true) {
            const std::size_t d = next.fetch_add(1);
            if (d >= domains.size() || d > best.load())
                return;
            auto hit = first_preserving_on(rho, domains[d]);
            if (!hit)
                continue;
            std::lock_guard guard(lock);
            if (d < best.load()) {
                best = d;
                best_values = std::move(hit);
            }
        }
    });

    if (best.load() == none)
        return std::nullopt;
    return map_on(k, domains[best.load()], *best_values);
}

Relation orbit_closure(const Relation & rho, int ell)
{
    check_nonempty(rho);
    check_ell(rho, ell);
    const int k = rho.k();
    const int h = rho.arity();
    const auto place = place_values(k, h);
    Relation out = rho;
    rho.for_each_rank([&](Rank r) {
        const Tuple u = tuple_unrank(r, h, k);
        const std::vector<Element> dom = image(u);
        if (static_cast<int>(dom.size()) >= ell)
            return;
        std::vector<int> pos(h);
        for (int i = 0; i < h; ++i)
            pos[i] = static_cast<int>(std::lower_bound(dom.begin(), dom.end(), u[i]) - dom.begin());
        std::vector<Element> g(dom.size(), 0);
        do {
            Rank img = 0;
            for (int i = 0; i < h; ++i)
                img += static_cast<Rank>(g[pos[i]]) * place[i];
            out.insert_rank(img);
        } while (next_tuple(g, k));
    });
    return out;
}

RigidityReport is_hereditarily_ell_rigid(const Relation & rho, int ell, ScanOptions opts)
{
    check_nonempty(rho);
    check_ell(rho, ell);
    const int k = rho.k();
    const int h = rho.arity();

    if (ell == 1) {
        // A singleton partial constant {a -> b} preserves every nonempty
        // relation once (a,...,a) is missing or the whole diagonal is present.
        Element a = 0;
        for (Element c = 0; c < k; ++c)
            if (!rho.contains(Tuple(h, c))) {
                a = c;
                break;
            }
        std::vector<Element> t(k, kUndefined);
        t[a] = a == 0 ? 1 : 0;
        RigidityReport report;
        report.failing_function = PartialUnaryFn(Domain{k}, std::move(t));
        report.failing_side = FailingSide::psi_exclusion;
        report.note = "no relation on two or more elements is hereditarily 1-rigid";
        return report;
    }

    RigidityReport report = omega_contained(rho, ell);
    if (!report.rigid)
        return report;

    if (auto f = first_preserving_psi(rho, ell, opts)) {
        report.rigid = false;
        report.failing_side = FailingSide::psi_exclusion;
        report.failing_function = std::move(f);
    }
    return report;
}

bool replay(const Relation & rho, int ell, const RigidityReport & report)
{
    if (report.rigid)
        return !report.failing_function.has_value();
    if (!report.failing_function)
        return false;
    const auto & g = *report.failing_function;
    const bool in_omega = omega_member(g, ell);
    const bool preserved = unary_preserves(g, rho).preserved;
    switch (report.failing_side) {
    case FailingSide::omega_containment:
        return in_omega && !preserved;
    case FailingSide::psi_exclusion:
        return !in_omega && preserved;
    case FailingSide::none:
        break;
    }
    return false;
}

bool brute_force_rigidity(const Relation & rho, int ell)
{
    check_ell(rho, ell);
    const int k = rho.k();
    if (k > kBruteForceMaxDomain)
        throw CapacityError("brute-force rigidity needs k <= " + std::to_string(kBruteForceMaxDomain)
                            + ", got k = " + std::to_string(k));
    const PreservationIndex index(rho);
    const Rank count = checked_power(k + 1, k);
    for (Rank c = 0; c < count; ++c) {
        const PartialUnaryFn f = PartialUnaryFn::from_code(Domain{k}, c);
        const bool in_ppol = preserves(PartialFn::from_unary(f), index).preserved;
        if (in_ppol != omega_member(f, ell))
            return false;
    }
    return true;
}

TraceMap::TraceMap(int k, int ell, int arity)
    : tuples_(k, ell), space_(ell, arity), sets_(tuples_.size(), IndexSet(space_.size()))
{
}

void TraceMap::assign(std::size_t idx, IndexSet set)
{
    if (set.size() != space_.size())
        throw MismatchError("index set size does not match the pattern space");
    sets_.at(idx) = std::move(set);
}

bool TraceMap::equivariant() const
{
    const auto perms = all_permutations(ell());
    Tuple y(ell());
    for (std::size_t xi = 0; xi < tuples_.size(); ++xi) {
        const Tuple & x = tuples_[xi];
        for (const auto & pi : perms) {
            for (int j = 0; j < ell(); ++j)
                y[j] = x[pi[j]];
            if (sets_[tuples_.index_of(y)] != space_.act(inverse(pi), sets_[xi]))
                return false;
        }
    }
    return true;
}

bool TraceMap::strict_antichain() const
{
    for (std::size_t a = 0; a < sets_.size(); ++a)
        for (std::size_t b = 0; b < sets_.size(); ++b)
            if (a != b && sets_[a].is_subset_of(sets_[b]))
                return false;
    return true;
}

TraceMap trace(const Relation & rho, int ell)
{
    check_ell(rho, ell);
    TraceMap t(rho.k(), ell, rho.arity());
    const auto & space = t.space();
    for (std::size_t xi = 0; xi < t.tuples().size(); ++xi) {
        IndexSet s = space.empty_set();
        for (std::size_t p = 0; p < space.size(); ++p)
            if (rho.contains(compose(t.tuples()[xi], space.pattern(p))))
                s.set(p);
        t.assign(xi, std::move(s));
    }
    return t;
}

PartialUnaryFn f_arrow(Domain d, std::span<const Element> x, std::span<const Element> y)
{
    if (x.size() != y.size() || x.empty())
        throw InvalidArgument("F_{x->y} needs two nonempty tuples of equal length");
    if (image_size(x) != static_cast<int>(x.size()) || image_size(y) != static_cast<int>(y.size()))
        throw InvalidArgument("F_{x->y} needs injective tuples");
    std::vector<Element> t(d.size(), kUndefined);
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < 0 || x[j] >= d.size() || y[j] < 0 || y[j] >= d.size())
            throw EncodingError("tuple entry outside the domain");
        t[x[j]] = y[j];
    }
    return PartialUnaryFn(d, std::move(t));
}

bool trace_incomparability(const Relation & rho, int ell)
{
    return trace(rho, ell).strict_antichain();
}

} // namespace rigidrel
