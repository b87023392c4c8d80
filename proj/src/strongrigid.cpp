#include "rigidrel/strongrigid.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>

#include "rigidrel/parallel.hpp"

namespace rigidrel
{

namespace
{
    const Domain kBoolean{2};

    void check_boolean(const PartialFn & f)
    {
        if (f.k() != 2)
            throw InvalidArgument("only partial functions on {0,1} are supported here");
    }

    void check_sweep_cap(int arity_cap)
    {
        if (arity_cap < 1 || arity_cap > kSweepMaxArity)
            throw CapacityError("arity cap must lie in 1.." + std::to_string(kSweepMaxArity) + ", got "
                                + std::to_string(arity_cap));
    }

    struct FamilyIndex
    {
        int h;
        int t;
        PreservationIndex index;
    };

    std::vector<FamilyIndex> family_indexes(int h)
    {
        std::vector<FamilyIndex> out;
        for (int t = 1; t < h; ++t)
            out.push_back(FamilyIndex{h, t, PreservationIndex(delta(t, h))});
        return out;
    }

    bool preserves_all(const PartialFn & f, const std::vector<FamilyIndex> & family)
    {
        return std::all_of(family.begin(), family.end(),
                           [&](const FamilyIndex & d) { return preserves(f, d.index).preserved; });
    }

    // Functions of arity 1..cap, as (arity, code) pairs in sweep order.
    std::vector<std::pair<int, Rank>> sweep_order(int arity_cap)
    {
        std::vector<std::pair<int, Rank>> out;
        for (int n = 1; n <= arity_cap; ++n)
            for (Rank c = 0; c < boolean_partial_fn_count(n); ++c)
                out.emplace_back(n, c);
        return out;
    }

    // Runs `check` over the sweep and returns the least index it rejects.
    template <typename Check>
    std::optional<std::size_t> first_failure(const std::vector<std::pair<int, Rank>> & order, unsigned jobs,
                                             Check && check)
    {
        constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{none};
        run_workers(std::max(1u, jobs), [&](unsigned) {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= order.size() || i > best.load())
                    return;
                if (check(boolean_partial_fn(order[i].first, order[i].second)))
                    continue;
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        });
        if (best.load() == none)
            return std::nullopt;
        return best.load();
    }
}

Tuple v_tuple(int t, int h)
{
    if (h < 2 || t < 1 || t >= h)
        throw InvalidArgument("v_t^h needs 1 <= t < h, got t = " + std::to_string(t) + ", h = "
                              + std::to_string(h));
    Tuple v(h, 0);
    std::fill(v.begin(), v.begin() + t, 1);
    return v;
}

Relation delta(int t, int h)
{
    const Tuple v = v_tuple(t, h);
    Mask m = Relation::full(kBoolean, h).mask();
    m.reset(tuple_rank(v, 2));
    return Relation::from_mask(kBoolean, h, std::move(m));
}

std::vector<Relation> family_F(int h)
{
    if (h < 2)
        throw InvalidArgument("F^(h) needs h >= 2");
    std::vector<Relation> out;
    for (int t = 1; t < h; ++t)
        out.push_back(delta(t, h));
    return out;
}

PartialFn phi(int n)
{
    if (n < 3)
        throw InvalidArgument("phi(n) needs n >= 3, got " + std::to_string(n));
    PartialFn f(kBoolean, n);
    Tuple row(n, 1);
    row[0] = 0;
    f.define(row, 1);
    for (int i = 1; i < n; ++i) {
        Tuple unit(n, 0);
        unit[i] = 1;
        f.define(unit, 0);
    }
    return f;
}

bool phi_preserves_all(int n, int h)
{
    if (h < 1 || h >= n)
        throw InvalidArgument("phi_preserves_all needs 1 <= h < n");
    if (h > kAllRelationsMaxArity)
        throw CapacityError("enumerating all relations needs h <= " + std::to_string(kAllRelationsMaxArity));
    const PartialFn f = phi(n);
    const Rank count = Rank{1} << (Rank{1} << h);
    for (Rank code = 0; code < count; ++code)
        if (!preserves(f, Relation::from_code(kBoolean, h, code)).preserved)
            return false;
    return true;
}

bool preserves_family(const PartialFn & f, int h)
{
    check_boolean(f);
    return preserves_all(f, family_indexes(h));
}

std::string NontrivialityWitness::violated() const
{
    return "delta(" + std::to_string(t) + "," + std::to_string(h) + ")";
}

NontrivialityWitness witness_nontrivial(const PartialFn & f)
{
    check_boolean(f);
    if (is_trivial(f))
        throw NoWitnessError("function is a partial projection or a partial constant; no witness exists");
    NontrivialityWitness w;
    std::vector<Tuple> zeros;
    for (const auto & [args, value] : f.graph()) {
        if (value == 1)
            w.rows.push_back(args);
        else
            zeros.push_back(args);
    }
    w.t = static_cast<int>(w.rows.size());
    w.rows.insert(w.rows.end(), zeros.begin(), zeros.end());
    w.h = static_cast<int>(w.rows.size());
    return w;
}

NontrivialityWitness square_witness(const PartialFn & f)
{
    check_boolean(f);
    if (is_trivial(f))
        throw NoWitnessError("function is a partial projection or a partial constant; no witness exists");
    // Drop rows while the restriction stays nontrivial; one pass reaches a
    // minimal one because nontriviality is inherited by extensions.
    std::vector<Rank> keep = f.dom();
    for (std::size_t i = 0; i < keep.size();) {
        std::vector<Rank> trial = keep;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (!is_trivial(f.restrict_to(trial)))
            keep = std::move(trial);
        else
            ++i;
    }
    const NontrivialityWitness base = witness_nontrivial(f.restrict_to(keep));
    const int half = std::max(base.t, base.h - base.t);

    NontrivialityWitness w;
    w.t = half;
    w.h = 2 * half;
    for (int i = 0; i < base.t; ++i)
        w.rows.push_back(base.rows[i]);
    for (int i = base.t; i < half; ++i)
        w.rows.push_back(base.rows[0]);
    for (int i = base.t; i < base.h; ++i)
        w.rows.push_back(base.rows[i]);
    for (int i = base.h - base.t; i < half; ++i)
        w.rows.push_back(base.rows[base.t]);
    return w;
}

bool replay(const PartialFn & f, const NontrivialityWitness & w)
{
    if (f.k() != 2 || w.h < 2 || w.t < 1 || w.t >= w.h || static_cast<int>(w.rows.size()) != w.h)
        return false;
    Violation v{w.rows, v_tuple(w.t, w.h)};
    return replay(f, delta(w.t, w.h), v);
}

Rank boolean_partial_fn_count(int n)
{
    if (n < 1 || n > 4)
        throw CapacityError("boolean partial function enumeration needs 1 <= n <= 4");
    return checked_power(3, 1 << n);
}

PartialFn boolean_partial_fn(int n, Rank code)
{
    const Rank count = boolean_partial_fn_count(n);
    if (code >= count)
        throw EncodingError("boolean partial function code out of range");
    PartialFn f(kBoolean, n);
    for (Rank r = f.table_size(); r-- > 0;) {
        const auto digit = static_cast<Element>(code % 3);
        code /= 3;
        if (digit > 0)
            f.define_rank(r, digit - 1);
    }
    return f;
}

ChainReport chain_inclusion(int h, int arity_cap, int dom_cap, ScanOptions opts)
{
    if (h < 2)
        throw InvalidArgument("chain inclusion needs h >= 2");
    check_sweep_cap(arity_cap);
    if (dom_cap < 0)
        throw InvalidArgument("domain cap must be nonnegative");
    const auto lower = family_indexes(h);
    const auto upper = family_indexes(h + 1);
    const auto order = sweep_order(arity_cap);

    ChainReport report;
    const auto fail = first_failure(order, opts.jobs, [&](const PartialFn & f) {
        if (static_cast<int>(f.dom_size()) > dom_cap)
            return true;
        return !preserves_all(f, upper) || preserves_all(f, lower);
    });
    for (const auto & [n, code] : order)
        if (static_cast<int>(boolean_partial_fn(n, code).dom_size()) <= dom_cap)
            ++report.functions_checked;
    if (fail)
        report.counterexample = boolean_partial_fn(order[*fail].first, order[*fail].second);

    const PartialFn sep = phi(h + 1);
    report.separator_ok = preserves_all(sep, lower) && !preserves_all(sep, upper);
    report.holds = !fail && report.separator_ok;
    return report;
}

bool romov_identification(int t, int h)
{
    const Relation small = delta(t, h);
    const Relation big = delta(t, h + 1);
    Relation projected(kBoolean, h);
    for (const auto & x : Relation::full(kBoolean, h).tuples()) {
        Tuple ext = x;
        ext.push_back(x.back());
        if (big.contains(ext))
            projected.insert(x);
    }
    return projected == small;
}

LimitReport limit_is_trivial_clone(int arity_cap, ScanOptions opts)
{
    check_sweep_cap(arity_cap);
    const int max_h = 1 << arity_cap;
    std::vector<FamilyIndex> family;
    std::vector<FamilyIndex> squares;
    for (int h = 2; h <= max_h; ++h)
        for (auto & d : family_indexes(h)) {
            if (2 * d.t == d.h)
                squares.push_back(FamilyIndex{d.h, d.t, d.index});
            family.push_back(std::move(d));
        }

    const auto order = sweep_order(arity_cap);
    std::atomic<std::size_t> trivial{0};
    std::atomic<bool> family_ok{true};
    std::atomic<bool> squares_ok{true};

    const auto fail = first_failure(order, opts.jobs, [&](const PartialFn & f) {
        const bool triv = is_trivial(f);
        bool fam = preserves_all(f, family) == triv;
        bool sq = preserves_all(f, squares) == triv;
        if (triv) {
            ++trivial;
        } else {
            const auto w = witness_nontrivial(f);
            fam = fam && w.h <= max_h && replay(f, w);
            const auto s = square_witness(f);
            sq = sq && s.h <= max_h && replay(f, s);
        }
        if (!fam)
            family_ok = false;
        if (!sq)
            squares_ok = false;
        return fam && sq;
    });

    LimitReport report;
    report.functions = order.size();
    report.trivial = trivial.load();
    if (fail) {
        report.counterexample = boolean_partial_fn(order[*fail].first, order[*fail].second);
        // The sweep stopped early; recount the trivial functions in full.
        report.trivial = 0;
        for (const auto & [n, code] : order)
            report.trivial += is_trivial(boolean_partial_fn(n, code)) ? 1 : 0;
    }
    report.family_holds = family_ok.load();
    report.square_family_holds = squares_ok.load();
    report.holds = !fail && report.family_holds && report.square_family_holds;
    return report;
}

bool finite_prefix_escape(int h0)
{
    if (h0 < 2)
        throw InvalidArgument("finite prefix needs h0 >= 2");
    const PartialFn f = phi(h0 + 1);
    if (is_trivial(f))
        return false;
    for (int h = 2; h <= h0; ++h)
        if (!preserves_family(f, h))
            return false;
    const NontrivialityWitness w = witness_nontrivial(f);
    return w.h == h0 + 1 && w.t == 1 && replay(f, w);
}

} // namespace rigidrel
