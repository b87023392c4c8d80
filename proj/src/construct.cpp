#include "rigidrel/construct.hpp"

#include <algorithm>
#include <set>

namespace rigidrel
{

namespace
{
    std::string str(const BigInt & v) { return v.str(); }

    BigInt factorial(int n)
    {
        BigInt f = 1;
        for (int i = 2; i <= n; ++i)
            f *= i;
        return f;
    }

    long surjections_small(int h, int ell)
    {
        const BigInt s = surjection_count(h, ell);
        if (s > BigInt(1) << 20)
            throw CapacityError("s(" + std::to_string(h) + ", " + std::to_string(ell) + ") = " + str(s)
                                + " is too large to handle");
        return s.convert_to<long>();
    }

    void require_valid_trace(const AbstractTrace & t, const char * what)
    {
        if (!t.equivariant())
            throw ConstructionError(std::string(what) + ": trace assignment is not equivariant");
        if (!t.strict_antichain())
            throw ConstructionError(std::string(what) + ": trace sets are not pairwise incomparable");
    }

    Relation verified(Relation rho, int ell, ScanOptions opts, const char * what)
    {
        RigidityReport report = is_hereditarily_ell_rigid(rho, ell, opts);
        if (!report.rigid)
            throw ConstructionError(std::string(what) + ": constructed relation failed verification",
                                    std::move(report));
        return rho;
    }
}

BigInt binomial(long n, long r)
{
    if (n < 0 || r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    BigInt c = 1;
    for (long i = 1; i <= r; ++i) {
        c *= n - r + i;
        c /= i;
    }
    return c;
}

BigInt falling_factorial(long k, long ell)
{
    BigInt f = 1;
    for (long i = 0; i < ell; ++i)
        f *= k - i;
    return f;
}

BigInt surjection_count(int n, int ell)
{
    BigInt sum = 0;
    for (int j = 1; j <= ell; ++j) {
        BigInt term = binomial(ell, j) * boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(n));
        if ((ell - j) % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

BigInt sperner_bound(int ell, int h)
{
    const long sl = surjections_small(h, ell);
    return binomial(sl, sl / 2);
}

bool sperner_bound_holds(long k, int ell, int h)
{
    if (ell < 1 || ell > k)
        throw InvalidArgument("sperner bound needs 1 <= l <= k");
    return falling_factorial(k, ell) <= sperner_bound(ell, h);
}

bool exists_2rigid(long k, int h)
{
    if (h < 1 || k < 2)
        throw InvalidArgument("exists_2rigid needs h >= 1 and k >= 2");
    const long s = (1L << h) - 2;
    return BigInt(k) * (k - 1) <= binomial(s, (1L << (h - 1)) - 1);
}

BigInt max_k_2rigid(int h)
{
    if (h < 1 || h > 62)
        throw InvalidArgument("max_k_2rigid needs 1 <= h <= 62");
    const long s = (1L << h) - 2;
    const BigInt cap = binomial(s, (1L << (h - 1)) - 1);
    if (cap < 2)
        return 0;
    // Largest k with k (k-1) <= cap.
    BigInt lo = 2;
    BigInt hi = boost::multiprecision::sqrt(cap) + 2;
    while (lo < hi) {
        const BigInt mid = (lo + hi + 1) / 2;
        if (mid * (mid - 1) <= cap)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

BigInt ellrigid_capacity(int ell, int h)
{
    const BigInt m = BigInt(surjections_small(h, ell)) - factorial(ell);
    if (m < 0)
        return 0;
    const long ml = m.convert_to<long>();
    return binomial(ml, ml / 2);
}

bool ellrigid_bound_holds(long k, int ell, int h)
{
    if (ell < 1 || ell > k)
        throw InvalidArgument("bound needs 1 <= l <= k");
    return falling_factorial(k, ell) <= ellrigid_capacity(ell, h);
}

RBounds r_bounds(int ell, int h)
{
    if (ell < 2 || ell >= h)
        throw InvalidArgument("r bounds need 2 <= l < h");
    return RBounds{ellrigid_capacity(ell, h), sperner_bound(ell, h)};
}

bool IndexAntichain::is_antichain() const
{
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < members.size(); ++b)
            if (a != b && members[a].is_subset_of(members[b]))
                return false;
    return true;
}

MiddleLayerWalk::MiddleLayerWalk(std::size_t ground_size, const IndexSet & forbidden)
    : ground_size_(ground_size), done_(false)
{
    if (forbidden.size() != ground_size)
        throw MismatchError("forbidden set does not match the ground set");
    for (std::size_t i = 0; i < ground_size; ++i)
        if (!forbidden.test(i))
            free_.push_back(i);
    combo_.resize(free_.size() / 2);
    for (std::size_t j = 0; j < combo_.size(); ++j)
        combo_[j] = j;
    done_ = free_.empty();
}

std::optional<IndexSet> MiddleLayerWalk::next()
{
    if (done_)
        return std::nullopt;
    IndexSet out(ground_size_);
    for (auto j : combo_)
        out.set(free_[j]);

    // Colex successor: bump the lowest element that has room, reset the rest.
    const std::size_t r = combo_.size();
    const std::size_t m = free_.size();
    std::size_t j = 0;
    while (j < r && combo_[j] + 1 >= (j + 1 < r ? combo_[j + 1] : m))
        ++j;
    if (j == r) {
        done_ = true;
    } else {
        ++combo_[j];
        for (std::size_t i = 0; i < j; ++i)
            combo_[i] = i;
    }
    return out;
}

BigInt MiddleLayerWalk::layer_size() const
{
    const long m = static_cast<long>(free_.size());
    return m == 0 ? BigInt(0) : binomial(m, m / 2);
}

IndexAntichain middle_layer(const PatternSpace & space, const IndexSet & forbidden)
{
    MiddleLayerWalk walk(space.size(), forbidden);
    if (walk.layer_size() > kMiddleLayerLimit)
        throw CapacityError("middle layer has " + str(walk.layer_size()) + " members, above the limit of "
                            + std::to_string(kMiddleLayerLimit));
    IndexAntichain out{space.ell(), space.arity(), {}};
    while (auto x = walk.next())
        out.members.push_back(std::move(*x));
    return out;
}

IndexSet dual_2(const PatternSpace & space, const IndexSet & x)
{
    if (space.ell() != 2)
        throw InvalidArgument("duality is defined for l = 2 only");
    return space.act(Permutation{1, 0}, x);
}

Relation rho_from_trace(const AbstractTrace & t)
{
    if (!t.equivariant())
        throw InvalidArgument("trace assignment is not equivariant");
    const int k = t.k();
    const int h = t.arity();
    const int ell = t.ell();
    Relation rho(Domain{k}, h);

    // Tuples with fewer than l distinct entries.
    std::vector<Element> u(h, 0);
    Rank r = 0;
    do {
        int distinct = 0;
        for (int i = 0; i < h && distinct < ell; ++i) {
            bool seen = false;
            for (int j = 0; j < i && !seen; ++j)
                seen = u[j] == u[i];
            distinct += seen ? 0 : 1;
        }
        if (distinct < ell)
            rho.insert_rank(r);
        ++r;
        int i = h - 1;
        for (; i >= 0; --i) {
            if (++u[i] < k)
                break;
            u[i] = 0;
        }
        if (i < 0)
            break;
    } while (true);

    const auto & space = t.space();
    for (std::size_t xi = 0; xi < t.tuples().size(); ++xi) {
        const IndexSet & s = t[xi];
        for (auto p = s.find_first(); p != IndexSet::npos; p = s.find_next(p))
            rho.insert(compose(t.tuples()[xi], space.pattern(p)));
    }
    return rho;
}

AbstractTrace build_2rigid_trace(int k, int h)
{
    if (h < 2)
        throw BoundError("a hereditarily 2-rigid relation needs arity h >= 2");
    if (!exists_2rigid(k, h))
        throw BoundError("k(k-1) = " + str(BigInt(k) * (k - 1)) + " exceeds C(2^h-2, 2^(h-1)-1) = "
                         + str(binomial((1L << h) - 2, (1L << (h - 1)) - 1)));
    surjections_small(h, 2);
    AbstractTrace t(k, 2, h);
    const auto & space = t.space();
    MiddleLayerWalk walk(space.size(), space.empty_set());
    std::set<IndexSet> used;
    for (Element a = 0; a < k; ++a)
        for (Element b = a + 1; b < k; ++b) {
            std::optional<IndexSet> x;
            IndexSet xd;
            while ((x = walk.next())) {
                if (used.count(*x))
                    continue;
                xd = dual_2(space, *x);
                if (used.count(xd))
                    continue;
                break;
            }
            if (!x)
                throw ConstructionError("middle layer exhausted before every pair was assigned");
            used.insert(*x);
            used.insert(xd);
            const Tuple ab{a, b};
            const Tuple ba{b, a};
            t.assign(t.tuples().index_of(ab), std::move(*x));
            t.assign(t.tuples().index_of(ba), std::move(xd));
        }
    require_valid_trace(t, "2-rigid construction");
    return t;
}

AbstractTrace build_ellrigid_trace(int k, int ell, int h)
{
    if (ell < 3)
        throw InvalidArgument("the l >= 3 construction needs l >= 3; use the 2-rigid construction");
    if (ell >= h)
        throw BoundError("the l >= 3 construction needs l < h, got l = " + std::to_string(ell)
                         + ", h = " + std::to_string(h));
    if (ell > k)
        throw InvalidArgument("l must not exceed k");
    if (!ellrigid_bound_holds(k, ell, h))
        throw BoundError("k^(l falling) = " + str(falling_factorial(k, ell))
                         + " exceeds C(s(h,l)-l!, (s(h,l)-l!)/2) = " + str(ellrigid_capacity(ell, h)));
    surjections_small(h, ell);

    AbstractTrace t(k, ell, h);
    const auto & space = t.space();
    const auto perms = all_permutations(ell);
    const std::size_t orbit_size = perms.size();

    // y: the least pattern; its orbit Y is free since y is surjective.
    constexpr std::size_t y = 0;
    IndexSet orbit_y = space.empty_set();
    for (const auto & pi : perms)
        orbit_y.set(space.act(pi, y));
    if (orbit_y.count() != orbit_size)
        throw ConstructionError("orbit of the reserved pattern is not free");

    MiddleLayerWalk walk(space.size(), orbit_y);
    std::set<IndexSet> used;
    for (const auto & subset : subsets_of_size(k, ell)) {
        std::optional<IndexSet> x;
        while ((x = walk.next())) {
            // Skip members with a nontrivial stabilizer or an orbit already in use.
            std::set<IndexSet> orbit;
            for (const auto & pi : perms)
                orbit.insert(space.act(pi, *x));
            if (orbit.size() != orbit_size || used.count(*orbit.begin()))
                continue;
            used.insert(*orbit.begin());
            break;
        }
        if (!x)
            throw ConstructionError("middle layer ran out of free orbits");

        Tuple xs(ell);
        for (const auto & pi : perms) {
            for (int j = 0; j < ell; ++j)
                xs[j] = subset[pi[j]];
            const Permutation inv = inverse(pi);
            IndexSet s = space.act(inv, *x);
            s.set(space.act(inv, y));
            t.assign(t.tuples().index_of(xs), std::move(s));
        }
    }
    require_valid_trace(t, "l-rigid construction");
    return t;
}

Relation construct_2rigid(int k, int h, ScanOptions opts)
{
    return verified(rho_from_trace(build_2rigid_trace(k, h)), 2, opts, "2-rigid construction");
}

Relation construct_ellrigid(int k, int ell, int h, ScanOptions opts)
{
    return verified(rho_from_trace(build_ellrigid_trace(k, ell, h)), ell, opts, "l-rigid construction");
}

} // namespace rigidrel
