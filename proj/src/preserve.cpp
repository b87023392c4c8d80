#include "rigidrel/preserve.hpp"

#include <string>

namespace rigidrel
{

namespace
{
    void check_same_domain(int fk, const Relation & rho)
    {
        if (fk != rho.k())
            throw MismatchError("function on a " + std::to_string(fk) + "-element set vs relation on a "
                                + std::to_string(rho.k()) + "-element set");
    }

    Violation unary_violation(const PartialUnaryFn & f, const Tuple & u)
    {
        Violation v;
        v.rows.reserve(u.size());
        v.image.reserve(u.size());
        for (auto x : u) {
            v.rows.push_back(Tuple{x});
            v.image.push_back(f(x));
        }
        return v;
    }

    // Tuples over `dom` in increasing rank order; fn(u, rank) returns false to stop.
    template <typename Fn>
    void for_each_cube_tuple(const std::vector<Element> & dom, int h, int k, Fn && fn)
    {
        const int d = static_cast<int>(dom.size());
        if (d == 0)
            return;
        std::vector<int> digits(h, 0);
        Tuple u(h, dom[0]);
        while (true) {
            if (!fn(u, tuple_rank(u, k)))
                return;
            int i = h - 1;
            for (; i >= 0; --i) {
                if (++digits[i] < d) {
                    u[i] = dom[digits[i]];
                    break;
                }
                digits[i] = 0;
                u[i] = dom[0];
            }
            if (i < 0)
                return;
        }
    }
}

Tuple Violation::column(int j) const
{
    Tuple c;
    c.reserve(rows.size());
    for (const auto & r : rows)
        c.push_back(r.at(j));
    return c;
}

bool replay(const PartialFn & f, const Relation & rho, const Violation & v)
{
    if (f.k() != rho.k() || static_cast<int>(v.rows.size()) != rho.arity())
        return false;
    Tuple image;
    for (const auto & row : v.rows) {
        if (static_cast<int>(row.size()) != f.arity())
            return false;
        const Element y = f(row);
        if (y == kUndefined)
            return false;
        image.push_back(y);
    }
    for (int j = 0; j < f.arity(); ++j)
        if (!rho.contains(v.column(j)))
            return false;
    return image == v.image && !rho.contains(image);
}

bool replay(const PartialUnaryFn & f, const Relation & rho, const Violation & v)
{
    return replay(PartialFn::from_unary(f), rho, v);
}

PreservationIndex::PreservationIndex(const Relation & rho) : k_(rho.k()), h_(rho.arity())
{
    members_.resize(h_ + 1);
    nonmembers_.resize(h_ + 1);
    Rank width = 1;
    std::vector<Rank> widths(h_ + 1);
    for (int len = 0; len <= h_; ++len) {
        widths[len] = width;
        members_[len].resize(width);
        nonmembers_[len].resize(width);
        width *= static_cast<Rank>(k_);
    }
    members_[h_] = rho.mask();
    nonmembers_[h_] = ~rho.mask();
    for (int len = h_ - 1; len >= 0; --len) {
        const Rank kk = static_cast<Rank>(k_);
        for (Rank p = 0; p < widths[len]; ++p) {
            bool m = false;
            bool nm = false;
            for (Rank c = 0; c < kk && !(m && nm); ++c) {
                m = m || members_[len + 1].test(p * kk + c);
                nm = nm || nonmembers_[len + 1].test(p * kk + c);
            }
            members_[len][p] = m;
            nonmembers_[len][p] = nm;
        }
    }
}

PreservationVerdict unary_preserves(const PartialUnaryFn & f, const Relation & rho)
{
    check_same_domain(f.k(), rho);
    const int k = rho.k();
    const int h = rho.arity();
    const std::vector<Element> dom = f.dom();
    PreservationVerdict verdict;
    if (dom.empty() || rho.empty())
        return verdict;

    auto check = [&](const Tuple & u) {
        Rank img = 0;
        for (auto x : u)
            img = img * static_cast<Rank>(k) + static_cast<Rank>(f(x));
        if (rho.contains_rank(img))
            return true;
        verdict.preserved = false;
        verdict.certificate = unary_violation(f, u);
        return false;
    };

    // Enumerate dom(f)^h when it is small next to k^h, else scan the members.
    Rank cube = 1;
    bool cube_small = true;
    for (int i = 0; i < h && cube_small; ++i) {
        cube *= dom.size();
        cube_small = cube <= rho.tuple_count() / 16 + 1;
    }
    if (cube_small) {
        for_each_cube_tuple(dom, h, k, [&](const Tuple & u, Rank r) {
            return !rho.contains_rank(r) || check(u);
        });
    } else {
        const Mask & m = rho.mask();
        for (auto r = m.find_first(); r != Mask::npos; r = m.find_next(r)) {
            const Tuple u = tuple_unrank(r, h, k);
            bool inside = true;
            for (auto x : u)
                inside = inside && f.defined(x);
            if (inside && !check(u))
                break;
        }
    }
    return verdict;
}

PreservationVerdict preserves(const PartialFn & f, const Relation & rho)
{
    check_same_domain(f.k(), rho);
    return preserves(f, PreservationIndex(rho));
}

PreservationVerdict preserves(const PartialFn & f, const PreservationIndex & index)
{
    if (f.k() != index.k())
        throw MismatchError("function and relation live on different domains");
    const int k = index.k();
    const int h = index.arity();
    const int n = f.arity();
    const Rank kk = static_cast<Rank>(k);

    const std::vector<Rank> dom = f.dom();
    std::vector<Tuple> rows;
    rows.reserve(dom.size());
    for (auto r : dom)
        rows.push_back(tuple_unrank(r, n, k));

    PreservationVerdict verdict;
    if (dom.empty())
        return verdict;

    // cols[i][j]: rank of the length-i prefix of column j; out[i]: image prefix.
    std::vector<std::vector<Rank>> cols(h + 1, std::vector<Rank>(n, 0));
    std::vector<Rank> out(h + 1, 0);
    std::vector<std::size_t> choice(h, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == h) {
            Violation v;
            for (int i = 0; i < h; ++i) {
                v.rows.push_back(rows[choice[i]]);
                v.image.push_back(f.at(dom[choice[i]]));
            }
            verdict.preserved = false;
            verdict.certificate = std::move(v);
            return verdict;
        }
        bool advanced = false;
        for (; choice[depth] < rows.size(); ++choice[depth]) {
            const std::size_t c = choice[depth];
            const Rank o = out[depth] * kk + static_cast<Rank>(f.at(dom[c]));
            if (!index.nonmember_prefix(depth + 1, o))
                continue;
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                const Rank p = cols[depth][j] * kk + static_cast<Rank>(rows[c][j]);
                ok = index.member_prefix(depth + 1, p);
                cols[depth + 1][j] = p;
            }
            if (!ok)
                continue;
            out[depth + 1] = o;
            advanced = true;
            break;
        }
        if (advanced) {
            ++depth;
            if (depth < h)
                choice[depth] = 0;
        } else {
            --depth;
            if (depth >= 0)
                ++choice[depth];
        }
    }
    return verdict;
}

std::vector<PartialUnaryFn> ppol1(const Relation & rho)
{
    const int k = rho.k();
    if (k > kPpol1MaxDomain)
        throw CapacityError("ppol1 enumerates (k+1)^k functions and needs k <= "
                            + std::to_string(kPpol1MaxDomain) + ", got k = " + std::to_string(k));
    const Rank count = checked_power(k + 1, k);
    std::vector<PartialUnaryFn> out;
    for (Rank c = 0; c < count; ++c) {
        PartialUnaryFn f = PartialUnaryFn::from_code(Domain{k}, c);
        if (unary_preserves(f, rho).preserved)
            out.push_back(std::move(f));
    }
    return out;
}

} // namespace rigidrel
