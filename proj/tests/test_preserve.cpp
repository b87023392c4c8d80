#include <doctest.h>

#include <algorithm>

#include "rigidrel/preserve.hpp"
#include "rigidrel/rigidity.hpp"
#include "rigidrel/strongrigid.hpp"

using namespace rigidrel;

namespace
{
const Domain k2{2};
const Relation leq = Relation::from_tuples(k2, 2, {{0, 0}, {0, 1}, {1, 1}});
const PartialUnaryFn negation(k2, {1, 0});

template <typename Fn>
void for_all_relations(int k, int h, Fn && fn)
{
    const Domain d{k};
    const Rank bits = checked_power(k, h, 16);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code)
        fn(Relation::from_code(d, h, code));
}
}

TEST_CASE("unary preservation examples")
{
    CHECK(unary_preserves(PartialUnaryFn::constant(k2, 1), leq).preserved);
    const auto v = unary_preserves(negation, leq);
    REQUIRE_FALSE(v.preserved);
    REQUIRE(v.certificate);
    CHECK(v.certificate->column(0) == Tuple{0, 1});
    CHECK(v.certificate->image == Tuple{1, 0});
    CHECK(replay(negation, leq, *v.certificate));

    // Functions below the identity preserve everything.
    for_all_relations(3, 2, [](const Relation & rho) {
        for (Rank code = 0; code < 64; ++code) {
            const auto f = PartialUnaryFn::from_code(Domain{3}, code);
            if (f.below_identity())
                CHECK(unary_preserves(f, rho).preserved);
        }
    });
}

TEST_CASE("general preservation examples")
{
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i < n; ++i)
            for_all_relations(2, 2, [&](const Relation & rho) {
                CHECK(preserves(PartialFn::projection(k2, n, i), rho).preserved);
            });
    for_all_relations(2, 2, [](const Relation & rho) { CHECK(preserves(phi(3), rho).preserved); });
    const auto v = preserves(phi(3), delta(1, 3));
    REQUIRE_FALSE(v.preserved);
    CHECK(replay(phi(3), delta(1, 3), *v.certificate));
    CHECK(v.certificate->image == Tuple{1, 0, 0});
}

TEST_CASE("unary and general preservation agree")
{
    for (int k = 2; k <= 3; ++k)
        for (int h = 1; h <= 3; ++h) {
            if (checked_power(k, h) > 16)
                continue;
            const Rank fns = checked_power(k + 1, k);
            for_all_relations(k, h, [&](const Relation & rho) {
                for (Rank code = 0; code < fns; ++code) {
                    const auto f = PartialUnaryFn::from_code(Domain{k}, code);
                    const auto a = unary_preserves(f, rho);
                    const auto b = preserves(PartialFn::from_unary(f), rho);
                    REQUIRE(a.preserved == b.preserved);
                    if (!a.preserved) {
                        CHECK(replay(f, rho, *a.certificate));
                        CHECK(replay(PartialFn::from_unary(f), rho, *b.certificate));
                        CHECK(a.certificate->column(0) == b.certificate->column(0));
                    }
                }
            });
        }
    // One larger case with k^h > 16: random-ish relation on 3 elements, h = 3.
    Relation rho(Domain{3}, 3);
    for (Rank r = 0; r < 27; r += 2)
        rho.insert_rank((r * 7) % 27);
    for (Rank code = 0; code < 64; ++code) {
        const auto f = PartialUnaryFn::from_code(Domain{3}, code);
        CHECK(unary_preserves(f, rho).preserved == preserves(PartialFn::from_unary(f), rho).preserved);
    }
}

TEST_CASE("general certificates replay")
{
    for (Rank code = 0; code < boolean_partial_fn_count(2); ++code) {
        const PartialFn f = boolean_partial_fn(2, code);
        for_all_relations(2, 2, [&](const Relation & rho) {
            const auto v = preserves(f, rho);
            if (!v.preserved)
                CHECK(replay(f, rho, *v.certificate));
        });
    }
}

TEST_CASE("ppol1 examples")
{
    CHECK(ppol1(Relation::full(k2, 2)).size() == 9);
    CHECK(ppol1(Relation::full(Domain{3}, 1)).size() == 64);
    const auto le = ppol1(leq);
    CHECK(le.size() == 8);
    for (const auto & f : le)
        CHECK(omega_member(f, 2));
    const auto diag = ppol1(Relation::diagonal(k2, 2));
    CHECK(std::find(diag.begin(), diag.end(), negation) != diag.end());
    CHECK_THROWS_AS(ppol1(Relation::full(Domain{8}, 1)), CapacityError);
}

TEST_CASE("ppol1 is closed under restriction")
{
    for (int k = 2; k <= 3; ++k)
        for_all_relations(k, 2, [&](const Relation & rho) {
            const auto fns = ppol1(rho);
            for (const auto & f : fns) {
                const auto dom = f.dom();
                for (unsigned sub = 0; sub < (1u << dom.size()); ++sub) {
                    std::vector<Element> keep;
                    for (std::size_t i = 0; i < dom.size(); ++i)
                        if ((sub >> i) & 1u)
                            keep.push_back(dom[i]);
                    REQUIRE(std::find(fns.begin(), fns.end(), f.restrict_to(keep)) != fns.end());
                }
            }
        });
}

TEST_CASE("some non-projection partial constant always preserves")
{
    for (int k = 2; k <= 3; ++k)
        for (int h = 1; h <= 3; ++h) {
            if (checked_power(k, h) > 16)
                continue;
            for_all_relations(k, h, [&](const Relation & rho) {
                if (rho.empty())
                    return;
                bool found = false;
                for (const auto & f : ppol1(rho))
                    if (f.img_size() == 1 && !f.below_identity())
                        found = true;
                CHECK(found);
            });
        }
}

TEST_CASE("some non-projection partial constant preserves sampled ternary relations on 3 elements")
{
    // 2^27 relations is too many to sweep; sample instead.
    std::uint64_t state = 12345;
    for (int round = 0; round < 3000; ++round) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const std::uint64_t code = (state >> 20) & ((std::uint64_t{1} << 27) - 1);
        if (code == 0)
            continue;
        const Relation rho = Relation::from_code(Domain{3}, 3, code);
        bool found = false;
        for (const auto & f : ppol1(rho))
            if (f.img_size() == 1 && !f.below_identity())
                found = true;
        CHECK(found);
    }
}
