#include <doctest.h>

#include "rigidrel/strongrigid.hpp"

using namespace rigidrel;

namespace
{
const Domain k2{2};
}

TEST_CASE("delta relations")
{
    CHECK(delta(1, 2) == Relation::from_tuples(k2, 2, {{0, 0}, {0, 1}, {1, 1}}));
    const Relation d24 = delta(2, 4);
    CHECK(d24.size() == 15);
    CHECK_FALSE(d24.contains(Tuple{1, 1, 0, 0}));
    const auto f3 = family_F(3);
    REQUIRE(f3.size() == 2);
    CHECK_FALSE(f3[0].contains(Tuple{1, 0, 0}));
    CHECK_FALSE(f3[1].contains(Tuple{1, 1, 0}));
    for (int h = 2; h <= 6; ++h)
        for (int t = 1; t < h; ++t) {
            const Relation d = delta(t, h);
            CHECK(d.size() == (std::size_t{1} << h) - 1);
            CHECK(d.contains(Tuple(h, 0)));
            CHECK(d.contains(Tuple(h, 1)));
            CHECK_FALSE(d.contains(v_tuple(t, h)));
        }
    CHECK_THROWS_AS(delta(2, 2), InvalidArgument);
    CHECK_THROWS_AS(delta(0, 3), InvalidArgument);
}

TEST_CASE("phi")
{
    const PartialFn p = phi(3);
    CHECK(p.dom_size() == 3);
    CHECK(p(Tuple{0, 1, 1}) == 1);
    CHECK(p(Tuple{0, 1, 0}) == 0);
    CHECK(p(Tuple{0, 0, 1}) == 0);
    for (int n = 3; n <= 5; ++n) {
        const PartialFn f = phi(n);
        CHECK_FALSE(is_trivial(f));
        const auto dom = f.dom();
        for (std::size_t drop = 0; drop < dom.size(); ++drop) {
            std::vector<Rank> keep = dom;
            keep.erase(keep.begin() + static_cast<long>(drop));
            CHECK(is_partial_projection(f.restrict_to(keep)));
        }
    }
    CHECK_THROWS_AS(phi(2), InvalidArgument);
}

TEST_CASE("phi preserves every relation of smaller arity")
{
    CHECK(phi_preserves_all(3, 2));
    CHECK(phi_preserves_all(4, 3));
    CHECK(phi_preserves_all(4, 1));
    CHECK_FALSE(preserves(phi(3), delta(1, 3)).preserved);
    CHECK_FALSE(preserves(phi(4), delta(1, 4)).preserved);
    for (int n = 3; n <= 5; ++n)
        for (int h = 2; h < n; ++h)
            for (int t = 1; t < h; ++t)
                CHECK(preserves(phi(n), delta(t, h)).preserved);
    CHECK_THROWS_AS(phi_preserves_all(6, 5), CapacityError);
}

TEST_CASE("nontriviality witnesses")
{
    const PartialFn neg = PartialFn::from_unary(PartialUnaryFn(k2, {1, 0}));
    const auto w = witness_nontrivial(neg);
    CHECK(w.h == 2);
    CHECK(w.t == 1);
    CHECK(w.rows == std::vector<Tuple>{{0}, {1}});
    CHECK(w.violated() == "delta(1,2)");
    CHECK(replay(neg, w));

    const PartialFn x = PartialFn::from_graph(k2, 2, {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 0}});
    const auto wx = witness_nontrivial(x);
    CHECK(wx.h == 4);
    CHECK(wx.t == 2);
    CHECK(replay(x, wx));

    const auto wp = witness_nontrivial(phi(3));
    CHECK(wp.h == 3);
    CHECK(wp.t == 1);
    CHECK(replay(phi(3), wp));

    CHECK_THROWS_AS(witness_nontrivial(PartialFn::projection(k2, 2, 0)), NoWitnessError);
    // A witness for the wrong function does not replay.
    CHECK_FALSE(replay(PartialFn::projection(k2, 2, 0), wx));
}

TEST_CASE("witnesses replay for every nontrivial function of arity <= 3")
{
    for (int n = 1; n <= 3; ++n)
        for (Rank code = 0; code < boolean_partial_fn_count(n); ++code) {
            const PartialFn f = boolean_partial_fn(n, code);
            if (is_trivial(f))
                continue;
            const auto w = witness_nontrivial(f);
            REQUIRE(replay(f, w));
            CHECK(w.h == static_cast<int>(f.dom_size()));
            const auto s = square_witness(f);
            CHECK(s.h == 2 * s.t);
            REQUIRE(replay(f, s));
        }
}

TEST_CASE("trivial functions preserve every delta")
{
    for (int n = 1; n <= 3; ++n)
        for (Rank code = 0; code < boolean_partial_fn_count(n); ++code) {
            const PartialFn f = boolean_partial_fn(n, code);
            if (!is_trivial(f))
                continue;
            for (int h = 2; h <= 4; ++h)
                CHECK(preserves_family(f, h));
        }
}

TEST_CASE("boolean partial function enumeration")
{
    CHECK(boolean_partial_fn_count(1) == 9);
    CHECK(boolean_partial_fn_count(2) == 81);
    CHECK(boolean_partial_fn_count(3) == 6561);
    CHECK(boolean_partial_fn(1, 0).dom_size() == 0);
    // Rank 0 is the most significant digit: code 1 defines f(1) = 0.
    const PartialFn f = boolean_partial_fn(1, 1);
    CHECK(f.dom() == std::vector<Rank>{1});
    CHECK(f.at(1) == 0);
    CHECK(boolean_partial_fn(1, 5) == PartialFn::from_unary(PartialUnaryFn(k2, {0, 1})));
    CHECK_THROWS_AS(boolean_partial_fn(1, 9), EncodingError);
}

TEST_CASE("descending chain")
{
    const auto r2 = chain_inclusion(2, 2, 4);
    CHECK(r2.holds);
    CHECK(r2.separator_ok);
    CHECK(r2.functions_checked == 90);
    const auto r3 = chain_inclusion(3, 3, 8, ScanOptions{2});
    CHECK(r3.holds);
    CHECK(r3.functions_checked == 6651);
    CHECK(chain_inclusion(2, 3, 8).holds);
    CHECK_THROWS_AS(chain_inclusion(2, 4, 16), CapacityError);
    for (int h = 3; h <= 5; ++h)
        for (int t = 2; t < h; ++t)
            CHECK(romov_identification(t, h));
}

TEST_CASE("limit is the trivial functions")
{
    const auto r2 = limit_is_trivial_clone(2);
    CHECK(r2.holds);
    CHECK(r2.functions == 90);
    const auto r3 = limit_is_trivial_clone(3, ScanOptions{2});
    CHECK(r3.holds);
    CHECK(r3.family_holds);
    CHECK(r3.square_family_holds);
    CHECK(r3.functions == 6651);
    CHECK_FALSE(r3.counterexample);
    for (int h0 = 2; h0 <= 4; ++h0)
        CHECK(finite_prefix_escape(h0));
}
