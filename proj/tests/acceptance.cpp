// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rigidrel/cli.hpp"
#include "rigidrel/construct.hpp"
#include "rigidrel/rigidity.hpp"
#include "rigidrel/strongrigid.hpp"

using namespace rigidrel;

namespace
{
unsigned g_jobs = 1;

struct Outcome
{
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string & what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

template <typename Fn>
void for_all_relations(int k, int h, Fn && fn)
{
    const Domain d{k};
    const Rank bits = checked_power(k, h, 16);
    for (std::uint64_t code = 1; code < (std::uint64_t{1} << bits); ++code)
        fn(Relation::from_code(d, h, code));
}

Outcome max_k_table()
{
    Outcome o;
    const long expected[] = {0, 2, 5, 59, 12455};
    std::string got;
    for (int h = 1; h <= 5; ++h) {
        const BigInt m = max_k_2rigid(h);
        got += (h > 1 ? "," : "") + m.str();
        o.require(m == expected[h - 1], "h=" + std::to_string(h) + " gave " + m.str());
    }
    if (o.ok)
        o.detail = got;
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    std::size_t checked = 0;
    for (const auto & [k, h] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}})
        for (int l = 1; l <= k; ++l)
            for_all_relations(k, h, [&](const Relation & rho) {
                ++checked;
                const bool fast = is_hereditarily_ell_rigid(rho, l).rigid;
                o.require(fast == brute_force_rigidity(rho, l),
                          "disagreement at k=" + std::to_string(k) + " h=" + std::to_string(h) + " l="
                              + std::to_string(l) + " code=" + std::to_string(rho.code()));
            });
    if (o.ok)
        o.detail = std::to_string(checked) + " (relation, l) pairs agree";
    return o;
}

std::size_t rigid_count(int k, int h, int l)
{
    std::size_t n = 0;
    for (const auto & r : classify(ClassifyOptions{k, h, l, g_jobs, 1, false}))
        n += r.verdict ? 1 : 0;
    return n;
}

Outcome census()
{
    Outcome o;
    const auto a = rigid_count(2, 2, 2);
    const auto b = rigid_count(2, 2, 1);
    const auto c = rigid_count(2, 1, 2);
    o.require(a == 2, "k=2 h=2 l=2 gave " + std::to_string(a));
    o.require(b == 0, "k=2 h=2 l=1 gave " + std::to_string(b));
    o.require(c == 0, "k=2 h=1 l=2 gave " + std::to_string(c));
    const Relation leq = Relation::from_tuples(Domain{2}, 2, {{0, 0}, {0, 1}, {1, 1}});
    const Relation geq = Relation::from_tuples(Domain{2}, 2, {{0, 0}, {1, 0}, {1, 1}});
    o.require(is_hereditarily_ell_rigid(leq, 2).rigid && is_hereditarily_ell_rigid(geq, 2).rigid,
              "the linear orders are not both rigid");
    if (o.ok)
        o.detail = "2 / 0 / 0 rigid";
    return o;
}

Outcome construction_2()
{
    Outcome o;
    const ScanOptions opts{g_jobs};
    const Relation le = construct_2rigid(2, 2, opts);
    o.require(le == Relation::from_tuples(Domain{2}, 2, {{0, 0}, {0, 1}, {1, 1}}), "(2,2) is not {00,01,11}");
    for (const auto & [k, h] : std::vector<std::pair<int, int>>{{2, 2}, {5, 3}, {10, 4}}) {
        const Relation rho = construct_2rigid(k, h, opts);
        o.require(is_hereditarily_ell_rigid(rho, 2, opts).rigid,
                  "(" + std::to_string(k) + "," + std::to_string(h) + ") does not verify");
    }
    const auto start = std::chrono::steady_clock::now();
    const Relation big = construct_2rigid(59, 4, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(is_hereditarily_ell_rigid(big, 2, opts).rigid, "(59,4) does not verify");
    o.require(secs < 600.0, "(59,4) took " + std::to_string(secs) + " s");
    if (o.ok) {
        std::ostringstream s;
        s << "(59,4): " << big.size() << " tuples, built and verified in " << secs << " s";
        o.detail = s.str();
    }
    return o;
}

Outcome construction_l()
{
    Outcome o;
    const Relation rho = construct_ellrigid(4, 3, 4, ScanOptions{g_jobs});
    o.require(is_hereditarily_ell_rigid(rho, 3).rigid, "(4,3,4) does not verify");
    o.require(brute_force_rigidity(rho, 3), "(4,3,4) fails the definition-level check");
    if (o.ok)
        o.detail = std::to_string(rho.size()) + " tuples, hereditarily 3-rigid";
    return o;
}

Outcome traces()
{
    Outcome o;
    std::size_t rigid = 0;
    std::size_t converse = 0;
    for (int k = 2; k <= 3; ++k)
        for_all_relations(k, 2, [&](const Relation & rho) {
            const bool r = is_hereditarily_ell_rigid(rho, 2).rigid;
            const bool inc = trace_incomparability(rho, 2);
            const bool omega = omega_contained(rho, 2).rigid;
            if (r) {
                ++rigid;
                o.require(inc, "rigid but traces comparable, code=" + std::to_string(rho.code()));
            }
            if (omega && inc) {
                ++converse;
                o.require(r, "incomparable traces but not rigid, code=" + std::to_string(rho.code()));
            }
        });
    if (o.ok)
        o.detail = std::to_string(rigid) + " rigid, " + std::to_string(converse) + " omega+antichain";
    return o;
}

Outcome equivariance()
{
    Outcome o;
    std::mt19937 gen(20240607);
    std::bernoulli_distribution coin(0.5);
    for (int round = 0; round < 1000; ++round) {
        const int l = 2 + static_cast<int>(gen() % 2);
        const int h = l + static_cast<int>(gen() % static_cast<unsigned>(5 - l));
        Relation rho(Domain{3}, h);
        for (Rank r = 0; r < rho.tuple_count(); ++r)
            if (coin(gen))
                rho.insert_rank(r);
        if (rho.empty())
            rho.insert_rank(0);
        const TraceMap t = trace(rho, l);
        const auto perms = all_permutations(l);
        const Tuple & x = t.tuples()[gen() % t.tuples().size()];
        const Permutation & pi = perms[gen() % perms.size()];
        Tuple xp(l);
        for (int j = 0; j < l; ++j)
            xp[j] = x[pi[j]];
        for (std::size_t i = 0; i < t.space().size(); ++i) {
            // i in T(x o pi) iff pi o i in T(x), read straight off the relation.
            const bool lhs = rho.contains(compose(xp, t.space().pattern(i)));
            const bool rhs = t.at(x).test(t.space().act(pi, i));
            o.require(lhs == rhs, "round " + std::to_string(round));
            o.require(t.at(xp).test(i) == lhs, "trace map disagrees, round " + std::to_string(round));
        }
    }
    if (o.ok)
        o.detail = "1000 triples";
    return o;
}

Outcome phi_checks()
{
    Outcome o;
    for (int n = 3; n <= 4; ++n) {
        const std::string tag = "phi(" + std::to_string(n) + ")";
        o.require(!is_trivial(phi(n)), tag + " is trivial");
        for (int h = 1; h < n; ++h)
            o.require(phi_preserves_all(n, h), tag + " misses an arity-" + std::to_string(h) + " relation");
        o.require(!preserves(phi(n), delta(1, n)).preserved, tag + " preserves delta(1," + std::to_string(n) + ")");
    }
    if (o.ok)
        o.detail = "n = 3, 4";
    return o;
}

Outcome chain()
{
    Outcome o;
    for (int h = 2; h <= 3; ++h) {
        const ChainReport r = chain_inclusion(h, 3, 8, ScanOptions{g_jobs});
        o.require(r.holds, "inclusion fails at h=" + std::to_string(h));
        o.require(r.separator_ok, "phi(" + std::to_string(h + 1) + ") does not separate");
    }
    for (int h = 3; h <= 5; ++h)
        for (int t = 2; t < h; ++t)
            o.require(romov_identification(t, h), "identification fails at t=" + std::to_string(t)
                                                      + " h=" + std::to_string(h));
    if (o.ok)
        o.detail = "h = 2, 3 with separators phi(3), phi(4)";
    return o;
}

Outcome limit()
{
    Outcome o;
    const LimitReport r = limit_is_trivial_clone(3, ScanOptions{g_jobs});
    o.require(r.functions == 6651, "swept " + std::to_string(r.functions) + " functions");
    o.require(r.family_holds, "family equivalence fails");
    o.require(r.square_family_holds, "square sub-family equivalence fails");
    o.require(r.holds, "limit check fails");
    for (int h0 = 2; h0 <= 4; ++h0)
        o.require(finite_prefix_escape(h0), "prefix escape fails at h0=" + std::to_string(h0));
    if (o.ok)
        o.detail = std::to_string(r.functions) + " functions, " + std::to_string(r.trivial) + " trivial";
    return o;
}

Outcome combinatorics()
{
    Outcome o;
    for (int l = 1; l <= 4; ++l)
        for (int n = 1; n <= 7; ++n) {
            // Count surjections by brute force over all l^n maps.
            const Rank total = checked_power(l, n);
            std::size_t count = 0;
            for (Rank r = 0; r < total; ++r)
                count += image_size(tuple_unrank(r, n, std::max(l, 2))) == l ? 1 : 0;
            o.require(surjection_count(n, l) == count,
                      "s(" + std::to_string(n) + "," + std::to_string(l) + ") mismatch");
            o.require(BigInt(PatternSpace(l, n).size()) == count, "pattern space size mismatch");
        }
    for (int h = 1; h <= 6; ++h)
        o.require(surjection_count(h, 2) == (BigInt(1) << h) - 2, "s(h,2) != 2^h-2 at h=" + std::to_string(h));
    if (o.ok)
        o.detail = "l <= 4, n <= 7";
    return o;
}

Outcome determinism()
{
    Outcome o;
    std::string outs[2];
    const unsigned jobs[2] = {1, 4};
    for (int i = 0; i < 2; ++i) {
        const std::vector<std::string> args{"classify", "--k", "2", "--h", "3", "--ell", "2", "--jobs",
                                            std::to_string(jobs[i])};
        std::ostringstream out;
        std::ostringstream err;
        o.require(run_cli(args, out, err) == kExitHolds, "classify failed");
        outs[i] = out.str() + err.str();
    }
    o.require(outs[0] == outs[1], "outputs differ");
    o.require(!outs[0].empty(), "empty output");
    if (o.ok)
        o.detail = std::to_string(outs[0].size()) + " bytes identical";
    return o;
}
}

int main(int argc, char ** argv)
{
    CLI::App app{"Acceptance criteria"};
    app.add_option("--jobs", g_jobs, "Worker threads for the parallel scans");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"max-k table", max_k_table},
        {"oracle equivalence", oracle_equivalence},
        {"census counts", census},
        {"2-rigid construction", construction_2},
        {"l-rigid construction", construction_l},
        {"trace antichain", traces},
        {"trace equivariance", equivariance},
        {"phi separators", phi_checks},
        {"descending chain", chain},
        {"limit clone", limit},
        {"surjection counts", combinatorics},
        {"classify determinism", determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        }
        catch (const std::exception & e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.ok ? 0 : 1;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " ("
                  << o.detail << ") [" << secs << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
