#ifndef RIGIDREL_RIGIDITY_HPP
#define RIGIDREL_RIGIDITY_HPP

// Hereditary l-rigidity: a relation rho is hereditarily l-rigid when its
// unary partial polymorphisms are exactly Omega_<l(k), the partial functions
// below the identity together with those of image size < l.

#include <optional>
#include <string>
#include <vector>

#include "rigidrel/kernel.hpp"
#include "rigidrel/patterns.hpp"

namespace rigidrel
{

/// Membership in Omega_<l(k): f <= id or |img f| < l.
bool omega_member(const PartialUnaryFn & f, int ell);

/// Psi_l(k): injective unary partial functions with |dom| = l that are not
/// below the identity. Domains come in lexicographic subset order, and for
/// each domain the value tuples in lexicographic order.
std::vector<PartialUnaryFn> enumerate_psi(int k, int ell);

enum class FailingSide
{
    none,
    /// Some member of Omega_<l(k) does not preserve rho.
    omega_containment,
    /// Some member of Psi_l(k) preserves rho.
    psi_exclusion,
};

std::string to_string(FailingSide side);

struct RigidityReport
{
    bool rigid = false;
    std::optional<PartialUnaryFn> failing_function;
    FailingSide failing_side = FailingSide::none;
    /// For an Omega failure: the member u with g o u outside rho.
    std::optional<Tuple> witness_tuple;
    std::string note;
};

struct ScanOptions
{
    unsigned jobs = 1;
};

/// Omega_<l(k) contained in pPol^(1)(rho), checked support-locally: for every
/// u in rho and every map g on img(u) with |img g| < l, g o u is in rho.
RigidityReport omega_contained(const Relation & rho, int ell);

/// The first member of Psi_l(k) (in enumerate_psi order) preserving rho.
std::optional<PartialUnaryFn> first_preserving_psi(const Relation & rho, int ell,
                                                   ScanOptions opts = {});

/// rho with Orb_<l(rho) adjoined: every image g o u of a member u with fewer
/// than l distinct entries, for every map g defined on img(u).
Relation orbit_closure(const Relation & rho, int ell);

/// The fast decision procedure: Omega containment first, then the Psi_l scan.
RigidityReport is_hereditarily_ell_rigid(const Relation & rho, int ell, ScanOptions opts = {});

/// Checks a negative report: the failing function either lies in Omega and
/// fails to preserve rho, or lies outside Omega and preserves it.
bool replay(const Relation & rho, int ell, const RigidityReport & report);

/// Definition-level oracle: computes pPol^(1)(rho) with the general matrix
/// engine and compares it with Omega_<l(k) as sets. Needs k <= 5.
bool brute_force_rigidity(const Relation & rho, int ell);

inline constexpr int kBruteForceMaxDomain = 5;

/// T_rho^l: for each injective l-tuple x, the set of surjective index
/// patterns i with x o i in rho. Also serves as an abstract trace assignment.
class TraceMap
{
  public:
    TraceMap(int k, int ell, int arity);

    int k() const noexcept { return tuples_.k(); }
    int ell() const noexcept { return tuples_.ell(); }
    int arity() const noexcept { return space_.arity(); }

    const InjectiveTuples & tuples() const noexcept { return tuples_; }
    const PatternSpace & space() const noexcept { return space_; }

    const IndexSet & operator[](std::size_t idx) const { return sets_[idx]; }
    const IndexSet & at(std::span<const Element> x) const { return sets_[tuples_.index_of(x)]; }
    void assign(std::size_t idx, IndexSet set);

    /// T(x o pi) = pi^-1 T(x) for all x and all permutations pi of {0..l-1}.
    bool equivariant() const;
    /// T(x) is not contained in T(y) for all x != y (this also forces
    /// x -> T(x) to be injective).
    bool strict_antichain() const;

    friend bool operator==(const TraceMap & a, const TraceMap & b)
    {
        return a.k() == b.k() && a.ell() == b.ell() && a.arity() == b.arity() && a.sets_ == b.sets_;
    }

  private:
    InjectiveTuples tuples_;
    PatternSpace space_;
    std::vector<IndexSet> sets_;
};

TraceMap trace(const Relation & rho, int ell);

/// F_{x->y} = y o x^-1: domain img(x), x_j -> y_j.
PartialUnaryFn f_arrow(Domain d, std::span<const Element> x, std::span<const Element> y);

bool trace_incomparability(const Relation & rho, int ell);

} // namespace rigidrel

#endif
