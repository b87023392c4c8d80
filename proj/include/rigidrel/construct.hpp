#ifndef RIGIDREL_CONSTRUCT_HPP
#define RIGIDREL_CONSTRUCT_HPP

// Exact counts and bounds for hereditarily rigid relations, and the
// middle-layer constructions of hereditarily 2-rigid and l-rigid relations.
// Every constructed relation is checked with the decision procedure before
// it is returned.

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigidrel/kernel.hpp"
#include "rigidrel/patterns.hpp"
#include "rigidrel/rigidity.hpp"

namespace rigidrel
{

using BigInt = boost::multiprecision::cpp_int;

/// Abstract trace assignment; same shape as a relation's trace map.
using AbstractTrace = TraceMap;

/// The size bound of a construction does not hold.
class BoundError : public Error
{
  public:
    using Error::Error;
};

/// A construction could not be completed or did not verify.
class ConstructionError : public Error
{
  public:
    ConstructionError(const std::string & what, std::optional<RigidityReport> report = std::nullopt)
        : Error(what), report_(std::move(report))
    {
    }

    const std::optional<RigidityReport> & report() const noexcept { return report_; }

  private:
    std::optional<RigidityReport> report_;
};

/// C(n, r); zero outside 0 <= r <= n.
BigInt binomial(long n, long r);
/// k (k-1) ... (k-l+1).
BigInt falling_factorial(long k, long ell);
/// s(n, l) = sum_{j=1}^{l} (-1)^{l-j} C(l, j) j^n, the number of surjections [n] -> [l].
BigInt surjection_count(int n, int ell);

/// C(s, floor(s/2)) with s = s(h, l): the largest antichain of trace sets.
BigInt sperner_bound(int ell, int h);
/// k^(l falling) <= C(s, floor(s/2)).
bool sperner_bound_holds(long k, int ell, int h);

/// k (k-1) <= C(2^h - 2, 2^(h-1) - 1).
bool exists_2rigid(long k, int h);
/// Largest k >= 2 with exists_2rigid(k, h), or 0 when there is none.
BigInt max_k_2rigid(int h);

/// C(s - l!, floor((s - l!)/2)), the sufficient size bound for the l >= 3 construction.
BigInt ellrigid_capacity(int ell, int h);
bool ellrigid_bound_holds(long k, int ell, int h);

struct RBounds
{
    BigInt lower;
    BigInt upper;
};

/// The two exact binomials bracketing r(l, h), floor halves throughout.
RBounds r_bounds(int ell, int h);

/// A family of pairwise inclusion-incomparable subsets of a pattern space.
struct IndexAntichain
{
    int ell = 0;
    int h = 0;
    std::vector<IndexSet> members;

    bool is_antichain() const;
};

/// Colex walk through the floor(m/2)-subsets of a ground set minus
/// `forbidden` (m the number of remaining elements). Subsets come back over
/// the full ground set.
class MiddleLayerWalk
{
  public:
    MiddleLayerWalk(std::size_t ground_size, const IndexSet & forbidden);

    std::optional<IndexSet> next();
    BigInt layer_size() const;

  private:
    std::size_t ground_size_;
    std::vector<std::size_t> free_;
    std::vector<std::size_t> combo_;
    bool done_;
};

/// All floor(m/2)-subsets of the space minus `forbidden`, in colex order.
/// An empty remainder gives an empty antichain.
IndexAntichain middle_layer(const PatternSpace & space, const IndexSet & forbidden);

inline constexpr std::size_t kMiddleLayerLimit = std::size_t{1} << 22;

/// X^d: swap the two symbols in every pattern of X (l = 2 only).
IndexSet dual_2(const PatternSpace & space, const IndexSet & x);

/// rho_T: all tuples with fewer than l distinct entries, plus x o i for
/// every x and every i in T(x). Rejects non-equivariant T.
Relation rho_from_trace(const AbstractTrace & t);

AbstractTrace build_2rigid_trace(int k, int h);
AbstractTrace build_ellrigid_trace(int k, int ell, int h);

Relation construct_2rigid(int k, int h, ScanOptions opts = {});
Relation construct_ellrigid(int k, int ell, int h, ScanOptions opts = {});

} // namespace rigidrel

#endif
