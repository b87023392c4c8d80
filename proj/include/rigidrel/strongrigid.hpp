#ifndef RIGIDREL_STRONGRIGID_HPP
#define RIGIDREL_STRONGRIGID_HPP

// The two-element family Delta_t^h = {0,1}^h minus (1^t 0^(h-t)), the
// families F^(h) = {Delta_1^h, ..., Delta_{h-1}^h}, the separating functions
// phi_n, and exhaustive checks that the descending chain pPol(F^(h)) ends at
// the trivial partial functions.

#include <optional>
#include <string>
#include <vector>

#include "rigidrel/kernel.hpp"
#include "rigidrel/preserve.hpp"
#include "rigidrel/rigidity.hpp"

namespace rigidrel
{

/// (1,...,1,0,...,0) with t ones.
Tuple v_tuple(int t, int h);
Relation delta(int t, int h);
/// {Delta_1^h, ..., Delta_{h-1}^h}.
std::vector<Relation> family_F(int h);

/// The n-ary partial function on {0,1} with domain (0,1,1,...,1) -> 1 and
/// the unit rows (0,..,1,..,0), 1 in positions 1..n-1, -> 0.
PartialFn phi(int n);

/// preserves(phi(n), rho) for every h-ary relation rho on {0,1}. Needs h <= 4.
bool phi_preserves_all(int n, int h);
inline constexpr int kAllRelationsMaxArity = 4;

/// f in pPol(F^(h)), by direct preservation checks.
bool preserves_family(const PartialFn & f, int h);

/// Raised when a witness is requested for a trivial function.
class NoWitnessError : public Error
{
  public:
    using Error::Error;
};

/// Rows of dom(f) ordered so that f maps them to v_t^h, which certifies
/// f outside pPol(Delta_t^h).
struct NontrivialityWitness
{
    int h = 0;
    int t = 0;
    std::vector<Tuple> rows;

    /// "delta(t,h)".
    std::string violated() const;
};

NontrivialityWitness witness_nontrivial(const PartialFn & f);

/// A witness against some Delta_n^{2n}: the witness of a minimal nontrivial
/// restriction, with one-rows and zero-rows duplicated to equal counts.
NontrivialityWitness square_witness(const PartialFn & f);

/// Replays the witness through the general matrix definition.
bool replay(const PartialFn & f, const NontrivialityWitness & w);

/// The partial function on {0,1} with arity n and enumeration code `code`:
/// base-3 digits over argument ranks (rank 0 most significant), 0 meaning
/// undefined and d > 0 meaning value d - 1.
PartialFn boolean_partial_fn(int n, Rank code);
/// 3^(2^n).
Rank boolean_partial_fn_count(int n);

inline constexpr int kSweepMaxArity = 3;

struct ChainReport
{
    bool holds = false;
    std::size_t functions_checked = 0;
    std::optional<PartialFn> counterexample;
    /// phi(h+1) in pPol(F^(h)) but not in pPol(F^(h+1)).
    bool separator_ok = false;
};

/// For every partial f on {0,1} with arity <= arity_cap and |dom f| <= dom_cap:
/// f in pPol(F^(h+1)) implies f in pPol(F^(h)); plus the strict separator.
ChainReport chain_inclusion(int h, int arity_cap, int dom_cap, ScanOptions opts = {});

/// Delta_t^h = {x : (x_1, ..., x_h, x_h) in Delta_t^(h+1)}.
bool romov_identification(int t, int h);

struct LimitReport
{
    bool holds = false;
    std::size_t functions = 0;
    std::size_t trivial = 0;
    /// is_trivial(f) agrees with membership in every pPol(F^(h)), h <= 2^cap,
    /// and every nontrivial f has a replaying ones-then-zeros witness.
    bool family_holds = false;
    /// Same for the sub-family {Delta_n^{2n} : 2n <= 2^cap}.
    bool square_family_holds = false;
    std::optional<PartialFn> counterexample;
};

LimitReport limit_is_trivial_clone(int arity_cap, ScanOptions opts = {});

/// phi(h0+1) is nontrivial, lies in pPol(F^(h)) for every 2 <= h <= h0, and
/// its witness against Delta_1^(h0+1) replays.
bool finite_prefix_escape(int h0);

} // namespace rigidrel

#endif
