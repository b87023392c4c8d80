#ifndef RIGIDREL_PRESERVE_HPP
#define RIGIDREL_PRESERVE_HPP

#include <optional>
#include <vector>

#include "rigidrel/kernel.hpp"

namespace rigidrel
{

/// An h x n matrix whose columns lie in the relation and whose rows lie in
/// dom(f), but whose column of row images does not lie in the relation.
struct Violation
{
    std::vector<Tuple> rows;
    Tuple image;

    /// Column j of the matrix; for a unary function, column 0 is the tuple u.
    Tuple column(int j) const;

    friend bool operator==(const Violation &, const Violation &) = default;
};

struct PreservationVerdict
{
    bool preserved = true;
    std::optional<Violation> certificate;
};

/// Replays a violation through the matrix definition of preservation.
bool replay(const PartialFn & f, const Relation & rho, const Violation & v);
bool replay(const PartialUnaryFn & f, const Relation & rho, const Violation & v);

/// Prefix tables of a relation, for pruning the matrix search: which
/// length-j prefixes extend to a member, and which extend to a non-member.
class PreservationIndex
{
  public:
    explicit PreservationIndex(const Relation & rho);

    int k() const noexcept { return k_; }
    int arity() const noexcept { return h_; }
    bool member_prefix(int len, Rank prefix) const { return members_[len].test(prefix); }
    bool nonmember_prefix(int len, Rank prefix) const { return nonmembers_[len].test(prefix); }

  private:
    int k_;
    int h_;
    std::vector<Mask> members_;
    std::vector<Mask> nonmembers_;
};

/// Support-local unary test: every u in rho with img(u) inside dom(f) maps
/// into rho. The certificate, if any, is the least-rank violating u.
PreservationVerdict unary_preserves(const PartialUnaryFn & f, const Relation & rho);

/// f in pPol(rho), by depth-first search over the rows of a candidate
/// matrix in increasing rank order. The certificate is the lexicographically
/// least violating row sequence.
PreservationVerdict preserves(const PartialFn & f, const Relation & rho);
PreservationVerdict preserves(const PartialFn & f, const PreservationIndex & index);

/// pPol^(1)(rho), in increasing PartialUnaryFn::from_code order. Needs k <= 7.
std::vector<PartialUnaryFn> ppol1(const Relation & rho);

inline constexpr int kPpol1MaxDomain = 7;

} // namespace rigidrel

#endif
