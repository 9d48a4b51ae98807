#pragma once

// Blocks (subsets of {1..n}, n <= 512) as fixed-width bitsets, set systems
// with a declared kind, the exhaustive verifiers (single-exclusion / Turan /
// covering), complementation duality, and block-file I/O.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "excov/combinat.hpp"

namespace excov::setsys {

constexpr int kMaxGround = 512;
constexpr int kWords = kMaxGround / 64;

/// A subset of {1, ..., kMaxGround}; element i lives at bit i-1.
struct Block {
    std::array<std::uint64_t, kWords> w{};

    bool contains(int i) const { return (w[(i - 1) >> 6] >> ((i - 1) & 63)) & 1u; }
    void insert(int i) { w[(i - 1) >> 6] |= std::uint64_t{1} << ((i - 1) & 63); }
    void erase(int i) { w[(i - 1) >> 6] &= ~(std::uint64_t{1} << ((i - 1) & 63)); }

    int size() const;
    bool empty() const;
    std::vector<int> members() const;

    friend bool operator==(const Block& a, const Block& b) { return a.w == b.w; }
};

Block block_of(const std::vector<int>& members);

/// Member-sequence lexicographic order ({1,4} < {2,3}; a proper prefix
/// precedes its extensions).  This is the canonical block order and the
/// order in which verifier witnesses are minimal.
bool lex_less(const Block& a, const Block& b);

/// True iff a is a subset of b.
bool is_subset(const Block& a, const Block& b);

/// Single-exclusion cover predicate: block a covers target x iff exactly one
/// element of x lies outside a (|x \ a| = 1).  Containment (|x \ a| = 0)
/// does NOT count as covering.
bool covers(const Block& a, const Block& x);

/// {1..n} \ a.
Block complement_block(const Block& a, int n);

/// Enumerates the k-subsets of {1..n} in lexicographic order.
class SubsetEnum {
  public:
    SubsetEnum(int n, int k);
    bool next(Block& out);  ///< false once exhausted

  private:
    int n_, k_;
    bool first_ = true, done_ = false;
    std::vector<int> mem_;
};

/// What a system claims to be.  `se` and `turan` have blocks of size t;
/// `covering` has blocks of size t that must contain every s-subset
/// (s < t there); `plain` makes no claim.
enum class Kind { se, turan, covering, plain };

std::string kind_name(Kind k);

/// A finite family of distinct blocks over {1..n}.  t is the uniform block
/// size; s is the Turan super-set size or the covering target size (unused
/// for se/plain).
struct SetSystem {
    int n = 0;
    int t = 0;
    int s = 0;
    Kind kind = Kind::plain;
    std::vector<Block> blocks;

    /// Sorts blocks lexicographically and removes duplicates.
    void canonicalize();
};

/// Verifier outcome: ok, or the lexicographically first violating subset.
struct VerifyResult {
    bool ok = true;
    std::optional<Block> witness;
};

/// True iff every i-subset, 1 <= i <= t+1, is covered (|x \ a| = 1 for some
/// block a).  Exhaustive: enumerates sum_{i<=t+1} C(n,i) targets; throws
/// budget_error when that exceeds `budget`.
VerifyResult is_se_system(const SetSystem& sys, long long budget = 100'000'000);

/// True iff every s-subset of {1..n} contains at least one block.
VerifyResult is_turan_system(const SetSystem& sys, int s, long long budget = 100'000'000);

/// True iff every subset of size `target_size` is contained in some block.
VerifyResult is_covering_design(const SetSystem& sys, int target_size,
                                long long budget = 100'000'000);

/// Complementation duality behind T(n,s,t) = C(n,n-t,n-s): every block maps
/// to its complement; turan(s) with block size t becomes covering with block
/// size n-t and target size n-s, and vice versa.  An SE system maps to the
/// covering design implied by its Turan(t+1) property; plain stays plain.
SetSystem complement_system(const SetSystem& sys);

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Block file: line 1 = "n t m", then m lines of t ascending space-separated
/// 1-based members (an empty line when t = 0); '#' starts a comment line.
/// Malformed headers, out-of-range or repeated members, duplicate blocks and
/// block-count mismatches raise parse_error with the offending line number.
/// read_blocks returns kind plain; callers assert the kind they expect.
SetSystem read_blocks(std::istream& in);
SetSystem read_blocks_file(const std::string& path);
void write_blocks(std::ostream& out, const SetSystem& sys);
void write_blocks_file(const std::string& path, const SetSystem& sys);

}  // namespace excov::setsys
