#pragma once

// Explicit block-family constructions: the two partition-based SE-system
// constructions, the modular-residue covering design, the recursive SE
// construction built on it, and the randomized construction with greedy
// patching.  Every output is meant to pass the setsys verifiers.

#include <cstdint>
#include <vector>

#include "excov/setsys.hpp"

namespace excov::cons {

/// Partition of {1..n} into l bins of consecutive indices, sizes as equal
/// as possible with the larger bins first: bins 0..(n mod l)-1 have size
/// ceil(n/l), the rest floor(n/l).
struct PartitionScheme {
    int n = 0, l = 0;
    std::vector<std::vector<int>> bins;  ///< bins[i] = ascending members of N_i
    std::vector<int> bin_of;             ///< 1-based element -> bin index

    std::vector<setsys::Block> bin_masks() const;
};

PartitionScheme partition_bins(int n, int l);

/// Per-block bin statistics: weight w(X) = sum_i i*|X intersect N_i|,
/// e(X) = number of bins X misses entirely, f(X) = number of bins inside X.
struct BinStats {
    long w = 0;
    int e = 0;
    int f = 0;
};

BinStats bin_stats(const PartitionScheme& ps, const setsys::Block& x);

/// Weighted-partition SE construction: B_j = Z union B~_j over [N]^t, where
/// Z = {X : exists m with X disjoint from N_m and N_{m-1} (index mod l) not
/// inside X} and B~_j = {X : w(X) = j (mod l)}.  Valid SE system for
/// l >= n/(n-t-2); a Turan (n,t+1,t) system for every l.
/// Requires 0 < t < n-2, ceil(n/(n-t-2)) <= l <= n, 0 <= j < l.
setsys::SetSystem construct_weighted_partition(int n, int t, int l, int j,
                                               long long budget = 100'000'000);

/// Bin-parity SE construction: B_j = F union B~_j with
/// B~_j = {X : (w(X)+j) mod l <= max(e(X), f(X))} and F built from every
/// index set I whose bin sizes sum past t and each ordered pair (i,j') of
/// distinct members of I with sum_{m in I, m != j'}|N_m| <= t: all elements
/// of bins I\{i,j'}, the smallest |N_i|-1 elements of N_i, and the smallest
/// t+1-sum_{m in I, m != j'}|N_m| elements of N_{j'}.  The (i,j') condition
/// is exactly well-formedness of that t-set; it keeps |F| within the same
/// counting bound as restricting to set-wise minimal I while also covering
/// every union of full bins (which minimal-I filtering can miss).
/// Valid SE system for every l >= 1.  Requires 0 < t < n, 1 <= l <= n,
/// 0 <= j < l.
setsys::SetSystem construct_bin_parity(int n, int t, int l, int j,
                                       long long budget = 100'000'000);

/// Modular-residue (n,k,k-1) covering design: blocks Q_i = {X in [N]^k :
/// sum of members = i (mod n)} for the best residue i (fewest
/// |Q_i| + |C_i|, ties to the smallest i), plus one completion
/// X union {smallest element not in X} for each (k-1)-subset X no block
/// contains.  Block count <= (1/k)C(n,k-1) + ((k-1)/k)C(n-1,k-2).
setsys::SetSystem construct_kuzjurin(int n, int k, long long budget = 100'000'000);

/// Recursive SE construction: starting from the single-empty-block system
/// on n-t elements, each level n' adjoins element n' to every block and
/// adds the Turan (n'-1, t'+1, t') system obtained by complementing
/// construct_kuzjurin(n'-1, n-t-1).  Requires 0 < t < n-1.
setsys::SetSystem construct_recurrent_se(int n, int t, long long budget = 100'000'000);

/// Randomized SE construction: phase 1 includes each t-subset independently
/// with probability p (mt19937_64 seeded stream, one draw per subset in
/// lexicographic order); phase 2 scans i-subsets, i = 1..t+1, in
/// lexicographic order and adds the lexicographically first covering
/// t-subset for each uncovered one.  Always a valid SE system.
setsys::SetSystem construct_random_greedy(int n, int t, double p, std::uint64_t seed,
                                          long long budget = 100'000'000);

}  // namespace excov::cons
