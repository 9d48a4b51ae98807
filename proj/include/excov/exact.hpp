#pragma once

// Exhaustive branch-and-bound minimum set cover over explicit incidence,
// specialized into exact S(n,t), T(n,s,t) and C(n,s,t) solvers on tiny
// instances.  This module is the ground-truth oracle for everything else:
// it never consults bounds or constructions.

#include <cstdint>
#include <vector>

#include "excov/setsys.hpp"

namespace excov::exact {

/// An explicit covering problem: pick the fewest candidates so that every
/// target is incident to at least one picked candidate.
struct CoverInstance {
    std::vector<setsys::Block> candidates;
    std::vector<setsys::Block> targets;

    int words = 0;                                        ///< u64 words per target bitset
    std::vector<std::vector<std::uint64_t>> cand_cover;   ///< candidate -> targets covered
    std::vector<std::vector<int>> target_cands;           ///< target -> covering candidates
    std::vector<int> target_family;                       ///< family id per target
    std::vector<int> family_maxcover;                     ///< max targets one candidate covers, per family
    int n_families = 0;

    /// Safe only when the instance is symmetric under relabeling candidates
    /// of equal role (e.g. all t-subsets under S_n): some optimal solution
    /// then contains candidate 0, so the root may fix it.
    bool canonical_first = false;

    /// Populates incidence from `incident(candidate, target)`; candidates
    /// and targets must be set, and targets grouped into `n_families`
    /// contiguous families via target_family (single family if empty).
    template <class Pred>
    void build_incidence(Pred incident) {
        const int nt = static_cast<int>(targets.size());
        const int nc = static_cast<int>(candidates.size());
        if (target_family.empty()) {
            target_family.assign(static_cast<size_t>(nt), 0);
            n_families = 1;
        }
        words = (nt + 63) / 64;
        cand_cover.assign(static_cast<size_t>(nc),
                          std::vector<std::uint64_t>(static_cast<size_t>(words), 0));
        target_cands.assign(static_cast<size_t>(nt), {});
        family_maxcover.assign(static_cast<size_t>(n_families), 1);
        std::vector<int> fam_count(static_cast<size_t>(n_families));
        for (int c = 0; c < nc; ++c) {
            fam_count.assign(fam_count.size(), 0);
            for (int tg = 0; tg < nt; ++tg)
                if (incident(candidates[static_cast<size_t>(c)], targets[static_cast<size_t>(tg)])) {
                    cand_cover[static_cast<size_t>(c)][static_cast<size_t>(tg >> 6)] |=
                        std::uint64_t{1} << (tg & 63);
                    target_cands[static_cast<size_t>(tg)].push_back(c);
                    ++fam_count[static_cast<size_t>(target_family[static_cast<size_t>(tg)])];
                }
            for (int f = 0; f < n_families; ++f)
                if (fam_count[static_cast<size_t>(f)] > family_maxcover[static_cast<size_t>(f)])
                    family_maxcover[static_cast<size_t>(f)] = fam_count[static_cast<size_t>(f)];
        }
    }

    long long incidence_bits() const {
        return static_cast<long long>(candidates.size()) * static_cast<long long>(targets.size());
    }
};

struct SolveOptions {
    long long budget_bits = 1'000'000;  ///< refuse larger incidence unless overridden
    bool override_budget = false;
};

/// Optimal cover: chosen candidate indices (lexicographic by construction
/// order within the deterministic branching), node count for diagnostics.
struct CoverSolution {
    int optimum = 0;
    std::vector<int> chosen;
    long long nodes = 0;
};

/// Exact branch and bound.  Branches on the uncovered target with the
/// fewest live covering candidates (tie: lexicographically first target);
/// children exclude previously tried candidates.  Lower bound is the max of
/// per-family ceil(uncovered/maxcover) and a greedy disjoint-target packing.
/// Deterministic.  Throws budget_error on oversize instances.
CoverSolution solve_cover(const CoverInstance& inst, const SolveOptions& opts = {});

/// Exact result plus a verified-shape witness system.
struct ExactResult {
    ExactInt value;
    setsys::SetSystem witness;
    long long nodes = 0;
};

/// Builds the SE covering instance: candidates = all t-subsets, targets =
/// all i-subsets for i = 1..t+1 (one family per size), incidence = covers.
CoverInstance se_instance(int n, int t);

/// Turan instance: candidates = t-subsets, targets = s-subsets, incidence =
/// candidate contained in target.
CoverInstance turan_instance(int n, int s, int t);

/// Covering-design instance: candidates = s-subsets (blocks), targets =
/// t-subsets, incidence = target contained in candidate.
CoverInstance covering_instance(int n, int s, int t);

/// S(n,t) with witness.  Practical domain: small n (budget-guarded).
ExactResult min_se(int n, int t, const SolveOptions& opts = {});

/// T(n,s,t) with witness.
ExactResult min_turan(int n, int s, int t, const SolveOptions& opts = {});

/// C(n,s,t) with witness (blocks of size s containing every t-subset).
ExactResult min_covering(int n, int s, int t, const SolveOptions& opts = {});

/// Direct check that S(n,3) = T(n,4,3), feasible for n in {6,7,8}.
bool verify_theorem12(int n, const SolveOptions& opts = {});

}  // namespace excov::exact
