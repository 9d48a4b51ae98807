#include "excov/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

namespace excov::exact {

using std::uint64_t;

namespace {

struct Solver {
    const CoverInstance& inst;
    std::vector<uint64_t> uncovered;
    std::vector<char> alive;      // candidate not yet excluded on this path
    std::vector<char> packed;     // scratch for the packing bound
    std::vector<int> chosen, best_sol;
    std::vector<int> pack_order;  // targets by ascending static candidate count
    int best = std::numeric_limits<int>::max();
    long long nodes = 0;

    explicit Solver(const CoverInstance& i) : inst(i) {
        const int nt = static_cast<int>(inst.targets.size());
        uncovered.assign(static_cast<size_t>(inst.words), 0);
        for (int tg = 0; tg < nt; ++tg)
            uncovered[static_cast<size_t>(tg >> 6)] |= uint64_t{1} << (tg & 63);
        alive.assign(inst.candidates.size(), 1);
        pack_order.resize(static_cast<size_t>(nt));
        std::iota(pack_order.begin(), pack_order.end(), 0);
        std::stable_sort(pack_order.begin(), pack_order.end(), [&](int a, int b) {
            return inst.target_cands[static_cast<size_t>(a)].size() <
                   inst.target_cands[static_cast<size_t>(b)].size();
        });
    }

    bool is_uncovered(int tg) const {
        return (uncovered[static_cast<size_t>(tg >> 6)] >> (tg & 63)) & 1;
    }

    void apply(int c, std::vector<int>& undo) {
        const auto& cov = inst.cand_cover[static_cast<size_t>(c)];
        for (int w = 0; w < inst.words; ++w) {
            uint64_t newly = uncovered[static_cast<size_t>(w)] & cov[static_cast<size_t>(w)];
            while (newly) {
                undo.push_back(w * 64 + std::countr_zero(newly));
                newly &= newly - 1;
            }
            uncovered[static_cast<size_t>(w)] &= ~cov[static_cast<size_t>(w)];
        }
    }

    void unapply(const std::vector<int>& undo) {
        for (int tg : undo) uncovered[static_cast<size_t>(tg >> 6)] |= uint64_t{1} << (tg & 63);
    }

    // Greedy max-coverage incumbent to seed the upper bound.
    void greedy() {
        std::vector<uint64_t> unc = uncovered;
        std::vector<int> sol;
        const int nc = static_cast<int>(inst.candidates.size());
        auto covered_count = [&](int c) {
            int k = 0;
            for (int w = 0; w < inst.words; ++w)
                k += std::popcount(unc[static_cast<size_t>(w)] &
                                   inst.cand_cover[static_cast<size_t>(c)][static_cast<size_t>(w)]);
            return k;
        };
        for (;;) {
            bool any = false;
            for (int w = 0; w < inst.words && !any; ++w) any = unc[static_cast<size_t>(w)] != 0;
            if (!any) break;
            int bc = -1, bk = -1;
            for (int c = 0; c < nc; ++c) {
                int k = covered_count(c);
                if (k > bk) {
                    bk = k;
                    bc = c;
                }
            }
            if (bk <= 0) return;  // uncoverable target: leave incumbent at infinity
            sol.push_back(bc);
            for (int w = 0; w < inst.words; ++w)
                unc[static_cast<size_t>(w)] &=
                    ~inst.cand_cover[static_cast<size_t>(bc)][static_cast<size_t>(w)];
        }
        if (static_cast<int>(sol.size()) < best) {
            best = static_cast<int>(sol.size());
            best_sol = sol;
        }
    }

    // Max of per-family counting bounds and a greedy disjoint-target packing
    // (targets whose live candidate sets are pairwise disjoint each force a
    // distinct block).  Returns INT_MAX when some target has no live cover.
    int lower_bound() {
        std::vector<int> fam_uncovered(static_cast<size_t>(inst.n_families), 0);
        for (int w = 0; w < inst.words; ++w) {
            uint64_t rem = uncovered[static_cast<size_t>(w)];
            while (rem) {
                int tg = w * 64 + std::countr_zero(rem);
                rem &= rem - 1;
                ++fam_uncovered[static_cast<size_t>(inst.target_family[static_cast<size_t>(tg)])];
            }
        }
        int lb = 0;
        for (int f = 0; f < inst.n_families; ++f)
            if (fam_uncovered[static_cast<size_t>(f)] > 0) {
                int mc = inst.family_maxcover[static_cast<size_t>(f)];
                lb = std::max(lb, (fam_uncovered[static_cast<size_t>(f)] + mc - 1) / mc);
            }
        packed.assign(inst.candidates.size(), 0);
        int pack = 0;
        for (int tg : pack_order) {
            if (!is_uncovered(tg)) continue;
            const auto& cands = inst.target_cands[static_cast<size_t>(tg)];
            bool disjoint = true;
            int live = 0;
            for (int c : cands)
                if (alive[static_cast<size_t>(c)]) {
                    ++live;
                    if (packed[static_cast<size_t>(c)]) {
                        disjoint = false;
                        break;
                    }
                }
            if (live == 0) return std::numeric_limits<int>::max();
            if (!disjoint) continue;
            for (int c : cands)
                if (alive[static_cast<size_t>(c)]) packed[static_cast<size_t>(c)] = 1;
            ++pack;
        }
        return std::max(lb, pack);
    }

    void dfs(int depth) {
        ++nodes;
        bool any = false;
        for (int w = 0; w < inst.words && !any; ++w) any = uncovered[static_cast<size_t>(w)] != 0;
        if (!any) {
            if (depth < best) {
                best = depth;
                best_sol = chosen;
            }
            return;
        }
        if (depth + 1 >= best) return;
        int lb = lower_bound();
        if (lb == std::numeric_limits<int>::max() || depth + lb >= best) return;

        // Most-constrained uncovered target, lexicographically first on ties.
        int branch_tg = -1, branch_cnt = std::numeric_limits<int>::max();
        for (int w = 0; w < inst.words && branch_cnt > 1; ++w) {
            uint64_t rem = uncovered[static_cast<size_t>(w)];
            while (rem) {
                int tg = w * 64 + std::countr_zero(rem);
                rem &= rem - 1;
                int k = 0;
                for (int c : inst.target_cands[static_cast<size_t>(tg)])
                    k += alive[static_cast<size_t>(c)];
                if (k < branch_cnt) {
                    branch_cnt = k;
                    branch_tg = tg;
                    if (k <= 1) break;
                }
            }
        }
        if (branch_tg < 0 || branch_cnt == 0) return;

        std::vector<int> killed;
        for (int c : inst.target_cands[static_cast<size_t>(branch_tg)]) {
            if (!alive[static_cast<size_t>(c)]) continue;
            std::vector<int> undo;
            chosen.push_back(c);
            apply(c, undo);
            dfs(depth + 1);
            unapply(undo);
            chosen.pop_back();
            // Candidate exhausted: later branches must cover branch_tg differently.
            alive[static_cast<size_t>(c)] = 0;
            killed.push_back(c);
        }
        for (int c : killed) alive[static_cast<size_t>(c)] = 1;
    }
};

std::vector<setsys::Block> subsets(int n, int k) {
    std::vector<setsys::Block> out;
    setsys::SubsetEnum en(n, k);
    setsys::Block b;
    while (en.next(b)) out.push_back(b);
    return out;
}

ExactResult run(const CoverInstance& inst, const SolveOptions& opts, int n, int block_size,
                setsys::Kind kind, int s) {
    CoverSolution sol = solve_cover(inst, opts);
    ExactResult res;
    res.value = sol.optimum;
    res.nodes = sol.nodes;
    res.witness.n = n;
    res.witness.t = block_size;
    res.witness.s = s;
    res.witness.kind = kind;
    for (int c : sol.chosen) res.witness.blocks.push_back(inst.candidates[static_cast<size_t>(c)]);
    res.witness.canonicalize();
    return res;
}

}  // namespace

CoverSolution solve_cover(const CoverInstance& inst, const SolveOptions& opts) {
    if (inst.incidence_bits() > opts.budget_bits && !opts.override_budget)
        throw budget_error("solve_cover: instance needs " + std::to_string(inst.incidence_bits()) +
                           " incidence bits, budget is " + std::to_string(opts.budget_bits) +
                           " (pass the override to proceed)");
    Solver s(inst);
    s.greedy();
    if (inst.canonical_first && !inst.candidates.empty()) {
        // Some optimum contains the lexicographically first candidate by
        // symmetry, so fix it at the root.
        std::vector<int> undo;
        s.chosen.push_back(0);
        s.apply(0, undo);
        s.dfs(1);
    } else {
        s.dfs(0);
    }
    if (s.best == std::numeric_limits<int>::max())
        throw std::runtime_error("solve_cover: instance is infeasible (uncoverable target)");
    return {s.best, s.best_sol, s.nodes};
}

CoverInstance se_instance(int n, int t) {
    if (!(0 <= t && t < n)) throw std::invalid_argument("se_instance: need 0 <= t < n");
    CoverInstance inst;
    inst.candidates = subsets(n, t);
    for (int i = 1; i <= t + 1; ++i) {
        for (auto& b : subsets(n, i)) {
            inst.targets.push_back(b);
            inst.target_family.push_back(i - 1);
        }
    }
    inst.n_families = t + 1;
    inst.canonical_first = true;
    inst.build_incidence([](const setsys::Block& a, const setsys::Block& x) {
        return setsys::covers(a, x);
    });
    return inst;
}

CoverInstance turan_instance(int n, int s, int t) {
    if (!(0 < t && t <= s && s <= n))
        throw std::invalid_argument("turan_instance: need 0 < t <= s <= n");
    CoverInstance inst;
    inst.candidates = subsets(n, t);
    inst.targets = subsets(n, s);
    inst.canonical_first = true;
    inst.build_incidence([](const setsys::Block& a, const setsys::Block& x) {
        return setsys::is_subset(a, x);
    });
    return inst;
}

CoverInstance covering_instance(int n, int s, int t) {
    if (!(0 <= t && t <= s && s <= n))
        throw std::invalid_argument("covering_instance: need 0 <= t <= s <= n");
    CoverInstance inst;
    inst.candidates = subsets(n, s);
    inst.targets = subsets(n, t);
    inst.canonical_first = true;
    inst.build_incidence([](const setsys::Block& a, const setsys::Block& x) {
        return setsys::is_subset(x, a);
    });
    return inst;
}

ExactResult min_se(int n, int t, const SolveOptions& opts) {
    return run(se_instance(n, t), opts, n, t, setsys::Kind::se, 0);
}

ExactResult min_turan(int n, int s, int t, const SolveOptions& opts) {
    return run(turan_instance(n, s, t), opts, n, t, setsys::Kind::turan, s);
}

ExactResult min_covering(int n, int s, int t, const SolveOptions& opts) {
    return run(covering_instance(n, s, t), opts, n, s, setsys::Kind::covering, t);
}

bool verify_theorem12(int n, const SolveOptions& opts) {
    return min_se(n, 3, opts).value == min_turan(n, 4, 3, opts).value;
}

}  // namespace excov::exact
