#include "excov/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace excov::cons {

using setsys::Block;
using setsys::SetSystem;
using setsys::SubsetEnum;

namespace {

void check_enum_budget(const char* who, int n, int t, long long budget) {
    if (combinat::binomial(n, t) > ExactInt(static_cast<long>(budget)))
        throw budget_error(std::string(who) + ": C(n,t) exceeds the enumeration budget");
}

}  // namespace

std::vector<Block> PartitionScheme::bin_masks() const {
    std::vector<Block> masks(bins.size());
    for (size_t i = 0; i < bins.size(); ++i) masks[i] = setsys::block_of(bins[i]);
    return masks;
}

PartitionScheme partition_bins(int n, int l) {
    if (!(1 <= l && l <= n)) throw std::invalid_argument("partition_bins: need 1 <= l <= n");
    PartitionScheme ps;
    ps.n = n;
    ps.l = l;
    ps.bins.resize(static_cast<size_t>(l));
    ps.bin_of.assign(static_cast<size_t>(n) + 1, -1);
    const int big = (n + l - 1) / l, small = n / l, n_big = n % l;
    int next = 1;
    for (int i = 0; i < l; ++i) {
        int size = i < n_big ? big : small;
        for (int c = 0; c < size; ++c) {
            ps.bins[static_cast<size_t>(i)].push_back(next);
            ps.bin_of[static_cast<size_t>(next)] = i;
            ++next;
        }
    }
    return ps;
}

BinStats bin_stats(const PartitionScheme& ps, const Block& x) {
    BinStats st;
    for (int i = 0; i < ps.l; ++i) {
        int inside = 0;
        for (int e : ps.bins[static_cast<size_t>(i)]) inside += x.contains(e);
        st.w += static_cast<long>(i) * inside;
        if (inside == 0) ++st.e;
        if (inside == static_cast<int>(ps.bins[static_cast<size_t>(i)].size())) ++st.f;
    }
    return st;
}

SetSystem construct_weighted_partition(int n, int t, int l, int j, long long budget) {
    if (!(0 < t && t < n - 2))
        throw std::invalid_argument("construct_weighted_partition: need 0 < t < n-2");
    if (!(static_cast<long long>(l) * (n - t - 2) >= n && l <= n))
        throw std::invalid_argument("construct_weighted_partition: need n/(n-t-2) <= l <= n");
    if (!(0 <= j && j < l))
        throw std::invalid_argument("construct_weighted_partition: need 0 <= j < l");
    check_enum_budget("construct_weighted_partition", n, t, budget);

    const PartitionScheme ps = partition_bins(n, l);
    const std::vector<Block> bin = ps.bin_masks();
    SetSystem sys;
    sys.n = n;
    sys.t = t;
    sys.kind = setsys::Kind::se;
    SubsetEnum en(n, t);
    Block x;
    while (en.next(x)) {
        bool take = bin_stats(ps, x).w % l == j;
        for (int m = 0; m < l && !take; ++m) {
            const Block& nm = bin[static_cast<size_t>(m)];
            bool disjoint = true;
            for (int wi = 0; wi < setsys::kWords && disjoint; ++wi)
                disjoint = (x.w[static_cast<size_t>(wi)] & nm.w[static_cast<size_t>(wi)]) == 0;
            take = disjoint && !setsys::is_subset(bin[static_cast<size_t>((m - 1 + l) % l)], x);
        }
        if (take) sys.blocks.push_back(x);
    }
    sys.canonicalize();
    return sys;
}

namespace {

// All index sets I usable by the patch recipe: sum of bin sizes > t and at
// least one member whose removal brings the sum back to <= t (otherwise no
// prefix bin exists and the recipe cannot produce a t-set).  Equivalently
// sum - max <= t.  Restricting to set-wise minimal I (every proper subset
// summing <= t) would be too narrow: an uncovered union of full bins needs a
// patch whose index set may properly contain a smaller qualifying set, e.g.
// bins of sizes 3 and 2 with t=2, where {4,5} is only covered via I={0,1}.
// DFS in ascending index order; sum - max grows strictly along extensions,
// so a branch dies for good once it exceeds t.
void patch_index_sets(const PartitionScheme& ps, int t, int from, int sum, int maxsz,
                      std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (sum > t) out.push_back(cur);
    for (int m = from; m < ps.l; ++m) {
        const int sz = static_cast<int>(ps.bins[static_cast<size_t>(m)].size());
        const int nsum = sum + sz;
        const int nmax = std::max(maxsz, sz);
        if (nsum - nmax > t) continue;
        cur.push_back(m);
        patch_index_sets(ps, t, m + 1, nsum, nmax, cur, out);
        cur.pop_back();
    }
}

}  // namespace

SetSystem construct_bin_parity(int n, int t, int l, int j, long long budget) {
    if (!(0 < t && t < n)) throw std::invalid_argument("construct_bin_parity: need 0 < t < n");
    if (!(1 <= l && l <= n)) throw std::invalid_argument("construct_bin_parity: need 1 <= l <= n");
    if (!(0 <= j && j < l)) throw std::invalid_argument("construct_bin_parity: need 0 <= j < l");
    check_enum_budget("construct_bin_parity", n, t, budget);

    const PartitionScheme ps = partition_bins(n, l);
    SetSystem sys;
    sys.n = n;
    sys.t = t;
    sys.kind = setsys::Kind::se;

    SubsetEnum en(n, t);
    Block x;
    while (en.next(x)) {
        const BinStats st = bin_stats(ps, x);
        if ((st.w + j) % l <= std::max(st.e, st.f)) sys.blocks.push_back(x);
    }

    std::vector<std::vector<int>> index_sets;
    std::vector<int> cur;
    patch_index_sets(ps, t, 0, 0, 0, cur, index_sets);
    for (const auto& I : index_sets) {
        int total = 0;
        for (int m : I) total += static_cast<int>(ps.bins[static_cast<size_t>(m)].size());
        for (int jp : I) {
            // jp is the prefix bin; removing it must bring the sum back to
            // <= t or the recipe produces no t-set for this choice.
            if (total - static_cast<int>(ps.bins[static_cast<size_t>(jp)].size()) > t) continue;
            for (int i : I) {
                if (i == jp) continue;
                Block f;
                for (int m : I)
                    if (m != i && m != jp)
                        for (int e : ps.bins[static_cast<size_t>(m)]) f.insert(e);
                const auto& ni = ps.bins[static_cast<size_t>(i)];
                for (size_t c = 0; c + 1 < ni.size(); ++c) f.insert(ni[c]);
                // t+1 - sum over I\{jp} of |N_m|; in [1, |N_jp|] by the checks above.
                int from_jp = t + 1 - (total - static_cast<int>(ps.bins[static_cast<size_t>(jp)].size()));
                const auto& nj = ps.bins[static_cast<size_t>(jp)];
                if (from_jp < 1 || from_jp > static_cast<int>(nj.size()))
                    throw std::logic_error("construct_bin_parity: patch index set bounds violated");
                for (int c = 0; c < from_jp; ++c) f.insert(nj[static_cast<size_t>(c)]);
                if (f.size() != t)
                    throw std::logic_error("construct_bin_parity: F block has wrong cardinality");
                sys.blocks.push_back(f);
            }
        }
    }
    sys.canonicalize();
    return sys;
}

SetSystem construct_kuzjurin(int n, int k, long long budget) {
    if (!(1 <= k && k <= n)) throw std::invalid_argument("construct_kuzjurin: need 1 <= k <= n");
    check_enum_budget("construct_kuzjurin", n, k, budget);

    // |C_i| = C(n,k-1) - k|Q_i|, so the best residue (smallest |Q_i|+|C_i|)
    // is the one with the largest |Q_i|; ties go to the smallest residue.
    std::vector<long long> qsize(static_cast<size_t>(n), 0);
    {
        SubsetEnum en(n, k);
        Block x;
        while (en.next(x)) {
            long long sum = 0;
            for (int e : x.members()) sum += e;
            ++qsize[static_cast<size_t>(sum % n)];
        }
    }
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (qsize[static_cast<size_t>(i)] > qsize[static_cast<size_t>(best)]) best = i;

    SetSystem sys;
    sys.n = n;
    sys.t = k;      // block size
    sys.s = k - 1;  // covered subset size
    sys.kind = setsys::Kind::covering;
    {
        SubsetEnum en(n, k);
        Block x;
        while (en.next(x)) {
            long long sum = 0;
            for (int e : x.members()) sum += e;
            if (sum % n == best) sys.blocks.push_back(x);
        }
    }
    // A (k-1)-subset X is inside a Q-block iff the unique y with
    // sum(X) + y = best (mod n), y in {1..n}, lies outside X.
    {
        SubsetEnum en(n, k - 1);
        Block x;
        std::vector<Block> completions;
        while (en.next(x)) {
            long long sum = 0;
            for (int e : x.members()) sum += e;
            int y = static_cast<int>(((best - sum) % n + n) % n);
            if (y == 0) y = n;
            if (!x.contains(y)) continue;  // covered by a Q-block
            Block comp = x;
            for (int e = 1; e <= n; ++e)
                if (!comp.contains(e)) {
                    comp.insert(e);
                    break;
                }
            completions.push_back(comp);
        }
        sys.blocks.insert(sys.blocks.end(), completions.begin(), completions.end());
    }
    sys.canonicalize();
    return sys;
}

SetSystem construct_recurrent_se(int n, int t, long long budget) {
    if (!(0 < t && t < n - 1))
        throw std::invalid_argument("construct_recurrent_se: need 0 < t < n-1");
    const int k = n - t - 1;
    SetSystem sys;
    sys.n = n - t;
    sys.t = 0;
    sys.kind = setsys::Kind::se;
    sys.blocks.push_back(Block{});  // the (n-t, 0)-SE base system
    for (int np = n - t + 1; np <= n; ++np) {
        SetSystem up;
        up.n = np;
        up.t = sys.t + 1;
        up.kind = setsys::Kind::se;
        up.blocks.reserve(sys.blocks.size());
        for (Block b : sys.blocks) {
            b.insert(np);
            up.blocks.push_back(b);
        }
        // Turan (np-1, t'+1, t') part, by complementing the covering design.
        const SetSystem turan = complement_system(construct_kuzjurin(np - 1, k, budget));
        up.blocks.insert(up.blocks.end(), turan.blocks.begin(), turan.blocks.end());
        up.canonicalize();
        sys = std::move(up);
    }
    return sys;
}

SetSystem construct_random_greedy(int n, int t, double p, std::uint64_t seed, long long budget) {
    if (!(0 < t && t < n)) throw std::invalid_argument("construct_random_greedy: need 0 < t < n");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("construct_random_greedy: need 0 <= p <= 1");
    ExactInt total = 0;
    for (int i = 1; i <= t + 1; ++i) total += combinat::binomial(n, i);
    if (total > ExactInt(static_cast<long>(budget)) || combinat::binomial(n, t) > ExactInt(static_cast<long>(budget)))
        throw budget_error("construct_random_greedy: enumeration exceeds budget");

    SetSystem sys;
    sys.n = n;
    sys.t = t;
    sys.kind = setsys::Kind::se;

    // Phase 1: one draw per t-subset in lexicographic order; include when the
    // draw falls below round(p * 2^64) (p = 1 always includes).
    std::mt19937_64 rng(seed);
    const bool always = p >= 1.0, never = p <= 0.0;
    const std::uint64_t threshold = (always || never) ? 0 : static_cast<std::uint64_t>(std::ldexp(p, 64));
    {
        SubsetEnum en(n, t);
        Block x;
        while (en.next(x)) {
            const std::uint64_t draw = rng();
            if (always || (!never && draw < threshold)) sys.blocks.push_back(x);
        }
    }

    // Phase 2: greedy patching in lexicographic target order.
    for (int i = 1; i <= t + 1; ++i) {
        SubsetEnum en(n, i);
        Block x;
        while (en.next(x)) {
            bool covered = false;
            for (const Block& a : sys.blocks)
                if (setsys::covers(a, x)) {
                    covered = true;
                    break;
                }
            if (covered) continue;
            SubsetEnum cen(n, t);
            Block a;
            bool patched = false;
            while (cen.next(a))
                if (setsys::covers(a, x)) {
                    sys.blocks.push_back(a);
                    patched = true;
                    break;
                }
            if (!patched)
                throw std::logic_error("construct_random_greedy: no covering block exists");
        }
    }
    sys.canonicalize();
    return sys;
}

}  // namespace excov::cons
