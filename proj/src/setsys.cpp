#include "excov/setsys.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace excov::setsys {

int Block::size() const {
    int c = 0;
    for (auto word : w) c += std::popcount(word);
    return c;
}

bool Block::empty() const {
    for (auto word : w)
        if (word) return false;
    return true;
}

std::vector<int> Block::members() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(size()));
    for (int wi = 0; wi < kWords; ++wi) {
        std::uint64_t word = w[wi];
        while (word) {
            int b = std::countr_zero(word);
            out.push_back(wi * 64 + b + 1);
            word &= word - 1;
        }
    }
    return out;
}

Block block_of(const std::vector<int>& members) {
    Block b;
    for (int m : members) {
        if (m < 1 || m > kMaxGround)
            throw std::invalid_argument("block_of: member out of range");
        b.insert(m);
    }
    return b;
}

bool lex_less(const Block& a, const Block& b) {
    // Member sequences share everything below the smallest differing
    // element e.  The block owning e presents the smaller member there and
    // precedes -- unless the other block has nothing beyond the shared part,
    // in which case it is a proper sequence prefix and precedes instead.
    for (int wi = 0; wi < kWords; ++wi) {
        std::uint64_t d = a.w[wi] ^ b.w[wi];
        if (!d) continue;
        const std::uint64_t low = d & (~d + 1);
        const bool a_owns = (a.w[wi] & low) != 0;
        const Block& other = a_owns ? b : a;
        bool other_continues = (other.w[wi] & ~((low << 1) - 1)) != 0;
        for (int wj = wi + 1; wj < kWords && !other_continues; ++wj)
            other_continues = other.w[wj] != 0;
        return a_owns == other_continues;
    }
    return false;
}

bool is_subset(const Block& a, const Block& b) {
    for (int wi = 0; wi < kWords; ++wi)
        if (a.w[wi] & ~b.w[wi]) return false;
    return true;
}

bool covers(const Block& a, const Block& x) {
    int outside = 0;
    for (int wi = 0; wi < kWords; ++wi) {
        outside += std::popcount(x.w[wi] & ~a.w[wi]);
        if (outside > 1) return false;
    }
    return outside == 1;
}

Block complement_block(const Block& a, int n) {
    Block c;
    for (int wi = 0; wi < kWords; ++wi) c.w[wi] = ~a.w[wi];
    // Mask off bits beyond n.
    const int full = n >> 6;
    if (n & 63) c.w[full] &= (std::uint64_t{1} << (n & 63)) - 1;
    for (int wi = full + ((n & 63) ? 1 : 0); wi < kWords; ++wi) c.w[wi] = 0;
    return c;
}

SubsetEnum::SubsetEnum(int n, int k) : n_(n), k_(k) {
    if (k < 0 || k > n) done_ = true;
    mem_.resize(static_cast<size_t>(std::max(k, 0)));
    for (int i = 0; i < k; ++i) mem_[static_cast<size_t>(i)] = i + 1;
}

bool SubsetEnum::next(Block& out) {
    if (done_) return false;
    if (!first_) {
        // Standard lexicographic successor of a k-combination.
        int i = k_ - 1;
        while (i >= 0 && mem_[static_cast<size_t>(i)] == n_ - (k_ - 1 - i)) --i;
        if (i < 0) {
            done_ = true;
            return false;
        }
        ++mem_[static_cast<size_t>(i)];
        for (int j = i + 1; j < k_; ++j)
            mem_[static_cast<size_t>(j)] = mem_[static_cast<size_t>(j - 1)] + 1;
    }
    first_ = false;
    out = block_of(mem_);
    return true;
}

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::se: return "se";
        case Kind::turan: return "turan";
        case Kind::covering: return "covering";
        default: return "plain";
    }
}

void SetSystem::canonicalize() {
    std::sort(blocks.begin(), blocks.end(), lex_less);
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

namespace {

// Sum_{i=1}^{imax} C(n,i), saturating at budget+1.
long long target_count(int n, int imax, long long budget) {
    ExactInt total = 0;
    for (int i = 1; i <= imax; ++i) {
        total += combinat::binomial(n, i);
        if (total > ExactInt(static_cast<long>(budget))) return budget + 1;
    }
    return static_cast<long long>(total.get_si());
}

}  // namespace

VerifyResult is_se_system(const SetSystem& sys, long long budget) {
    if (!(0 <= sys.t && sys.t < sys.n))
        throw std::invalid_argument("is_se_system: need 0 <= t < n");
    if (target_count(sys.n, sys.t + 1, budget) > budget)
        throw budget_error("is_se_system: target count exceeds budget");
    // The witness must be lexicographically first across *all* sizes, and
    // under member-sequence order sizes interleave ({1,3} < {2}), so take
    // the per-size first failures and return their minimum.
    std::optional<Block> best;
    for (int i = 1; i <= sys.t + 1; ++i) {
        SubsetEnum en(sys.n, i);
        Block x;
        while (en.next(x)) {
            bool cov = false;
            for (const Block& a : sys.blocks)
                if (covers(a, x)) {
                    cov = true;
                    break;
                }
            if (!cov) {
                if (!best || lex_less(x, *best)) best = x;
                break;  // later subsets of this size are lexicographically larger
            }
        }
    }
    if (best) return {false, best};
    return {};
}

VerifyResult is_turan_system(const SetSystem& sys, int s, long long budget) {
    if (!(sys.t <= s && s <= sys.n))
        throw std::invalid_argument("is_turan_system: need t <= s <= n");
    if (combinat::binomial(sys.n, s) > ExactInt(static_cast<long>(budget)))
        throw budget_error("is_turan_system: target count exceeds budget");
    SubsetEnum en(sys.n, s);
    Block x;
    while (en.next(x)) {
        bool has = false;
        for (const Block& a : sys.blocks)
            if (is_subset(a, x)) {
                has = true;
                break;
            }
        if (!has) return {false, x};
    }
    return {};
}

VerifyResult is_covering_design(const SetSystem& sys, int target_size, long long budget) {
    if (!(0 <= target_size && target_size <= sys.t))
        throw std::invalid_argument("is_covering_design: need 0 <= target size <= block size");
    if (combinat::binomial(sys.n, target_size) > ExactInt(static_cast<long>(budget)))
        throw budget_error("is_covering_design: target count exceeds budget");
    SubsetEnum en(sys.n, target_size);
    Block x;
    while (en.next(x)) {
        bool inside = false;
        for (const Block& a : sys.blocks)
            if (is_subset(x, a)) {
                inside = true;
                break;
            }
        if (!inside) return {false, x};
    }
    return {};
}

SetSystem complement_system(const SetSystem& sys) {
    SetSystem out;
    out.n = sys.n;
    out.t = sys.n - sys.t;
    switch (sys.kind) {
        case Kind::turan:  // T(n,s,t) = C(n, n-t, n-s)
            out.kind = Kind::covering;
            out.s = sys.n - sys.s;
            break;
        case Kind::covering:
            out.kind = Kind::turan;
            out.s = sys.n - sys.s;
            break;
        case Kind::se:  // SE implies Turan(t+1), so the complement covers (n-t-1)-subsets
            out.kind = Kind::covering;
            out.s = sys.n - sys.t - 1;
            break;
        default:
            out.kind = Kind::plain;
            break;
    }
    out.blocks.reserve(sys.blocks.size());
    for (const Block& b : sys.blocks) out.blocks.push_back(complement_block(b, sys.n));
    out.canonicalize();
    return out;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw parse_error("line " + std::to_string(line_no) + ": " + what);
}

// Next non-comment line; returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string::size_type p = line.find_first_not_of(" \t");
        if (p != std::string::npos && line[p] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

SetSystem read_blocks(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_data_line(in, line, line_no)) throw parse_error("line 1: missing header");
    long n = 0, t = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> t >> m) || (hs >> extra)) fail(line_no, "malformed header (want: n t m)");
        if (n < 1 || n > kMaxGround) fail(line_no, "ground-set size out of range");
        if (t < 0 || t > n) fail(line_no, "block size out of range");
        if (m < 0) fail(line_no, "negative block count");
    }
    SetSystem sys;
    sys.n = static_cast<int>(n);
    sys.t = static_cast<int>(t);
    sys.kind = Kind::plain;
    sys.blocks.reserve(static_cast<size_t>(m));
    for (long bi = 0; bi < m; ++bi) {
        if (!next_data_line(in, line, line_no))
            fail(line_no + 1, "block count mismatch (header promised " + std::to_string(m) +
                                  " blocks, file has " + std::to_string(bi) + ")");
        Block b;
        std::istringstream ls(line);
        long v = 0;
        int count = 0;
        long prev = 0;
        while (ls >> v) {
            if (v < 1 || v > n) fail(line_no, "index out of range: " + std::to_string(v));
            if (v <= prev)
                fail(line_no, count > 0 && v == prev ? "duplicate member" : "members not ascending");
            b.insert(static_cast<int>(v));
            prev = v;
            ++count;
        }
        if (!ls.eof()) fail(line_no, "non-numeric block entry");
        if (count != t) fail(line_no, "block has " + std::to_string(count) +
                                          " members, expected " + std::to_string(t));
        for (const Block& prior : sys.blocks)
            if (prior == b) fail(line_no, "duplicate block");
        sys.blocks.push_back(b);
    }
    if (next_data_line(in, line, line_no)) {
        // Allow trailing whitespace-only lines, nothing else.
        if (line.find_first_not_of(" \t") != std::string::npos)
            fail(line_no, "block count mismatch (extra data after promised blocks)");
    }
    sys.canonicalize();
    return sys;
}

SetSystem read_blocks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return read_blocks(in);
}

void write_blocks(std::ostream& out, const SetSystem& sys) {
    out << sys.n << ' ' << sys.t << ' ' << sys.blocks.size() << '\n';
    for (const Block& b : sys.blocks) {
        const std::vector<int> mem = b.members();
        for (size_t i = 0; i < mem.size(); ++i) out << (i ? " " : "") << mem[i];
        out << '\n';
    }
}

void write_blocks_file(const std::string& path, const SetSystem& sys) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_blocks(out, sys);
}

}  // namespace excov::setsys
