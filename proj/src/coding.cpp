#include "excov/coding.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "excov/combinat.hpp"

namespace excov::coding {

namespace {

int intersect_count(const setsys::Block& a, const setsys::Block& b) {
    int c = 0;
    for (int w = 0; w < setsys::kWords; ++w)
        c += std::popcount(a.w[static_cast<size_t>(w)] & b.w[static_cast<size_t>(w)]);
    return c;
}

std::vector<setsys::Block> all_supports(const ParityCheckMatrix& h) {
    std::vector<setsys::Block> sup;
    sup.reserve(h.rows.size());
    for (const auto& row : h.rows) sup.push_back(row_support(row));
    return sup;
}

void check_subset_range(const setsys::Block& b, int n, const char* who) {
    for (int e : b.members())
        if (e > n) throw std::invalid_argument(std::string(who) + ": element beyond the ground set");
}

}  // namespace

// ---- prime field -----------------------------------------------------------------

PrimeField::PrimeField(long modulus) : q(modulus) {
    if (modulus < 2) throw std::invalid_argument("PrimeField: modulus must be >= 2");
    mpz_class z(static_cast<long>(modulus));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw std::invalid_argument("PrimeField: modulus is not prime");
}

long PrimeField::mul(long a, long b) const {
    unsigned __int128 p = static_cast<unsigned __int128>(static_cast<unsigned long>(a % q)) *
                          static_cast<unsigned long>(b % q);
    return static_cast<long>(p % static_cast<unsigned long>(q));
}

long PrimeField::pow(long a, long e) const {
    if (e < 0) throw std::invalid_argument("PrimeField::pow: negative exponent");
    long base = ((a % q) + q) % q;
    long r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

long PrimeField::inv(long a) const {
    if (a % q == 0) throw std::invalid_argument("PrimeField::inv: zero has no inverse");
    return pow(a, q - 2);
}

long smallest_prime_geq(long n) {
    if (n < 1) throw std::invalid_argument("smallest_prime_geq: need n >= 1");
    if (n <= 2) return 2;
    mpz_class below(static_cast<long>(n - 1)), prime;
    mpz_nextprime(prime.get_mpz_t(), below.get_mpz_t());
    return prime.get_si();
}

// ---- code spec -------------------------------------------------------------------

CodeSpec CodeSpec::make(int n, int d, long q) {
    if (!(2 <= d && d <= n)) throw std::invalid_argument("CodeSpec: need 2 <= d <= n");
    if (q == 0) q = smallest_prime_geq(n);
    if (q < n) throw std::invalid_argument("CodeSpec: need q >= n for distinct evaluation points");
    CodeSpec spec;
    spec.n = n;
    spec.d = d;
    spec.k = n - d + 1;
    spec.field = PrimeField(q);
    spec.alphas.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) spec.alphas[static_cast<size_t>(j)] = j;
    spec.v.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        long prod = 1;
        for (int i = 0; i < n; ++i)
            if (i != j)
                prod = spec.field.mul(
                    prod, spec.field.sub(spec.alphas[static_cast<size_t>(j)],
                                         spec.alphas[static_cast<size_t>(i)]));
        spec.v[static_cast<size_t>(j)] = spec.field.inv(prod);
    }
    return spec;
}

std::vector<long> dual_vanishing_codeword(const CodeSpec& spec, const setsys::Block& b) {
    if (b.size() != spec.d - 2)
        throw std::invalid_argument("dual_vanishing_codeword: need |b| = d - 2");
    check_subset_range(b, spec.n, "dual_vanishing_codeword");
    const std::vector<int> zeros = b.members();
    std::vector<long> c(static_cast<size_t>(spec.n));
    for (int j = 0; j < spec.n; ++j) {
        long g = 1;
        for (int beta : zeros)
            g = spec.field.mul(g, spec.field.sub(spec.alphas[static_cast<size_t>(j)],
                                                 spec.alphas[static_cast<size_t>(beta - 1)]));
        c[static_cast<size_t>(j)] = spec.field.mul(spec.v[static_cast<size_t>(j)], g);
    }
    return c;
}

std::vector<std::vector<long>> generator_matrix(const CodeSpec& spec) {
    std::vector<std::vector<long>> g(static_cast<size_t>(spec.k),
                                     std::vector<long>(static_cast<size_t>(spec.n)));
    for (int r = 0; r < spec.k; ++r)
        for (int j = 0; j < spec.n; ++j)
            g[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                spec.field.pow(spec.alphas[static_cast<size_t>(j)], r);
    return g;
}

std::vector<std::vector<long>> dual_generator_matrix(const CodeSpec& spec) {
    const int rows = spec.n - spec.k;
    std::vector<std::vector<long>> g(static_cast<size_t>(rows),
                                     std::vector<long>(static_cast<size_t>(spec.n)));
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < spec.n; ++j)
            g[static_cast<size_t>(r)][static_cast<size_t>(j)] = spec.field.mul(
                spec.v[static_cast<size_t>(j)],
                spec.field.pow(spec.alphas[static_cast<size_t>(j)], r));
    return g;
}

int matrix_rank(long q, std::vector<std::vector<long>> rows) {
    PrimeField f(q);
    if (rows.empty()) return 0;
    const size_t n = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("matrix_rank: ragged rows");
    int rank = 0;
    for (size_t col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        size_t pivot = static_cast<size_t>(rank);
        while (pivot < rows.size() && rows[pivot][col] % q == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
        const long scale = f.inv(rows[static_cast<size_t>(rank)][col]);
        for (size_t j = col; j < n; ++j)
            rows[static_cast<size_t>(rank)][j] = f.mul(rows[static_cast<size_t>(rank)][j], scale);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<size_t>(rank)) continue;
            const long factor = rows[r][col] % q;
            if (factor == 0) continue;
            for (size_t j = col; j < n; ++j)
                rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[static_cast<size_t>(rank)][j]));
        }
        ++rank;
    }
    return rank;
}

setsys::Block row_support(const std::vector<long>& row) {
    if (row.size() > static_cast<size_t>(setsys::kMaxGround))
        throw std::invalid_argument("row_support: row longer than the ground-set capacity");
    setsys::Block b;
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) b.insert(static_cast<int>(j) + 1);
    return b;
}

// ---- H from an SE system ---------------------------------------------------------

ParityCheckMatrix build_h_from_se(const CodeSpec& spec, const setsys::SetSystem& sys,
                                  long long budget) {
    if (sys.n != spec.n)
        throw std::invalid_argument("build_h_from_se: ground-set size does not match the code");
    if (sys.t != spec.d - 2)
        throw std::invalid_argument("build_h_from_se: need block size d - 2");
    setsys::VerifyResult vr = setsys::is_se_system(sys, budget);
    if (!vr.ok)
        throw std::invalid_argument("build_h_from_se: system is not an (n, d-2)-SE system");
    ParityCheckMatrix h;
    h.q = spec.field.q;
    h.n = spec.n;
    h.rows.reserve(sys.blocks.size());
    for (const auto& b : sys.blocks) h.rows.push_back(dual_vanishing_codeword(spec, b));
    if (matrix_rank(h.q, h.rows) != spec.n - spec.k)
        throw std::logic_error("build_h_from_se: rank is not n - k");
    return h;
}

// ---- stopping sets ----------------------------------------------------------------

bool is_stopping_set(const ParityCheckMatrix& h, const setsys::Block& subset) {
    if (subset.empty()) throw std::invalid_argument("is_stopping_set: subset must be nonempty");
    check_subset_range(subset, h.n, "is_stopping_set");
    for (const auto& row : h.rows)
        if (intersect_count(row_support(row), subset) == 1) return false;
    return true;
}

std::optional<int> stopping_distance(const ParityCheckMatrix& h, int max_size,
                                     long long budget) {
    if (max_size <= 0 || max_size > h.n) max_size = h.n;
    const std::vector<setsys::Block> sup = all_supports(h);
    ExactInt work = 0;
    for (int s = 1; s <= max_size; ++s) {
        work += combinat::binomial(h.n, s);
        if (work > ExactInt(static_cast<long>(budget)))
            throw budget_error("stopping_distance: subset enumeration exceeds budget");
        setsys::SubsetEnum en(h.n, s);
        setsys::Block cand;
        while (en.next(cand)) {
            bool stopping = true;
            for (const auto& rs : sup)
                if (intersect_count(rs, cand) == 1) {
                    stopping = false;
                    break;
                }
            if (stopping) return s;
        }
    }
    return std::nullopt;
}

PeelResult peel_decode(const ParityCheckMatrix& h, const setsys::Block& erased) {
    check_subset_range(erased, h.n, "peel_decode");
    const std::vector<setsys::Block> sup = all_supports(h);
    setsys::Block residual = erased;
    bool progress = true;
    while (progress && !residual.empty()) {
        progress = false;
        for (const auto& rs : sup) {
            if (intersect_count(rs, residual) != 1) continue;
            for (int e : rs.members())
                if (residual.contains(e)) {
                    residual.erase(e);
                    break;
                }
            progress = true;
        }
    }
    PeelResult out;
    out.recovered = residual.empty();
    out.residual = residual.members();
    return out;
}

// ---- row replacement ---------------------------------------------------------------

ParityCheckMatrix replace_nonmin_rows(const CodeSpec& spec, const ParityCheckMatrix& h) {
    if (h.q != spec.field.q || h.n != spec.n)
        throw std::invalid_argument("replace_nonmin_rows: matrix does not match the code spec");
    const int dperp = spec.dual_distance();
    const int cap = (spec.n + dperp - 1) / dperp;
    ParityCheckMatrix out;
    out.q = h.q;
    out.n = h.n;
    for (const auto& row : h.rows) {
        const setsys::Block t_sup = row_support(row);
        const int weight = t_sup.size();
        if (weight == dperp) {
            out.rows.push_back(row);
            continue;
        }
        if (weight < dperp)
            throw std::runtime_error(
                "replace_nonmin_rows: row weight below the dual distance (non-MDS input)");
        setsys::Block uncovered = t_sup;
        int used = 0;
        while (!uncovered.empty()) {
            // Max coverage first, then the lexicographically smallest
            // complement block: both favor keeping the largest elements
            // inside the new support.
            std::vector<int> pick;
            const std::vector<int> u_mem = uncovered.members();
            if (static_cast<int>(u_mem.size()) >= dperp) {
                pick.assign(u_mem.end() - dperp, u_mem.end());
            } else {
                pick = u_mem;
                std::vector<int> covered;
                for (int e : t_sup.members())
                    if (!uncovered.contains(e)) covered.push_back(e);
                const int need = dperp - static_cast<int>(u_mem.size());
                pick.insert(pick.end(), covered.end() - need, covered.end());
            }
            const setsys::Block s = setsys::block_of(pick);
            const setsys::Block b = setsys::complement_block(s, spec.n);
            std::vector<long> fresh = dual_vanishing_codeword(spec, b);
            if (!(row_support(fresh) == s))
                throw std::logic_error("replace_nonmin_rows: support mismatch");
            out.rows.push_back(std::move(fresh));
            for (int e : s.members())
                if (uncovered.contains(e)) uncovered.erase(e);
            if (++used > cap)
                throw std::logic_error("replace_nonmin_rows: per-row replacement cap exceeded");
        }
    }
    if (matrix_rank(out.q, out.rows) != spec.n - spec.k)
        throw std::logic_error("replace_nonmin_rows: rank changed");
    return out;
}

// ---- exact stopping redundancy -----------------------------------------------------

StoppingRedundancy exact_stopping_redundancy(int n, int d, const exact::SolveOptions& opts) {
    if (!(2 <= d && d <= n)) throw std::invalid_argument("exact_stopping_redundancy: need 2 <= d <= n");
    const int dperp = n - d + 2;
    exact::CoverInstance inst;
    // Candidates: every achievable dual support, i.e. every set of size
    // >= n-d+2 (the code is MDS, so each such set is the support of a dual
    // codeword).  Targets: every nonempty set of size <= d-1, one family
    // per size.  A row set covering all targets exactly-once has stopping
    // distance exactly d; its rank is automatically n-k, because a rank
    // deficit would mean the rows annihilate a code strictly larger than
    // the span of the code itself, which by the Singleton bound contains a
    // word of weight <= d-1 whose support no row could meet exactly once.
    for (int s = dperp; s <= n; ++s) {
        setsys::SubsetEnum en(n, s);
        setsys::Block b;
        while (en.next(b)) inst.candidates.push_back(b);
    }
    int family = 0;
    for (int i = 1; i <= d - 1; ++i, ++family) {
        setsys::SubsetEnum en(n, i);
        setsys::Block b;
        while (en.next(b)) {
            inst.targets.push_back(b);
            inst.target_family.push_back(family);
        }
    }
    inst.n_families = family;
    inst.canonical_first = false;
    inst.build_incidence([](const setsys::Block& cand, const setsys::Block& tgt) {
        return intersect_count(cand, tgt) == 1;
    });
    exact::CoverSolution sol = exact::solve_cover(inst, opts);
    StoppingRedundancy out;
    out.value = sol.optimum;
    out.nodes = sol.nodes;
    for (int idx : sol.chosen) out.supports.push_back(inst.candidates[static_cast<size_t>(idx)]);
    return out;
}

// ---- matrix I/O --------------------------------------------------------------------

namespace {

bool next_content_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
    throw setsys::parse_error("matrix line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

ParityCheckMatrix read_matrix(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!next_content_line(in, line, lineno)) fail(lineno, "missing header");
    std::istringstream head(line);
    long q = 0;
    long l = 0, n = 0;
    std::string extra;
    if (!(head >> q >> l >> n) || (head >> extra)) fail(lineno, "header must be \"q l n\"");
    if (q < 2) fail(lineno, "modulus must be >= 2");
    if (l < 1) fail(lineno, "need at least one row");
    if (n < 1 || n > setsys::kMaxGround) fail(lineno, "block length out of range");
    ParityCheckMatrix h;
    h.q = q;
    h.n = static_cast<int>(n);
    for (long r = 0; r < l; ++r) {
        if (!next_content_line(in, line, lineno)) fail(lineno, "missing matrix row");
        std::istringstream row_in(line);
        std::vector<long> row(static_cast<size_t>(n));
        for (long j = 0; j < n; ++j) {
            if (!(row_in >> row[static_cast<size_t>(j)])) fail(lineno, "too few entries");
            if (row[static_cast<size_t>(j)] < 0 || row[static_cast<size_t>(j)] >= q)
                fail(lineno, "entry outside [0, q)");
        }
        if (row_in >> extra) fail(lineno, "too many entries");
        h.rows.push_back(std::move(row));
    }
    if (next_content_line(in, line, lineno)) fail(lineno, "trailing content");
    return h;
}

ParityCheckMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw setsys::parse_error("cannot open " + path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const ParityCheckMatrix& h) {
    out << h.q << ' ' << h.rows.size() << ' ' << h.n << '\n';
    for (const auto& row : h.rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out << ' ';
            out << row[j];
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const ParityCheckMatrix& h) {
    std::ofstream out(path);
    if (!out) throw setsys::parse_error("cannot open " + path);
    write_matrix(out, h);
    out.flush();
    if (!out) throw setsys::parse_error("write failed: " + path);
}

}  // namespace excov::coding
