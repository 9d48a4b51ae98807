#pragma once

// Prime-field Reed-Solomon machinery: GRS code specs over Z/q, dual
// codewords with a prescribed zero set, parity-check matrices built from
// single-exclusion systems, exact stopping-distance search, the iterative
// erasure (peeling) decoder, minimum-weight row replacement, and the exact
// stopping-redundancy search on tiny instances.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "excov/exact.hpp"
#include "excov/setsys.hpp"

namespace excov::coding {

/// Arithmetic in Z/q for a prime modulus; elements canonical in [0, q).
struct PrimeField {
    long q = 0;

    PrimeField() = default;  ///< empty shell; CodeSpec::make installs a real one

    /// Validates primality (GMP); throws std::invalid_argument otherwise.
    explicit PrimeField(long modulus);

    long add(long a, long b) const { return (a + b) % q; }
    long sub(long a, long b) const { return (a - b % q + q) % q; }
    long neg(long a) const { return (q - a % q) % q; }
    long mul(long a, long b) const;
    long pow(long a, long e) const;
    long inv(long a) const;  ///< a != 0; a^(q-2)
};

/// Smallest prime >= n (n >= 1).
long smallest_prime_geq(long n);

/// An [n, k, d] Reed-Solomon code over the prime field q with evaluation
/// points alpha_j = j - 1: codewords (f(alpha_1), ..., f(alpha_n)) over all
/// polynomials of degree < k.  MDS, so k = n - d + 1 and the dual distance
/// is n - d + 2.  v_j are the dual column multipliers
/// prod_{i != j} (alpha_j - alpha_i)^{-1}.
struct CodeSpec {
    int n = 0;
    int k = 0;
    int d = 0;
    PrimeField field;
    std::vector<long> alphas;
    std::vector<long> v;

    int dual_distance() const { return n - d + 2; }

    /// q = 0 picks the smallest prime >= n.  Requires 2 <= d <= n (so
    /// k >= 1) and q >= n (distinct evaluation points).
    static CodeSpec make(int n, int d, long q = 0);
};

/// A nonzero dual codeword whose zero set is exactly the block b,
/// |b| = d - 2: c_j = v_j * g(alpha_j) with g(x) = prod_{beta in b}
/// (x - alpha_beta).  Weight is exactly n - d + 2.
std::vector<long> dual_vanishing_codeword(const CodeSpec& spec, const setsys::Block& b);

/// k x n Vandermonde generator matrix, row r = (alpha_j^r)_j, r = 0..k-1.
std::vector<std::vector<long>> generator_matrix(const CodeSpec& spec);

/// (n-k) x n generator of the dual code, row r = (v_j * alpha_j^r)_j.
std::vector<std::vector<long>> dual_generator_matrix(const CodeSpec& spec);

/// Rank over Z/q by Gaussian elimination.
int matrix_rank(long q, std::vector<std::vector<long>> rows);

/// An l x n matrix over Z/q whose rows are dual codewords.
struct ParityCheckMatrix {
    long q = 0;
    int n = 0;
    std::vector<std::vector<long>> rows;
};

/// Support of a matrix row as a block over {1..n}.
setsys::Block row_support(const std::vector<long>& row);

/// One row per block of a verified (n, d-2)-SE system: the block is the
/// row's zero set, so every stopping set has size >= d and the stopping
/// distance is exactly d.  Throws std::invalid_argument when the system
/// fails verification or does not match spec, and std::logic_error if the
/// result's rank is not n - k (which would signal a bug, not bad data).
ParityCheckMatrix build_h_from_se(const CodeSpec& spec, const setsys::SetSystem& sys,
                                  long long budget = 100'000'000);

/// True iff no row of h intersects the subset in exactly one support
/// position.  Throws std::invalid_argument on the empty subset.
bool is_stopping_set(const ParityCheckMatrix& h, const setsys::Block& subset);

/// Smallest nonempty stopping-set size, searching sizes 1..max_size
/// (max_size = 0 means n) in lexicographic order with early exit; nullopt
/// when no stopping set that small exists.  Enumerating sum C(n,s) subsets
/// beyond `budget` throws budget_error.
std::optional<int> stopping_distance(const ParityCheckMatrix& h, int max_size = 0,
                                     long long budget = 100'000'000);

/// Iterative erasure decoding outcome: recovered, or stuck with the
/// residual erased positions (empty iff recovered; always a stopping set
/// when nonempty).
struct PeelResult {
    bool recovered = false;
    std::vector<int> residual;
};

/// Repeatedly resolves any erased position some row covers exactly once.
PeelResult peel_decode(const ParityCheckMatrix& h, const setsys::Block& erased);

/// Replaces every row of weight > n-d+2 by at most ceil(n/(n-d+2))
/// minimum-weight dual codewords whose supports union to exactly the old
/// row's support: greedily take the support covering the most not-yet-
/// covered positions, choosing the complement block lexicographically
/// smallest.  Rows already of minimum weight pass through unchanged.
/// Throws std::runtime_error when a support cannot be exactly unioned
/// (non-MDS input) and std::logic_error if the rank changes.
ParityCheckMatrix replace_nonmin_rows(const CodeSpec& spec, const ParityCheckMatrix& h);

/// Exact stopping redundancy of the [n, n-d+1, d] MDS code by minimum set
/// cover: candidates are the achievable dual supports (every set of size
/// >= n-d+2), targets every nonempty set of size <= d-1, covered when the
/// support meets the target exactly once.  Feasible for n <= 7.
struct StoppingRedundancy {
    int value = 0;
    std::vector<setsys::Block> supports;
    long long nodes = 0;
};

StoppingRedundancy exact_stopping_redundancy(int n, int d,
                                             const exact::SolveOptions& opts = {});

/// Matrix file: line 1 = "q l n"; then l lines of n integers in [0, q);
/// '#' starts a comment line.  Malformed input raises setsys::parse_error.
ParityCheckMatrix read_matrix(std::istream& in);
ParityCheckMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const ParityCheckMatrix& h);
void write_matrix_file(const std::string& path, const ParityCheckMatrix& h);

}  // namespace excov::coding
