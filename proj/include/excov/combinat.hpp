#pragma once

// Exact arbitrary-precision combinatorial arithmetic and the classic
// closed-form lower bounds on S(n,t) / T(n,t+1,t) that the rest of the
// toolkit consumes.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace excov {

/// Arbitrary-precision nonnegative integer. GMP keeps binomial(512,256)
/// and products thereof exact.
using ExactInt = mpz_class;

/// Thrown when an exhaustive operation would exceed its search budget.
/// Callers asked for an exact answer; refusing loudly beats approximating.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

namespace combinat {

/// ceil(a/b) for exact integers, b > 0.
ExactInt ceil_div(const ExactInt& a, const ExactInt& b);

/// floor(a/b) for exact integers, b > 0.
ExactInt floor_div(const ExactInt& a, const ExactInt& b);

/// Binomial coefficient C(n,k); C(n,k) = 0 for k < 0 or k > n.
/// Requires n >= 0. Values with n <= 512 come from a memoized Pascal
/// table (built once, thread-safe); larger n fall through to GMP.
ExactInt binomial(long n, long k);

/// Reference into the memo table (no mpz copy) for 0 <= n <= 512; same
/// edge behavior as binomial().  For hot loops over many coefficients.
const ExactInt& binomial_memo(long n, long k);

/// Number of t-subsets covering a fixed i-subset:
/// phi(n,t,i) = i * C(n-i, t-i+1).  Requires 1 <= i <= t+1 <= n.
ExactInt phi(int n, int t, int i);

/// ceil(C(n,t+1)/(n-t)): each block covers exactly n-t of the
/// (t+1)-supersets, each of which needs a cover.  Valid lower bound on
/// T(n,t+1,t) and S(n,t).
ExactInt simple_lower(int n, int t);

/// Schoenheim's iterated-ceiling lower bound
/// ceil(n/(n-t) ceil((n-1)/(n-t-1) ... ceil((t+2)/2)...)),
/// computed innermost-out in exact integers (no floats anywhere).
ExactInt schoenheim_lower(int n, int t);

/// De Caen's lower bound ceil((1/t)((n-t)/(n-t+1)) C(n,t)).
ExactInt decaen_lower(int n, int t);

/// The (n, s, t) parameter triple with the derived code-side quantities.
/// For SE use s = t+1; for covering designs s is the block size.
struct DesignParams {
    int n = 0;  ///< ground-set size
    int t = 0;  ///< block size (SE/Turan)
    int s = 0;  ///< super-set size (Turan) / block size (covering)

    DesignParams(int n_, int t_, int s_) : n(n_), t(t_), s(s_) {
        if (!(0 < t && t < n)) throw std::invalid_argument("DesignParams: need 0 < t < n");
        if (!(t <= s && s <= n)) throw std::invalid_argument("DesignParams: need t <= s <= n");
    }

    int k() const { return n - t - 1; }             ///< code dimension, k = n-t-1
    int d() const { return t + 2; }                 ///< minimum distance, d = t+2
    int dual_distance() const { return n - d() + 2; }  ///< d_perp = n-d+2
};

}  // namespace combinat
}  // namespace excov
