#pragma once

// Every closed-form or parameter-optimized bound on S(n,t) (equivalently on
// stopping redundancy via t = d-2), evaluated exactly where the formula is
// rational and with directed rounding elsewhere, plus per-(n,d) best-bound
// selection.
//
// Soundness convention: "upper" pipelines only round toward +inf and
// "lower" pipelines toward -inf, so a floored upper / ceiled lower stays a
// valid bound at any working precision; precision affects tightness only.
// Optimizer searches (over p or integer l) may screen candidates in double
// precision -- the reported value is always re-evaluated with directed
// rounding at the reported parameter, which is a valid bound for any
// parameter choice.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excov/combinat.hpp"
#include "excov/real.hpp"

namespace excov::bounds {

enum class BoundName {
    schwartz_vardy_lower,
    simple_lower,
    schoenheim,
    decaen,
    se_lower,
    probabilistic,
    draw_norepl,
    draw_with_replacement,
    construction_a,
    construction_b,
    recurrent_a,
    recurrent_b,
    recurrent_c,
    schwartz_vardy_upper,
    turan_to_se,
    se_lower_theorem,
};

std::string bound_label(BoundName name);

enum class BoundKind { lower, upper };

/// One evaluated bound.  Upper bounds carry value = floor(raw), lower bounds
/// value = ceil(raw); raw is directed-rounded in the safe direction.  params
/// records optimizer output (p, l, or the l_i vector).
struct BoundResult {
    BoundName name{};
    BoundKind kind{};
    ExactInt value;
    Real raw;
    std::string params;
    std::string target;
};

// ---- randomized-construction bounds ---------------------------------------

/// Upper bound p*C(n,t) + sum_{i=1}^{t+1} C(n,i)(1-p)^phi(n,t,i), evaluated
/// in the log domain with round-up on every term.  0 <= p <= 1, 0 < t < n.
Real prob_bound(int n, int t, double p);

/// Minimizes prob_bound over p: 64-point coarse scan checks empirical
/// unimodality (dense-grid fallback otherwise), golden-section refinement
/// seeded at p_min = 1-(n-t)^(-1/t) to relative tolerance 1e-12 on p.
BoundResult prob_bound_min(int n, int t);

/// l-drawings bound: with replacement, l + sum_i C(n,i)(1-phi_i/C(n,t))^l;
/// without replacement the power is replaced by the falling-factorial ratio
/// FF(C-phi,l)/FF(C,l) (zero as soon as l > C-phi).  Round-up.
/// Requires l >= 0, and l <= C(n,t) for the without-replacement form.
Real draw_bound(int n, int t, const ExactInt& l, bool with_replacement);

/// Single i-term of draw_bound (diagnostic; used by the termwise
/// domination property tests).  1 <= i <= t+1.
Real draw_term(int n, int t, const ExactInt& l, int i, bool with_replacement);

/// Minimizes draw_bound over integer l in [0, C(n,t)] by unimodal search
/// with a final +-2 local scan.  For astronomically large C(n,t) the search
/// runs on a double-precision screen of the objective and the scan
/// granularity is limited by that parametrization; the reported value is
/// always the certified round-up evaluation at the reported l.
BoundResult draw_bound_min(int n, int t, bool with_replacement);

/// The t+1 terms f(i) of the eta sum, their scaled total, and diagnostics.
struct EtaDecomposition {
    std::vector<Real> terms;  ///< f(1)..f(t+1)
    Real eta;                 ///< (n-t)/(t+1) * sum of terms
    Real dominant_ratio;      ///< f(t+1) / sum of terms
    Real eqn_value;           ///< (1 - (n-t)^(-1/t) + eta) * C(n,t)
    Real value_at_log_point;  ///< prob_bound at the diagnostic point p = ln(n)/n
};

/// Evaluates the closed-form decomposition of prob_bound at p_min:
/// f(i) = (n-t)^(-(i/t) C(n-i,n-t-1)) * C(t+1,i)/C(n-i,n-t-1).
EtaDecomposition eta_decomposition(int n, int t);

// ---- partition-construction bounds -----------------------------------------

enum class KimRoushVariant { exact_form, loose_form };

/// Weighted-partition bound at block count parameter l: exact_form is
/// floor((1/l)C(n,t)) with the l*[C(n-fl,t) - C(n-fl-cl,t-cl)] additive part
/// (fl = floor(n/l), cl = ceil(n/l)); loose_form replaces the bracket by
/// cl*C(n-fl-1,t).  Requires t < n-2 and n/(n-t-2) <= l <= n.
ExactInt kim_roush_bound(int n, int t, int l, KimRoushVariant variant);

/// Minimum of kim_roush_bound over the valid l range (ties to smaller l).
BoundResult kim_roush_min(int n, int t, KimRoushVariant variant = KimRoushVariant::exact_form);

/// Bin-parity construction bound at parameter l:
/// floor((1/l)C(n,t)) + C(n-fl,t) + C(n-fl,t-fl) + g(n,t,l), where g sums
/// C(l,i)*i*(i-1) over ceil((t+1)/cl) <= i <= ceil((t+1)/fl).
/// Requires 0 < t < n, 1 <= l <= n.
ExactInt frankl_rodl_bound(int n, int t, int l);

/// Minimum of frankl_rodl_bound over l in [1, n] (ties to smaller l).
BoundResult frankl_rodl_min(int n, int t);

// ---- recurrence-based bounds -----------------------------------------------

/// Upper bound on the covering number C(i,k,k-1) used inside the recursion.
using CoveringBoundProvider = std::function<ExactInt(int i, int k)>;

/// floor((1/k)C(n,k-1) + ((k-1)/k)C(n-1,k-2)): the modular-residue covering
/// design count.  For k = 1 this is 1 and for k = 2 it is ceil(n/2), the
/// exact covering numbers, so it doubles as the default provider.
ExactInt kuzjurin_formula(int n, int k);

/// The telescoped recursion: sum_{i=k}^{n-1} provider(i,k), k = n-t-1.
/// Requires 0 < t < n-1.
ExactInt recurrent_sum(int n, int t, const CoveringBoundProvider& provider = kuzjurin_formula);

/// floor(((1+ln k)/k)(C(n,k)-1)) with round-up internal arithmetic.
/// Requires 0 < k < n-1.
ExactInt recurrent_a(int n, int k);

/// Separable-sum bound sum_{i=0}^{t} f_{n,t}(i, l_i) at an explicit l
/// vector, round-up.  Each l_i must be >= 2 with positive denominator
/// l_i - 1 - l_i(i-1)/(m+i), m = n-t-1.
Real recurrent_b(int n, int t, const std::vector<long>& ls);

/// Per-term minimization with each l_i searched over its validity range
/// capped at 10^6 (the i = 0 term has no attained minimum).  The reported
/// integer is the sum of per-term floors -- each term independently bounds
/// an integer covering number in the recursion, so flooring termwise is
/// valid; raw carries that integer and params records the l vector and the
/// unfloored sum.
BoundResult recurrent_b_min(int n, int t);

/// floor((1/k)C(n,k) + ((k-1)/k)C(n-1,k-1) - 1) in exact rational
/// arithmetic.  Requires 0 < k < n-1.
ExactInt recurrent_c(int n, int k);

/// floor((1-t/n)*turan_upper + C(n-1,t-1)) for any upper bound on
/// T(n,t+1,t).
ExactInt turan_to_se(int n, int t, const ExactInt& turan_upper);

// ---- stopping-redundancy sandwich ------------------------------------------

/// The classic (lower, upper) pair on stopping redundancy:
/// lower = floor(C(n,d-2)/(d-1)) + 1 (the published inequality is strict),
/// upper = floor(max(n-d+2, d-1)/n * C(n,d-2)).  Requires 3 <= d <= n.
std::pair<ExactInt, ExactInt> schwartz_vardy(int n, int d);

/// ceil(C(n,t+1) / (n-t-t/n+1/2)) in exact rational arithmetic.
/// Requires 0 < t < n-1.
ExactInt se_lower(int n, int t);

/// ceil((turan_lower + C(n-1,t)/(n-t-1/2)) / (1 + (n-t)/(n(n-t-1/2))))
/// for any valid lower bound on T(n-1,t+1,t); exact rational arithmetic.
ExactInt se_lower_theorem(int n, int t, const ExactInt& turan_lower);

// ---- per-cell selection -----------------------------------------------------

/// True for the upper bounds that compete for the winner tag (the fixed
/// comparison set: probabilistic, construction_a/b, recurrent_a/b/c,
/// schwartz_vardy_upper).  The drawing bounds are evaluated and reported but
/// are refinements of the probabilistic bound, not separate contenders.
bool in_winner_pool(BoundName name);

struct BestBounds {
    int n = 0, d = 0;
    std::vector<BoundResult> lowers;
    std::vector<BoundResult> uppers;
    ExactInt best_lower;
    ExactInt best_upper;  ///< minimum over the winner pool
    BoundName winner{};
};

/// Evaluates all bounds at t = d-2 (5 < d <= n), asserts that every lower
/// is at most every upper, and picks the winner (smallest pool value, ties
/// by the pool's fixed enumeration order).  construction_a is skipped when
/// d = n (its t < n-2 precondition fails there).
BestBounds best_bounds(int n, int d);

}  // namespace excov::bounds
