#include "excov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

namespace excov::bounds {

using combinat::binomial;
using combinat::ceil_div;
using combinat::floor_div;

namespace {

std::string fmt_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string make_target(int n, int t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "S(%d,%d)", n, t);
    return buf;
}

ExactInt safe_binom(long n, long k) {
    return (n < 0) ? ExactInt(0) : binomial(n, k);
}

double ln_binom_d(long n, long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// Per-(n,t) term data shared by the probabilistic and drawing bounds:
/// index j holds subset size i = j+1 for i = 1..t+1.
struct TermTable {
    int n = 0, t = 0;
    std::vector<ExactInt> phi_z;
    std::vector<double> phi_d;
    std::vector<double> lnc;

    TermTable(int n_, int t_) : n(n_), t(t_) {
        phi_z.reserve(t + 1);
        for (int i = 1; i <= t + 1; ++i) {
            phi_z.push_back(combinat::phi(n, t, i));
            phi_d.push_back(mpz_get_d(phi_z.back().get_mpz_t()));
            lnc.push_back(ln_binom_d(n, i));
        }
    }
};

// ---- probabilistic bound ----------------------------------------------------

/// Double-precision objective for optimizer screening.  n <= 512 keeps every
/// magnitude below 2^506, comfortably inside double range.
double prob_screen(const TermTable& tt, double c_d, double p) {
    if (p >= 1.0) return c_d;
    double l1p = std::log1p(-p);
    double f = p * c_d;
    for (size_t j = 0; j < tt.lnc.size(); ++j) {
        double e = tt.lnc[j] + tt.phi_d[j] * l1p;
        if (e > -745.0) f += std::exp(e);
    }
    return f;
}

Real prob_eval_up(int n, int t, double p) {
    // Endpoints are exact integers; short-circuit to avoid log-domain slack.
    if (p == 0.0) {
        ExactInt s = 0;
        for (int i = 1; i <= t + 1; ++i) s += binomial(n, i);
        return Real::from_int(s, Rnd::up);
    }
    if (p == 1.0) return Real::from_int(binomial(n, t), Rnd::up);

    TermTable tt(n, t);
    // Double estimate of each term's log, used only to decide which terms to
    // skip; skipped mass is covered by a certified relative slack below.
    double l1p_d = std::log1p(-p);
    double emax = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < tt.lnc.size(); ++j)
        emax = std::max(emax, tt.lnc[j] + tt.phi_d[j] * l1p_d);

    Real l1p_up = log1p(Real(-p), Rnd::up);
    Real total = mul(Real(p), Real::from_int(binomial(n, t), Rnd::up), Rnd::up);
    Real terms(0.0);
    for (size_t j = 0; j < tt.lnc.size(); ++j) {
        if (tt.lnc[j] + tt.phi_d[j] * l1p_d < emax - 250.0) continue;
        Real lnc_up = log(Real::from_int(binomial(n, static_cast<long>(j) + 1), Rnd::up), Rnd::up);
        Real expo = add(lnc_up, mul(Real::from_int(tt.phi_z[j], Rnd::down), l1p_up, Rnd::up), Rnd::up);
        terms = add(terms, exp(expo, Rnd::up), Rnd::up);
    }
    // At most 512 skipped terms, each below e^(emax-250) up to double noise,
    // while the kept sum is at least the e^emax-scale maximum term: a 2^-330
    // relative slack covers the skipped mass with orders of magnitude to spare.
    terms = add(terms, mul(terms, Real::pow2(-330), Rnd::up), Rnd::up);
    return add(total, terms, Rnd::up);
}

// ---- drawing bounds ----------------------------------------------------------

mpfr_prec_t draw_prec(int n, int t, const ExactInt& c) {
    size_t bits = mpz_sizeinbase(c.get_mpz_t(), 2);
    ExactInt big = binomial(n, std::min<long>(t + 1, n / 2));
    bits = std::max(bits, mpz_sizeinbase(big.get_mpz_t(), 2));
    return std::max<mpfr_prec_t>(Real::kDefaultPrec, static_cast<mpfr_prec_t>(bits) + 64);
}

/// Certified round-up of the full i-term C(n,i)*R_i(l).  Conversions from
/// ExactInt are exact at prec (>= bits+64), so the falling-factorial log-gamma
/// arguments carry no input error; only the directed MPFR ops round.
Real draw_term_up(const ExactInt& c, const ExactInt& cni, const ExactInt& ph, const ExactInt& l,
                  bool with_replacement, mpfr_prec_t prec, const Real& lgc_dn, const Real& lgcl_up) {
    Real lnr(0.0);
    if (with_replacement) {
        Real ratio_dn = Real::from_ratio(ph, c, Rnd::down, prec);
        Real base_up = sub(Real(1.0), ratio_dn, Rnd::up);
        lnr = mul(Real::from_int(l, Rnd::down, prec), log(base_up, Rnd::up), Rnd::up);
    } else {
        Real lga_up = lgamma_pos(Real::from_int(c - ph + 1, Rnd::up, prec), Rnd::up);
        Real lgb_dn = lgamma_pos(Real::from_int(c - ph - l + 1, Rnd::down, prec), Rnd::down);
        lnr = sub(add(lga_up, lgcl_up, Rnd::up), add(lgc_dn, lgb_dn, Rnd::down), Rnd::up);
    }
    Real lnc_up = log(Real::from_int(cni, Rnd::up, prec), Rnd::up);
    return exp(add(lnc_up, lnr, Rnd::up), Rnd::up);
}

Real draw_eval_up(int n, int t, const ExactInt& l, bool with_replacement) {
    const ExactInt c = binomial(n, t);
    if (l == 0) {
        ExactInt s = 0;
        for (int i = 1; i <= t + 1; ++i) s += binomial(n, i);
        return Real::from_int(s, Rnd::up);
    }
    TermTable tt(n, t);
    const mpfr_prec_t prec = draw_prec(n, t, c);
    const double c_d = mpz_get_d(c.get_mpz_t());
    const double lnl_d = std::log(mpz_get_d(l.get_mpz_t()));
    const double lnc_top = std::log(c_d);

    Real lgc_dn(0.0), lgcl_up(0.0);
    if (!with_replacement) {
        lgc_dn = lgamma_pos(Real::from_int(c + 1, Rnd::down, prec), Rnd::down);
        lgcl_up = lgamma_pos(Real::from_int(c - l + 1, Rnd::up, prec), Rnd::up);
    }
    Real sum(0.0);
    for (size_t j = 0; j < tt.phi_z.size(); ++j) {
        const ExactInt& ph = tt.phi_z[j];
        if (!with_replacement && l > c - ph) continue;  // exactly zero
        // Sound skip: R <= exp(-l*phi/C) in both variants, so the term is
        // below e^(lnC_i - l*phi/C).  The test runs in log space to dodge
        // overflow; the 1e-9 haircut plus the -1200 vs -1690 slack margin
        // absorbs double round-off.
        double u = std::log(tt.phi_d[j]) + lnl_d - lnc_top;
        if (u > 50.0 || tt.lnc[j] - std::exp(u) * 0.999999999 < -1200.0) continue;
        sum = add(sum, draw_term_up(c, binomial(n, static_cast<long>(j) + 1), ph, l,
                                    with_replacement, prec, lgc_dn, lgcl_up),
                  Rnd::up);
    }
    Real f = add(Real::from_int(l, Rnd::up, prec), sum, Rnd::up);
    return add(f, Real::pow2(-1690), Rnd::up);  // covers <=512 skipped terms below e^-1199
}

/// Screening objective.  Three regimes:
///  - with replacement: log1p form, stable at any magnitude;
///  - without, C <= 1e10: double lgamma (absolute error ~1e-5, fine to steer);
///  - without, C  > 1e10: Euler-Maclaurin series of sum_j ln(1-phi/(C-j)),
///    valid because every term that can matter has phi/(C-l) tiny there.
struct DrawScreen {
    const TermTable* tt;
    double c_d;
    bool withrep;
    bool small_c;
    std::vector<double> a;  // lgamma(C-phi+1) - lgamma(C+1), small_c cache

    DrawScreen(const TermTable& terms, double c, bool wr) : tt(&terms), c_d(c), withrep(wr) {
        small_c = c_d <= 1e10;
        if (!withrep && small_c) {
            double lgc = std::lgamma(c_d + 1.0);
            for (double ph : tt->phi_d) a.push_back(std::lgamma(c_d - ph + 1.0) - lgc);
        }
    }

    double operator()(double l_d) const {
        double f = l_d;
        if (withrep) {
            for (size_t j = 0; j < tt->lnc.size(); ++j) {
                double e = tt->lnc[j] + l_d * std::log1p(-tt->phi_d[j] / c_d);
                if (e > -745.0) f += std::exp(e);
            }
        } else if (small_c) {
            double b = std::lgamma(c_d - l_d + 1.0);
            for (size_t j = 0; j < tt->lnc.size(); ++j) {
                if (l_d > c_d - tt->phi_d[j]) continue;
                double e = tt->lnc[j] + a[j] + b - std::lgamma(c_d - tt->phi_d[j] - l_d + 1.0);
                if (e > -745.0) f += std::exp(e);
            }
        } else {
            double mu = std::min(l_d / c_d, 1.0 - 1e-16);
            double h = -std::log1p(-mu) + 0.5 * (1.0 / c_d - 1.0 / (c_d - l_d));
            double t2 = l_d / (c_d * (c_d - l_d));
            for (size_t j = 0; j < tt->lnc.size(); ++j) {
                double ph = tt->phi_d[j];
                double lnr = std::min(0.0, -ph * h - 0.5 * ph * ph * t2);
                double e = tt->lnc[j] + lnr;
                if (e > -745.0) f += std::exp(e);
            }
        }
        return f;
    }
};

// ---- generic searches ---------------------------------------------------------

constexpr double kInvGolden = 0.6180339887498949;

/// Golden-section minimizer on [a, b] to absolute tolerance tol (assumes the
/// screen is unimodal on the bracket; the caller certifies the value it
/// reports at whatever point comes back).
template <typename F>
double golden_min(const F& f, double a, double b, double tol) {
    double x1 = b - kInvGolden * (b - a), x2 = a + kInvGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2, x2 = x1, f2 = f1;
            x1 = b - kInvGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1, x1 = x2, f1 = f2;
            x2 = a + kInvGolden * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

/// Integer golden-section: shrinks [lo, hi] to at most 9 points, then scans.
template <typename F>
uint64_t golden_min_u64(const F& f, uint64_t lo, uint64_t hi) {
    while (hi - lo > 8) {
        uint64_t w = hi - lo;
        uint64_t m1 = lo + static_cast<uint64_t>(static_cast<double>(w) * (1.0 - kInvGolden));
        uint64_t m2 = lo + static_cast<uint64_t>(static_cast<double>(w) * kInvGolden);
        if (m1 <= lo) m1 = lo + 1;
        if (m2 <= m1) m2 = m1 + 1;
        if (m2 >= hi) m2 = hi - 1;
        if (m1 >= m2) m1 = m2 - 1;
        if (f(static_cast<double>(m1)) <= f(static_cast<double>(m2)))
            hi = m2;
        else
            lo = m1;
    }
    uint64_t best = lo;
    double fb = f(static_cast<double>(lo));
    for (uint64_t l = lo + 1; l <= hi; ++l) {
        double v = f(static_cast<double>(l));
        if (v < fb) best = l, fb = v;
    }
    return best;
}

// ---- recurrent_b internals -----------------------------------------------------

constexpr long kRecurrentBCap = 1'000'000;

/// f_{n,t}(i, l) with directed rounding; all factors are positive so the
/// direction composes.  The rational pieces enter exactly via from_ratio.
Real recurrent_b_term(int n, int t, int i, long l, Rnd r, mpfr_prec_t prec) {
    const long m = n - t - 1;
    Real half_inv = Real::from_ratio(1, ExactInt(2) * l, r, prec);
    Real i_over_d(0.0);
    if (i > 0) {
        ExactInt den = ExactInt(l) * (m + 1) - (m + i);
        i_over_d = Real::from_ratio(ExactInt(i) * (m + i), den, r, prec);
    }
    Real bracket = add(Real(3.0), i_over_d, r);
    Real base = Real::from_ratio(ExactInt(l) - 1, ExactInt(l), r, prec);
    Real decay = pow_ui(base, static_cast<unsigned long>(i), r);
    Real inner = add(half_inv, div(mul(bracket, decay, r), Real(2.0), r), r);
    return mul(inner, Real::from_int(binomial(m + i, i), r, prec), r);
}

double recurrent_b_term_d(long m, int i, long l, double c_d) {
    double i_over_d = 0.0;
    if (i > 0) i_over_d = static_cast<double>(i) * (m + i) / (static_cast<double>(l) * (m + 1) - (m + i));
    double decay = (i == 0) ? 1.0 : std::exp(static_cast<double>(i) * std::log1p(-1.0 / static_cast<double>(l)));
    return (0.5 / static_cast<double>(l) + 0.5 * (3.0 + i_over_d) * decay) * c_d;
}

/// floor(f_{n,t}(i,l)).  Exact (bracketed by both rounding directions) while
/// the value fits ~140 bits, which covers every cell where per-unit accuracy
/// is meaningful; beyond that the round-up floor keeps the sum a valid upper
/// bound and the double fast path keeps the sweep affordable.
ExactInt recurrent_b_term_floor(int n, int t, int i, long l) {
    const long m = n - t - 1;
    double f_d = recurrent_b_term_d(m, i, l, mpz_get_d(binomial(m + i, i).get_mpz_t()));
    if (f_d > 1e45) {
        double ub = f_d * (1.0 + 1e-11);  // >= true f under the libm error model
        ExactInt v;
        mpz_set_d(v.get_mpz_t(), ub);  // truncation == floor for positive values
        return v;
    }
    if (f_d < 4.0e15) {
        // Doubles still resolve integers here; when the +-1e-11 relative
        // bracket (same libm error model as above) excludes every integer,
        // the floor is already certain without any extended-precision work.
        double lo_d = std::floor(f_d * (1.0 - 1e-11));
        double hi_d = std::floor(f_d * (1.0 + 1e-11));
        if (lo_d == hi_d && lo_d >= 0.0) return ExactInt(lo_d);
    }
    for (mpfr_prec_t prec = Real::kDefaultPrec; prec <= 1536; prec *= 2) {
        ExactInt lo = recurrent_b_term(n, t, i, l, Rnd::down, prec).floor_int();
        ExactInt hi = recurrent_b_term(n, t, i, l, Rnd::up, prec).floor_int();
        if (lo == hi) return lo;
    }
    // Only reachable if f sits essentially on an integer; the round-up floor
    // equals that integer (or safely one above), still a valid upper bound.
    return recurrent_b_term(n, t, i, l, Rnd::up, 1536).floor_int();
}

long recurrent_b_lmin(long m, int i) {
    return std::max<long>(2, (m + i) / (m + 1) + 1);
}

// ---- drawing-bound minimizers ---------------------------------------------------

BoundResult draw_min_impl(int n, int t, bool with_replacement) {
    if (!(0 < t && t < n)) throw std::invalid_argument("draw_bound_min: need 0 < t < n");
    const ExactInt c = binomial(n, t);
    TermTable tt(n, t);
    const double c_d = mpz_get_d(c.get_mpz_t());
    DrawScreen screen(tt, c_d, with_replacement);

    BoundResult out;
    out.name = with_replacement ? BoundName::draw_with_replacement : BoundName::draw_norepl;
    out.kind = BoundKind::upper;
    out.target = make_target(n, t);

    if (mpz_fits_ulong_p(c.get_mpz_t()) && c < (ExactInt(1) << 62)) {
        // Integer search over the full range, certified +-2 scan at the end.
        uint64_t cand = golden_min_u64(screen, 0, mpz_get_ui(c.get_mpz_t()));
        ExactInt best_l;
        Real best_raw = Real::pos_inf();
        for (int off = -2; off <= 2; ++off) {
            long long pos = static_cast<long long>(cand) + off;
            if (pos < 0) continue;
            ExactInt l(static_cast<unsigned long>(pos));
            if (l > c) continue;
            Real v = draw_eval_up(n, t, l, with_replacement);
            if (v < best_raw) best_raw = v, best_l = l;
        }
        out.raw = best_raw;
        out.value = best_raw.floor_int();
        out.params = "l=" + best_l.get_str();
    } else {
        // C(n,t) is astronomically large: search the double screen over the
        // drawn fraction mu = l/C, then certify once at the chosen integer.
        auto f_mu = [&](double mu) { return screen(mu * c_d); };
        double mu = golden_min(f_mu, 1e-18, 1.0 - 1e-12, 1e-15);
        ExactInt l = mul(Real(mu), Real::from_int(c, Rnd::near, draw_prec(n, t, c)), Rnd::near).floor_int();
        if (l < 1) l = 1;
        if (l > c) l = c;
        out.raw = draw_eval_up(n, t, l, with_replacement);
        out.value = out.raw.floor_int();
        out.params = "l=" + l.get_str() + ";mu=" + fmt_double(mu);
    }
    return out;
}

}  // namespace

// ---- public: names ---------------------------------------------------------------

std::string bound_label(BoundName name) {
    switch (name) {
        case BoundName::schwartz_vardy_lower: return "schwartz_vardy_lower";
        case BoundName::simple_lower: return "simple_lower";
        case BoundName::schoenheim: return "schoenheim";
        case BoundName::decaen: return "decaen";
        case BoundName::se_lower: return "se_lower";
        case BoundName::probabilistic: return "probabilistic";
        case BoundName::draw_norepl: return "draw_norepl";
        case BoundName::draw_with_replacement: return "draw_with_replacement";
        case BoundName::construction_a: return "construction_a";
        case BoundName::construction_b: return "construction_b";
        case BoundName::recurrent_a: return "recurrent_a";
        case BoundName::recurrent_b: return "recurrent_b";
        case BoundName::recurrent_c: return "recurrent_c";
        case BoundName::schwartz_vardy_upper: return "schwartz_vardy_upper";
        case BoundName::turan_to_se: return "turan_to_se";
        case BoundName::se_lower_theorem: return "se_lower_theorem";
    }
    throw std::logic_error("bound_label: unknown name");
}

// ---- public: probabilistic ---------------------------------------------------------

Real prob_bound(int n, int t, double p) {
    if (!(0 < t && t < n)) throw std::invalid_argument("prob_bound: need 0 < t < n");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("prob_bound: need 0 <= p <= 1");
    return prob_eval_up(n, t, p);
}

BoundResult prob_bound_min(int n, int t) {
    if (!(0 < t && t < n)) throw std::invalid_argument("prob_bound_min: need 0 < t < n");
    TermTable tt(n, t);
    const double c_d = mpz_get_d(binomial(n, t).get_mpz_t());
    auto f = [&](double p) { return prob_screen(tt, c_d, p); };

    // Coarse 64-interval scan: locate the best sample and check empirical
    // unimodality; fall back to a dense grid if the shape looks multimodal.
    constexpr int kCoarse = 64;
    std::vector<double> fs(kCoarse + 1);
    for (int k = 0; k <= kCoarse; ++k) fs[k] = f(static_cast<double>(k) / kCoarse);
    int kstar = 0;
    for (int k = 1; k <= kCoarse; ++k)
        if (fs[k] < fs[kstar]) kstar = k;
    bool unimodal = true;
    for (int k = 0; k < kCoarse && unimodal; ++k) {
        if (k < kstar && fs[k] < fs[k + 1] * (1.0 - 1e-9)) unimodal = false;
        if (k >= kstar && fs[k + 1] < fs[k] * (1.0 - 1e-9)) unimodal = false;
    }
    double lo, hi;
    if (unimodal) {
        lo = static_cast<double>(std::max(kstar - 1, 0)) / kCoarse;
        hi = static_cast<double>(std::min(kstar + 1, kCoarse)) / kCoarse;
    } else {
        constexpr int kDense = 4096;
        int best = 0;
        double fb = f(0.0);
        for (int k = 1; k <= kDense; ++k) {
            double v = f(static_cast<double>(k) / kDense);
            if (v < fb) best = k, fb = v;
        }
        lo = static_cast<double>(std::max(best - 1, 0)) / kDense;
        hi = static_cast<double>(std::min(best + 1, kDense)) / kDense;
    }
    double p_star = golden_min(f, lo, hi, 1e-12);
    const double p_seed = -std::expm1(-std::log(static_cast<double>(n - t)) / t);
    if (f(p_seed) < f(p_star)) p_star = p_seed;  // closed-form seed safety net

    BoundResult out;
    out.name = BoundName::probabilistic;
    out.kind = BoundKind::upper;
    out.target = make_target(n, t);
    out.raw = prob_eval_up(n, t, p_star);
    out.value = out.raw.floor_int();
    out.params = "p=" + fmt_double(p_star) + ";p_seed=" + fmt_double(p_seed);
    return out;
}

// ---- public: drawing ----------------------------------------------------------------

Real draw_bound(int n, int t, const ExactInt& l, bool with_replacement) {
    if (!(0 < t && t < n)) throw std::invalid_argument("draw_bound: need 0 < t < n");
    if (l < 0) throw std::invalid_argument("draw_bound: need l >= 0");
    if (!with_replacement && l > binomial(n, t))
        throw std::invalid_argument("draw_bound: without replacement needs l <= C(n,t)");
    return draw_eval_up(n, t, l, with_replacement);
}

Real draw_term(int n, int t, const ExactInt& l, int i, bool with_replacement) {
    if (!(0 < t && t < n)) throw std::invalid_argument("draw_term: need 0 < t < n");
    if (!(1 <= i && i <= t + 1)) throw std::invalid_argument("draw_term: need 1 <= i <= t+1");
    if (l < 0) throw std::invalid_argument("draw_term: need l >= 0");
    const ExactInt c = binomial(n, t);
    if (!with_replacement && l > c)
        throw std::invalid_argument("draw_term: without replacement needs l <= C(n,t)");
    const ExactInt ph = combinat::phi(n, t, i);
    if (l == 0) return Real::from_int(binomial(n, i), Rnd::up);
    if (!with_replacement && l > c - ph) return Real(0.0);
    const mpfr_prec_t prec = draw_prec(n, t, c);
    Real lgc_dn(0.0), lgcl_up(0.0);
    if (!with_replacement) {
        lgc_dn = lgamma_pos(Real::from_int(c + 1, Rnd::down, prec), Rnd::down);
        lgcl_up = lgamma_pos(Real::from_int(c - l + 1, Rnd::up, prec), Rnd::up);
    }
    return draw_term_up(c, binomial(n, i), ph, l, with_replacement, prec, lgc_dn, lgcl_up);
}

BoundResult draw_bound_min(int n, int t, bool with_replacement) {
    return draw_min_impl(n, t, with_replacement);
}

// ---- public: eta decomposition ---------------------------------------------------------

EtaDecomposition eta_decomposition(int n, int t) {
    if (!(0 < t && t < n)) throw std::invalid_argument("eta_decomposition: need 0 < t < n");
    constexpr mpfr_prec_t kPrec = 256;
    EtaDecomposition out;
    Real lnq = log(Real(static_cast<double>(n - t)), Rnd::near);
    Real sum(0.0);
    for (int i = 1; i <= t + 1; ++i) {
        ExactInt cb = binomial(n - i, n - t - 1);
        Real expo = mul(mul(Real::from_ratio(i, t, Rnd::near, kPrec),
                            Real::from_int(cb, Rnd::near, kPrec), Rnd::near),
                        lnq, Rnd::near);
        Real f = mul(exp(neg(expo), Rnd::near),
                     Real::from_ratio(binomial(t + 1, i), cb, Rnd::near, kPrec), Rnd::near);
        out.terms.push_back(f);
        sum = add(sum, f, Rnd::near);
    }
    out.eta = mul(Real::from_ratio(n - t, t + 1, Rnd::near, kPrec), sum, Rnd::near);
    out.dominant_ratio = div(out.terms.back(), sum, Rnd::near);
    Real root = exp(neg(div(lnq, Real(static_cast<double>(t)), Rnd::near)), Rnd::near);
    Real paren = add(sub(Real(1.0), root, Rnd::near), out.eta, Rnd::near);
    out.eqn_value = mul(paren, Real::from_int(binomial(n, t), Rnd::near, kPrec), Rnd::near);
    out.value_at_log_point = prob_bound(n, t, std::log(static_cast<double>(n)) / n);
    return out;
}

// ---- public: partition constructions ------------------------------------------------------

ExactInt kim_roush_bound(int n, int t, int l, KimRoushVariant variant) {
    if (!(0 < t && t < n - 2)) throw std::invalid_argument("kim_roush_bound: need 0 < t < n-2");
    const long lmin = (n + (n - t - 2) - 1) / (n - t - 2);
    if (!(lmin <= l && l <= n))
        throw std::invalid_argument("kim_roush_bound: need n/(n-t-2) <= l <= n");
    const long fl = n / l, cl = (n + l - 1) / l;
    ExactInt bracket;
    if (variant == KimRoushVariant::exact_form)
        bracket = binomial(n - fl, t) - safe_binom(n - fl - cl, t - cl);
    else
        bracket = ExactInt(cl) * binomial(n - fl - 1, t);
    return floor_div(binomial(n, t), ExactInt(l)) + ExactInt(l) * bracket;
}

BoundResult kim_roush_min(int n, int t, KimRoushVariant variant) {
    if (!(0 < t && t < n - 2)) throw std::invalid_argument("kim_roush_min: need 0 < t < n-2");
    const int lmin = static_cast<int>((n + (n - t - 2) - 1) / (n - t - 2));
    BoundResult out;
    out.name = BoundName::construction_a;
    out.kind = BoundKind::upper;
    out.target = make_target(n, t);
    int l_best = lmin;
    ExactInt best = kim_roush_bound(n, t, lmin, variant);
    for (int l = lmin + 1; l <= n; ++l) {
        ExactInt v = kim_roush_bound(n, t, l, variant);
        if (v < best) best = v, l_best = l;
    }
    out.value = best;
    out.raw = Real::from_int(best, Rnd::up);
    char buf[32];
    std::snprintf(buf, sizeof buf, "l=%d", l_best);
    out.params = buf;
    return out;
}

ExactInt frankl_rodl_bound(int n, int t, int l) {
    if (!(0 < t && t < n)) throw std::invalid_argument("frankl_rodl_bound: need 0 < t < n");
    if (!(1 <= l && l <= n)) throw std::invalid_argument("frankl_rodl_bound: need 1 <= l <= n");
    const long fl = n / l, cl = (n + l - 1) / l;
    ExactInt g = 0;
    const long ilo = (t + 1 + cl - 1) / cl, ihi = (t + 1 + fl - 1) / fl;
    for (long i = ilo; i <= ihi; ++i) g += binomial(l, i) * i * (i - 1);
    return floor_div(binomial(n, t), ExactInt(l)) + binomial(n - fl, t) + binomial(n - fl, t - fl) + g;
}

BoundResult frankl_rodl_min(int n, int t) {
    if (!(0 < t && t < n)) throw std::invalid_argument("frankl_rodl_min: need 0 < t < n");
    BoundResult out;
    out.name = BoundName::construction_b;
    out.kind = BoundKind::upper;
    out.target = make_target(n, t);
    int l_best = 1;
    ExactInt best = frankl_rodl_bound(n, t, 1);
    for (int l = 2; l <= n; ++l) {
        // The overflow term g is nonnegative, so when the g-free part already
        // fails to beat the incumbent the full value cannot win either.
        const long fl = n / l;
        ExactInt main_part = floor_div(binomial(n, t), ExactInt(l)) + binomial(n - fl, t) +
                             binomial(n - fl, t - fl);
        if (main_part >= best) continue;
        ExactInt v = frankl_rodl_bound(n, t, l);
        if (v < best) best = v, l_best = l;
    }
    out.value = best;
    out.raw = Real::from_int(best, Rnd::up);
    char buf[32];
    std::snprintf(buf, sizeof buf, "l=%d", l_best);
    out.params = buf;
    return out;
}

// ---- public: recurrences -------------------------------------------------------------------

ExactInt kuzjurin_formula(int n, int k) {
    if (!(1 <= k && k <= n)) throw std::invalid_argument("kuzjurin_formula: need 1 <= k <= n");
    return floor_div(binomial(n, k - 1) + ExactInt(k - 1) * binomial(n - 1, k - 2), ExactInt(k));
}

ExactInt recurrent_sum(int n, int t, const CoveringBoundProvider& provider) {
    if (!(0 < t && t < n - 1)) throw std::invalid_argument("recurrent_sum: need 0 < t < n-1");
    const int k = n - t - 1;
    ExactInt total = 0;
    for (int i = k; i <= n - 1; ++i) total += provider(i, k);
    return total;
}

ExactInt recurrent_a(int n, int k) {
    if (!(0 < k && k < n - 1)) throw std::invalid_argument("recurrent_a: need 0 < k < n-1");
    Real factor = div(add(Real(1.0), log(Real(static_cast<double>(k)), Rnd::up), Rnd::up),
                      Real(static_cast<double>(k)), Rnd::up);
    return mul(factor, Real::from_int(binomial(n, k) - 1, Rnd::up), Rnd::up).floor_int();
}

Real recurrent_b(int n, int t, const std::vector<long>& ls) {
    if (!(0 < t && t < n - 1)) throw std::invalid_argument("recurrent_b: need 0 < t < n-1");
    if (ls.size() != static_cast<size_t>(t + 1))
        throw std::invalid_argument("recurrent_b: need one l per term, i = 0..t");
    const long m = n - t - 1;
    Real sum(0.0);
    for (int i = 0; i <= t; ++i) {
        if (ls[i] < recurrent_b_lmin(m, i))
            throw std::invalid_argument("recurrent_b: l out of the valid range");
        sum = add(sum, recurrent_b_term(n, t, i, ls[i], Rnd::up, Real::kDefaultPrec), Rnd::up);
    }
    return sum;
}

BoundResult recurrent_b_min(int n, int t) {
    if (!(0 < t && t < n - 1)) throw std::invalid_argument("recurrent_b_min: need 0 < t < n-1");
    const long m = n - t - 1;
    BoundResult out;
    out.name = BoundName::recurrent_b;
    out.kind = BoundKind::upper;
    out.target = make_target(n, t);

    ExactInt total = 0;
    double unfloored = 0.0;
    std::string ls = "l=[";
    long prev = 2;
    for (int i = 0; i <= t; ++i) {
        const double c_d = mpz_get_d(binomial(m + i, i).get_mpz_t());
        const long lmin = recurrent_b_lmin(m, i);
        long best;
        if (i == 0) {
            best = kRecurrentBCap;  // f(0,l) = 1/(2l) + 3/2 decreases forever
        } else {
            // Warm-started dip walk: step downhill from the previous interior
            // optimum (the dip moves by O(1) per term), look ahead 8 steps,
            // and compare the range endpoints.  When the large-l tail
            // approaches its asymptote from above the true minimum sits at
            // the cap; the endpoint candidate catches that exactly, so both
            // walks can stay short.
            constexpr long kMaxWalk = 4096;
            best = std::clamp(prev, lmin, kRecurrentBCap);
            double fb = recurrent_b_term_d(m, i, best, c_d);
            long steps = 0;
            for (long l = best - 1; l >= lmin && steps < kMaxWalk; --l, ++steps) {
                double v = recurrent_b_term_d(m, i, l, c_d);
                if (v < fb) best = l, fb = v;
                else break;
            }
            int miss = 0;
            steps = 0;
            for (long l = best + 1; l <= kRecurrentBCap && miss < 8 && steps < kMaxWalk; ++l, ++steps) {
                double v = recurrent_b_term_d(m, i, l, c_d);
                if (v < fb) best = l, fb = v, miss = 0;
                else ++miss;
            }
            for (long cand : {lmin, kRecurrentBCap}) {
                double v = recurrent_b_term_d(m, i, cand, c_d);
                if (v < fb || (v == fb && cand < best)) best = cand, fb = v;
            }
            prev = best;
        }
        total += recurrent_b_term_floor(n, t, i, best);
        unfloored += recurrent_b_term_d(m, i, best, c_d);
        if (i > 0) ls += ",";
        ls += std::to_string(best);
    }
    ls += "]";
    out.value = total;
    out.raw = Real::from_int(total, Rnd::up);
    char buf[48];
    std::snprintf(buf, sizeof buf, ";unfloored=%.10g", unfloored);
    out.params = ls + buf;
    return out;
}

ExactInt recurrent_c(int n, int k) {
    if (!(0 < k && k < n - 1)) throw std::invalid_argument("recurrent_c: need 0 < k < n-1");
    return floor_div(binomial(n, k) + ExactInt(k - 1) * binomial(n - 1, k - 1) - k, ExactInt(k));
}

ExactInt turan_to_se(int n, int t, const ExactInt& turan_upper) {
    if (!(0 < t && t < n)) throw std::invalid_argument("turan_to_se: need 0 < t < n");
    if (turan_upper < 0) throw std::invalid_argument("turan_to_se: need a nonnegative bound");
    return floor_div(ExactInt(n - t) * turan_upper, ExactInt(n)) + binomial(n - 1, t - 1);
}

// ---- public: stopping-redundancy sandwich -------------------------------------------------

std::pair<ExactInt, ExactInt> schwartz_vardy(int n, int d) {
    if (!(3 <= d && d <= n)) throw std::invalid_argument("schwartz_vardy: need 3 <= d <= n");
    const ExactInt q = binomial(n, d - 2);
    // The published lower inequality is strict, so it rounds to floor+1
    // whether or not d-1 divides C(n,d-2).
    ExactInt lower = floor_div(q, ExactInt(d - 1)) + 1;
    ExactInt upper = floor_div(ExactInt(std::max(n - d + 2, d - 1)) * q, ExactInt(n));
    return {lower, upper};
}

ExactInt se_lower(int n, int t) {
    if (!(0 < t && t < n - 1)) throw std::invalid_argument("se_lower: need 0 < t < n-1");
    // ceil(C(n,t+1) / (n - t - t/n + 1/2)) with the denominator cleared by 2n.
    return ceil_div(ExactInt(2) * n * binomial(n, t + 1),
                    ExactInt(2) * n * (n - t) - 2 * t + n);
}

ExactInt se_lower_theorem(int n, int t, const ExactInt& turan_lower) {
    if (!(0 < t && t < n - 1)) throw std::invalid_argument("se_lower_theorem: need 0 < t < n-1");
    if (turan_lower < 0) throw std::invalid_argument("se_lower_theorem: need a nonnegative bound");
    // Clear denominators by n(2(n-t)-1).
    const ExactInt scale = ExactInt(n) * (2 * (n - t) - 1);
    ExactInt num = scale * turan_lower + ExactInt(2) * n * binomial(n - 1, t);
    ExactInt den = scale + 2 * (n - t);
    return ceil_div(num, den);
}

// ---- public: per-cell selection --------------------------------------------------------------

bool in_winner_pool(BoundName name) {
    switch (name) {
        case BoundName::probabilistic:
        case BoundName::construction_a:
        case BoundName::construction_b:
        case BoundName::recurrent_a:
        case BoundName::recurrent_b:
        case BoundName::recurrent_c:
        case BoundName::schwartz_vardy_upper:
            return true;
        default:
            return false;
    }
}

BestBounds best_bounds(int n, int d) {
    if (!(5 < d && d <= n)) throw std::invalid_argument("best_bounds: need 5 < d <= n");
    const int t = d - 2;
    const int k = n - t - 1;
    BestBounds out;
    out.n = n;
    out.d = d;
    auto [sv_lo, sv_up] = schwartz_vardy(n, d);
    const std::string target = make_target(n, t);

    auto lower = [&](BoundName name, ExactInt v) {
        out.lowers.push_back({name, BoundKind::lower, v, Real::from_int(v, Rnd::down), "", target});
    };
    lower(BoundName::schwartz_vardy_lower, sv_lo);
    lower(BoundName::simple_lower, combinat::simple_lower(n, t));
    lower(BoundName::schoenheim, combinat::schoenheim_lower(n, t));
    lower(BoundName::decaen, combinat::decaen_lower(n, t));
    lower(BoundName::se_lower, se_lower(n, t));

    auto upper = [&](BoundName name, ExactInt v) {
        out.uppers.push_back({name, BoundKind::upper, v, Real::from_int(v, Rnd::up), "", target});
    };
    out.uppers.push_back(prob_bound_min(n, t));
    out.uppers.push_back(draw_bound_min(n, t, /*with_replacement=*/false));
    out.uppers.push_back(draw_bound_min(n, t, /*with_replacement=*/true));
    if (t < n - 2) out.uppers.push_back(kim_roush_min(n, t));
    out.uppers.push_back(frankl_rodl_min(n, t));
    upper(BoundName::recurrent_a, recurrent_a(n, k));
    out.uppers.push_back(recurrent_b_min(n, t));
    upper(BoundName::recurrent_c, recurrent_c(n, k));
    upper(BoundName::schwartz_vardy_upper, sv_up);

    out.best_lower = out.lowers.front().value;
    for (const auto& b : out.lowers) out.best_lower = std::max(out.best_lower, b.value);

    bool have = false;
    for (const auto& b : out.uppers) {
        if (!in_winner_pool(b.name)) continue;
        if (!have || b.value < out.best_upper) {
            out.best_upper = b.value;
            out.winner = b.name;
            have = true;
        }
    }
    if (!have) throw std::logic_error("best_bounds: empty winner pool");

    for (const auto& lo : out.lowers)
        for (const auto& up : out.uppers)
            if (lo.value > up.value)
                throw std::logic_error("best_bounds: lower bound " + bound_label(lo.name) +
                                       " exceeds upper bound " + bound_label(up.name) + " at " +
                                       target);
    return out;
}

}  // namespace excov::bounds
