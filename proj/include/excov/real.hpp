#pragma once

// Thin RAII wrapper over MPFR with *explicit* directed rounding on every
// inexact operation.  Bound evaluations compose these so that an "upper"
// pipeline only ever rounds toward +inf and a "lower" pipeline toward -inf;
// a floored round-up value is still a valid upper bound at any precision,
// so precision affects tightness, never soundness.

#include <mpfr.h>

#include <string>
#include <utility>

#include "excov/combinat.hpp"

namespace excov {

/// Rounding direction, passed explicitly to every inexact operation.
enum class Rnd { down, up, near };

inline mpfr_rnd_t mpfr_mode(Rnd r) {
    switch (r) {
        case Rnd::down: return MPFR_RNDD;
        case Rnd::up: return MPFR_RNDU;
        default: return MPFR_RNDN;
    }
}

/// Extended-precision real.  Default precision is 192 bits; pipelines with
/// exact big-integer inputs (e.g. falling-factorial ratios) may request more
/// so conversions from ExactInt stay exact.
class Real {
  public:
    static constexpr mpfr_prec_t kDefaultPrec = 192;

    Real() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    /// doubles convert exactly (53 < 192 bits).
    explicit Real(double x) { mpfr_init2(v_, kDefaultPrec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    /// Conversion from an exact integer rounds (ExactInt may exceed the
    /// precision), so the direction must be stated.
    static Real from_int(const ExactInt& z, Rnd r, mpfr_prec_t prec = kDefaultPrec) {
        Real x(prec);
        mpfr_set_z(x.v_, z.get_mpz_t(), mpfr_mode(r));
        return x;
    }

    static Real from_long(long v) {
        Real x;
        mpfr_set_si(x.v_, v, MPFR_RNDN);  // exact: |v| < 2^63 < 2^192
        return x;
    }

    /// num/den rounded in direction r (den > 0).
    static Real from_ratio(const ExactInt& num, const ExactInt& den, Rnd r,
                           mpfr_prec_t prec = kDefaultPrec) {
        mpq_class q(num, den);
        q.canonicalize();
        Real x(prec);
        mpfr_set_q(x.v_, q.get_mpq_t(), mpfr_mode(r));
        return x;
    }

    /// Exact power of two (2^e), e.g. for certified tail slack.
    static Real pow2(long e) {
        Real x;
        mpfr_set_ui_2exp(x.v_, 1, e, MPFR_RNDN);
        return x;
    }

    static Real pos_inf() {
        Real x;
        mpfr_set_inf(x.v_, 1);
        return x;
    }

    double to_double(Rnd r = Rnd::near) const { return mpfr_get_d(v_, mpfr_mode(r)); }

    /// floor/ceil to an exact integer (always exact).
    ExactInt floor_int() const {
        ExactInt z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    ExactInt ceil_int() const {
        ExactInt z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
        return z;
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    std::string str(int digits = 20) const {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    // Binary operations; the result adopts the wider operand precision.
  #define EXCOV_REAL_BINOP(name, fn)                                      \
    friend Real name(const Real& a, const Real& b, Rnd r) {               \
        Real out(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));     \
        fn(out.v_, a.v_, b.v_, mpfr_mode(r));                             \
        return out;                                                       \
    }
    EXCOV_REAL_BINOP(add, mpfr_add)
    EXCOV_REAL_BINOP(sub, mpfr_sub)
    EXCOV_REAL_BINOP(mul, mpfr_mul)
    EXCOV_REAL_BINOP(div, mpfr_div)
  #undef EXCOV_REAL_BINOP

  #define EXCOV_REAL_UNOP(name, fn)                        \
    friend Real name(const Real& a, Rnd r) {               \
        Real out(mpfr_get_prec(a.v_));                     \
        fn(out.v_, a.v_, mpfr_mode(r));                    \
        return out;                                        \
    }
    EXCOV_REAL_UNOP(log, mpfr_log)
    EXCOV_REAL_UNOP(log1p, mpfr_log1p)
    EXCOV_REAL_UNOP(exp, mpfr_exp)
    EXCOV_REAL_UNOP(sqrt, mpfr_sqrt)
  #undef EXCOV_REAL_UNOP

    /// log Gamma, defined here only for positive arguments.
    friend Real lgamma_pos(const Real& a, Rnd r) {
        Real out(mpfr_get_prec(a.v_));
        mpfr_lngamma(out.v_, a.v_, mpfr_mode(r));
        return out;
    }

    /// Negation is exact in binary floating point.
    friend Real neg(const Real& a) {
        Real out(mpfr_get_prec(a.v_));
        mpfr_neg(out.v_, a.v_, MPFR_RNDN);
        return out;
    }

    /// a^e for unsigned e.
    friend Real pow_ui(const Real& a, unsigned long e, Rnd r) {
        Real out(mpfr_get_prec(a.v_));
        mpfr_pow_ui(out.v_, a.v_, e, mpfr_mode(r));
        return out;
    }

  private:
    mpfr_t v_;
};

}  // namespace excov
