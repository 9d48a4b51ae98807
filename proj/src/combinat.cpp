#include "excov/combinat.hpp"

#include <mutex>
#include <vector>

namespace excov::combinat {

ExactInt ceil_div(const ExactInt& a, const ExactInt& b) {
    if (b <= 0) throw std::invalid_argument("ceil_div: divisor must be positive");
    ExactInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

ExactInt floor_div(const ExactInt& a, const ExactInt& b) {
    if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
    ExactInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

namespace {

constexpr long kTableMaxN = 512;

// Row-packed Pascal triangle up to kTableMaxN: row n starts at n(n+1)/2.
std::vector<ExactInt> g_pascal;
std::once_flag g_pascal_once;

void build_pascal() {
    g_pascal.resize(static_cast<size_t>(kTableMaxN + 1) * (kTableMaxN + 2) / 2);
    auto at = [](long n, long k) -> size_t {
        return static_cast<size_t>(n) * (n + 1) / 2 + static_cast<size_t>(k);
    };
    g_pascal[at(0, 0)] = 1;
    for (long n = 1; n <= kTableMaxN; ++n) {
        g_pascal[at(n, 0)] = 1;
        g_pascal[at(n, n)] = 1;
        for (long k = 1; k < n; ++k)
            g_pascal[at(n, k)] = g_pascal[at(n - 1, k - 1)] + g_pascal[at(n - 1, k)];
    }
}

}  // namespace

ExactInt binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    if (n <= kTableMaxN) {
        std::call_once(g_pascal_once, build_pascal);
        return g_pascal[static_cast<size_t>(n) * (n + 1) / 2 + static_cast<size_t>(k)];
    }
    ExactInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

const ExactInt& binomial_memo(long n, long k) {
    static const ExactInt zero = 0;
    if (n < 0 || n > kTableMaxN)
        throw std::invalid_argument("binomial_memo: need 0 <= n <= 512");
    if (k < 0 || k > n) return zero;
    std::call_once(g_pascal_once, build_pascal);
    return g_pascal[static_cast<size_t>(n) * (n + 1) / 2 + static_cast<size_t>(k)];
}

ExactInt phi(int n, int t, int i) {
    if (!(1 <= i && i <= t + 1 && t + 1 <= n))
        throw std::invalid_argument("phi: need 1 <= i <= t+1 <= n");
    return ExactInt(i) * binomial(n - i, t - i + 1);
}

ExactInt simple_lower(int n, int t) {
    if (!(0 < t && t < n)) throw std::invalid_argument("simple_lower: need 0 < t < n");
    return ceil_div(binomial(n, t + 1), ExactInt(n - t));
}

ExactInt schoenheim_lower(int n, int t) {
    if (!(0 < t && t < n)) throw std::invalid_argument("schoenheim_lower: need 0 < t < n");
    // Innermost ceiling first: v_j = ceil((n-j)/(n-t-j) * v_{j+1}), j = n-t-2 .. 0,
    // starting from v_{n-t-1} = 1.  Here the covering parameters are
    // (v, k, lambda-target) = (n, n-t, n-t-1) after complementation.
    ExactInt v = 1;
    for (int j = n - t - 2; j >= 0; --j)
        v = ceil_div(ExactInt(n - j) * v, ExactInt(n - t - j));
    return v;
}

ExactInt decaen_lower(int n, int t) {
    if (!(0 < t && t < n)) throw std::invalid_argument("decaen_lower: need 0 < t < n");
    return ceil_div(ExactInt(n - t) * binomial(n, t), ExactInt(t) * (n - t + 1));
}

}  // namespace excov::combinat
