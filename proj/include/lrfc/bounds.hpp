#pragma once

#include "lrfc/codes.hpp"

#include <cmath>
#include <stdexcept>

namespace lrfc {

struct BoundPair {
    double lower = 0;
    double upper = 0;
};

namespace detail {

inline long double log_binom(int n, int k) {
    return lgammal(static_cast<long double>(n) + 1) - lgammal(static_cast<long double>(k) + 1) -
           lgammal(static_cast<long double>(n - k) + 1);
}

inline long double binom_pmf(int n, int i, long double p) {
    if (i < 0 || i > n) return 0;
    if (p <= 0) return i == 0 ? 1 : 0;
    if (p >= 1) return i == n ? 1 : 0;
    return expl(log_binom(n, i) + i * logl(p) + (n - i) * logl(1 - p));
}

inline double clamp01(long double x) {
    if (x < 0) return 0;
    if (x > 1) return 1;
    return static_cast<double>(x);
}

}  // namespace detail

// Failure probability after collecting k + delta symbols of a pure random
// fountain over GF(q): q^{-delta-1} <= Pf < q^{-delta} / (q-1).
inline BoundPair lrfc_bounds(int q, int delta) {
    if (q < 2 || delta < 0) throw std::invalid_argument("lrfc_bounds needs q >= 2, delta >= 0");
    long double lo = powl(static_cast<long double>(q), -static_cast<long double>(delta) - 1);
    long double up = powl(static_cast<long double>(q), -static_cast<long double>(delta)) / (q - 1);
    return {detail::clamp01(lo), detail::clamp01(up)};
}

// P(eps): probability that fewer than k of the n prefix symbols survive the
// erasure channel. Lower binomial tail, summed term-by-term (all positive).
inline double prefix_loss_prob(int n, int k, double eps) {
    if (k > n) throw std::invalid_argument("prefix_loss_prob needs k <= n");
    long double p = 0;
    for (int i = 0; i < k; ++i) p += detail::binom_pmf(n, i, 1.0L - static_cast<long double>(eps));
    return detail::clamp01(p);
}

// The fountain band scaled by the probability that the MDS prefix alone was
// not enough.
inline BoundPair concat_bounds(const CodeSpec& spec, int delta, double eps) {
    if (!spec.mds()) throw std::invalid_argument("concat_bounds needs an MDS prefix family");
    const double p = prefix_loss_prob(spec.n, spec.k, eps);
    BoundPair b = lrfc_bounds(spec.field->q(), delta);
    return {detail::clamp01(static_cast<long double>(b.lower) * p),
            detail::clamp01(static_cast<long double>(b.upper) * p)};
}

// S(delta_tx, m): chance a receiver holds exactly m of the k + delta_tx sent
// symbols.
inline double overhead_pmf(int delta_tx, int m, int k, double eps) {
    return detail::clamp01(detail::binom_pmf(k + delta_tx, m, 1.0L - static_cast<long double>(eps)));
}

enum class FountainModel { LRFC, CONCAT_UPPER, CONCAT_LOWER, IDEAL };

inline const char* model_name(FountainModel m) {
    switch (m) {
        case FountainModel::LRFC: return "lrfc";
        case FountainModel::CONCAT_UPPER: return "concat-upper";
        case FountainModel::CONCAT_LOWER: return "concat-lower";
        default: return "ideal";
    }
}

// P_e: failure probability of one receiver after k + delta_tx symbols were
// sent, marginalized over how many it caught. The per-overhead failure term
// is swapped per scheme model.
inline double receiver_failure(const CodeSpec& spec, int delta_tx, double eps, FountainModel model) {
    if (delta_tx < 0) throw std::invalid_argument("transmission overhead must be >= 0");
    const int k = spec.k, q = spec.field->q();
    const long double p_loss =
        (model == FountainModel::CONCAT_UPPER || model == FountainModel::CONCAT_LOWER)
            ? prefix_loss_prob(spec.n, spec.k, eps)
            : 0.0L;
    long double pe = 0;
    for (int m = 0; m < k; ++m) pe += detail::binom_pmf(k + delta_tx, m, 1.0L - static_cast<long double>(eps));
    for (int m = k; m <= k + delta_tx; ++m) {
        const int delta = m - k;
        long double pf = 0;
        switch (model) {
            case FountainModel::LRFC:
                pf = powl(static_cast<long double>(q), -static_cast<long double>(delta)) / (q - 1);
                break;
            case FountainModel::CONCAT_UPPER:
                pf = p_loss * powl(static_cast<long double>(q), -static_cast<long double>(delta)) / (q - 1);
                break;
            case FountainModel::CONCAT_LOWER:
                pf = p_loss * powl(static_cast<long double>(q), -static_cast<long double>(delta) - 1);
                break;
            case FountainModel::IDEAL:
                pf = 0;
                break;
        }
        if (pf > 1) pf = 1;
        pe += detail::binom_pmf(k + delta_tx, m, 1.0L - static_cast<long double>(eps)) * pf;
    }
    return detail::clamp01(pe);
}

// P_E = 1 - (1 - P_e)^N without cancellation at tiny P_e.
inline double system_failure(double pe, long n_receivers) {
    if (pe >= 1) return 1;
    if (pe <= 0) return 0;
    return detail::clamp01(-expm1l(static_cast<long double>(n_receivers) * log1pl(-static_cast<long double>(pe))));
}

inline double system_failure(const CodeSpec& spec, long n_receivers, int delta_tx, double eps, FountainModel model) {
    return system_failure(receiver_failure(spec, delta_tx, eps, model), n_receivers);
}

// Smallest transmission overhead meeting a system failure target; -1 if none
// up to max_delta.
inline int min_overhead(const CodeSpec& spec, long n_receivers, double eps, FountainModel model,
                        double target, int max_delta = 4096) {
    for (int d = 0; d <= max_delta; ++d)
        if (system_failure(spec, n_receivers, d, eps, model) <= target) return d;
    return -1;
}

// Block error probability of an ideal MDS code of the same (l, k): decoding
// fails only with more than l - k erasures.
inline double singleton_bound_pb(int l, int k, double eps) {
    if (k > l) throw std::invalid_argument("singleton bound needs k <= l");
    long double p = 0;
    for (int e = l - k + 1; e <= l; ++e) p += detail::binom_pmf(l, e, static_cast<long double>(eps));
    return detail::clamp01(p);
}

// Random-coding upper bound for binary codes: the Singleton term plus a
// 2^{-(l-k-e)} penalty for the correctable erasure counts.
inline double berlekamp_bound_pb(int l, int k, double eps) {
    long double p = singleton_bound_pb(l, k, eps);
    for (int e = 1; e <= l - k; ++e)
        p += detail::binom_pmf(l, e, static_cast<long double>(eps)) * powl(2.0L, -static_cast<long double>(l - k - e));
    return detail::clamp01(p);
}

}  // namespace lrfc
