#pragma once

#include "lrfc/bounds.hpp"
#include "lrfc/decoder.hpp"
#include "lrfc/rng.hpp"

#include <bitset>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace lrfc {

struct TrialPlan {
    CodeSpec spec;
    double eps = 0;
    int delta = 0;  // reception overhead: decoding starts once k + delta symbols arrived
    long trials = 0;
    std::uint64_t seed = 0;
    bool use_ge = false;  // plain elimination instead of the structured decoder
};

struct SimResult {
    long trials = 0;
    long failures = 0;
    double p_hat = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    double seconds = 0;
};

inline std::pair<double, double> wilson_interval(long failures, long trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Draws from Binomial(n, p) by inverting the cumulative table with one
// uniform. Entries are ordered from the most likely end (r = n downward), so
// high survival rates resolve in a step or two.
class BinomialSampler {
  public:
    BinomialSampler(int n, double p) : n_(n) {
        cum_.reserve(n + 1);
        long double acc = 0;
        for (int r = n; r >= 0; --r) {
            acc += detail::binom_pmf(n, r, static_cast<long double>(p));
            cum_.push_back(acc);
        }
    }

    int sample(std::uint64_t raw) const {
        const long double u = to_unit(raw);
        for (size_t i = 0; i < cum_.size(); ++i)
            if (u < cum_[i]) return n_ - static_cast<int>(i);
        return 0;
    }

  private:
    int n_;
    std::vector<long double> cum_;
};

namespace detail {

// uniform r-subset of {0, .., n-1}
inline std::bitset<256> floyd_subset(int n, int r, std::uint64_t key, std::uint64_t draw_base) {
    std::bitset<256> in;
    std::uint64_t draw = draw_base;
    for (int j = n - r; j < n; ++j) {
        const int t = static_cast<int>(rng_at(key, draw++) % static_cast<std::uint64_t>(j + 1));
        if (in[t])
            in.set(j);
        else
            in.set(t);
    }
    return in;
}

}  // namespace detail

// One receiver: prefix symbols survive independently, collection stops at
// k + delta symbols, the gap is filled from the endless random stream.
// Returns true on decoding failure. Rank does not depend on the payload, so
// the trial decodes the all-zero block.
inline bool pf_trial(const CodeSpec& spec, const BinomialSampler& prefix_arrivals, int delta,
                     std::uint64_t trial_key, bool use_ge = false) {
    const int k = spec.k, n = spec.n;
    const int m = k + delta;

    int r = n > 0 ? prefix_arrivals.sample(rng_at(trial_key, 0)) : 0;
    if (r >= k && spec.mds()) return false;

    const int take = std::min(r, m);
    ReceivedSet rs;
    rs.spec = spec;
    rs.lrfc_seed = rng_key(trial_key, 0x5eed);
    rs.mds_indices.reserve(take);
    if (r > 0) {
        auto in = detail::floyd_subset(n, r, trial_key, 1);
        for (int pos = 0; pos < n && static_cast<int>(rs.mds_indices.size()) < take; ++pos)
            if (in[pos]) rs.mds_indices.push_back(pos + 1);
    }
    const int tail = m - take;
    rs.lrfc_indices.reserve(tail);
    for (int j = 0; j < tail; ++j) rs.lrfc_indices.push_back(n + 1 + j);
    rs.values.assign(m, 0);

    const DecodeReport rep = use_ge ? decode_ge(rs) : decode_hybrid(rs);
    return !rep.success;
}

inline SimResult estimate_pf(const TrialPlan& plan) {
    if (plan.trials <= 0 || plan.eps < 0 || plan.eps > 1 || plan.delta < 0)
        throw std::invalid_argument("bad trial plan");
    const auto t0 = std::chrono::steady_clock::now();
    const BinomialSampler arrivals(plan.spec.n, 1.0 - plan.eps);

    long fails = 0;
    for (long t = 0; t < plan.trials; ++t)
        fails += pf_trial(plan.spec, arrivals, plan.delta, rng_at(plan.seed, static_cast<std::uint64_t>(t)),
                          plan.use_ge);

    SimResult res;
    res.trials = plan.trials;
    res.failures = fails;
    res.p_hat = static_cast<double>(fails) / static_cast<double>(plan.trials);
    std::tie(res.ci_lo, res.ci_hi) = wilson_interval(fails, plan.trials, 3.0);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

struct FiniteRatePlan {
    CodeSpec spec;  // block code prefix; the tail up to length l is drawn per realization
    int l = 0;
    double eps = 0;
    int realizations = 1;
    long trials_per = 0;
    std::uint64_t seed = 0;
};

// Fixed-rate ensemble experiment: per realization one random tail extends the
// block code to length l, then trials erase each of the l symbols
// independently and test whether the kept columns still span. Binary codes
// with k <= 64 run on packed machine words.
inline SimResult estimate_finite_rate_pb(const FiniteRatePlan& plan, bool force_generic = false) {
    const CodeSpec& spec = plan.spec;
    const int k = spec.k, n = spec.n, l = plan.l;
    const int h = l - n;
    if (h < 0) throw std::invalid_argument("total length shorter than the block code");
    if (plan.realizations <= 0 || plan.trials_per <= 0 || plan.eps < 0 || plan.eps > 1)
        throw std::invalid_argument("bad finite-rate plan");

    const auto t0 = std::chrono::steady_clock::now();
    const Matrix g = generator_prefix(spec);
    const bool packed = !force_generic && spec.field->q() == 2 && k <= 64;

    long fails = 0;
    std::vector<std::uint64_t> cols(l);
    std::vector<int> kept;
    kept.reserve(l);
    for (int rz = 0; rz < plan.realizations; ++rz) {
        const std::uint64_t rz_key = rng_at(plan.seed, static_cast<std::uint64_t>(rz));
        const Matrix tail = lrfc_columns(*spec.field, k, h, rz_key);

        if (packed) {
            for (int j = 0; j < l; ++j) {
                std::uint64_t col = 0;
                for (int i = 0; i < k; ++i)
                    if ((j < n ? g.at(i, j) : tail.at(i, j - n)) != 0) col |= 1ull << i;
                cols[j] = col;
            }
        }

        for (long t = 0; t < plan.trials_per; ++t) {
            const std::uint64_t tk = rng_key(rz_key, static_cast<std::uint64_t>(t));
            kept.clear();
            for (int pos = 0; pos < l; ++pos)
                if (to_unit(rng_at(tk, static_cast<std::uint64_t>(pos))) >= plan.eps) kept.push_back(pos);
            if (static_cast<int>(kept.size()) < k) {
                ++fails;
                continue;
            }

            int rank = 0;
            if (packed) {
                std::uint64_t pivot_at[64] = {};
                for (int pos : kept) {
                    std::uint64_t v = cols[pos];
                    while (v) {
                        const int b = 63 - __builtin_clzll(v);
                        if (pivot_at[b])
                            v ^= pivot_at[b];
                        else {
                            pivot_at[b] = v;
                            ++rank;
                            break;
                        }
                    }
                    if (rank == k) break;
                }
            } else {
                Matrix sub(*spec.field, k, static_cast<int>(kept.size()));
                for (size_t c = 0; c < kept.size(); ++c) {
                    const int pos = kept[c];
                    for (int i = 0; i < k; ++i) sub.at(i, static_cast<int>(c)) = pos < n ? g.at(i, pos) : tail.at(i, pos - n);
                }
                rank = rank_of(sub);
            }
            fails += rank < k;
        }
    }

    SimResult res;
    res.trials = static_cast<long>(plan.realizations) * plan.trials_per;
    res.failures = fails;
    res.p_hat = static_cast<double>(fails) / static_cast<double>(res.trials);
    std::tie(res.ci_lo, res.ci_hi) = wilson_interval(fails, res.trials, 3.0);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace lrfc
