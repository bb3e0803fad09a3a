#pragma once

#include "lrfc/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace lrfc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// Ensemble-average conditional weight enumerator of h random GF(q) symbols
// fed by an input of weight i, normalized per input: coefficient w is
// C(k,i) C(h,w) (q-1)^w / q^h for i > 0, and the point mass at w = 0 for
// i = 0 (the zero input yields zero output).
inline std::vector<BigRat> lrfc_avg_cowef(int k, int h, int q, int i) {
    if (i < 0 || i > k || h < 0 || q < 2) throw std::invalid_argument("bad enumerator arguments");
    if (i == 0) {
        std::vector<BigRat> out(h + 1);
        out[0] = 1;
        return out;
    }
    const BigInt qh = boost::multiprecision::pow(BigInt(q), h);
    std::vector<BigRat> out(h + 1);
    BigInt qm1_pow = 1;
    for (int w = 0; w <= h; ++w) {
        out[w] = BigRat(big_binom(k, i) * big_binom(h, w) * qm1_pow, qh);
        qm1_pow *= q - 1;
    }
    return out;
}

namespace detail {

// bivariate polynomials with exact coefficients, indexed [x-degree][X-degree]
using Poly2 = std::vector<std::vector<BigInt>>;

inline Poly2 poly2_mul(const Poly2& a, const Poly2& b) {
    Poly2 r(a.size() + b.size() - 1);
    const size_t cols = a[0].size() + b[0].size() - 1;
    for (auto& row : r) row.assign(cols, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) {
            if (a[i][j] == 0) continue;
            for (size_t p = 0; p < b.size(); ++p)
                for (size_t s = 0; s < b[0].size(); ++s) r[i + p][j + s] += a[i][j] * b[p][s];
        }
    return r;
}

inline void poly2_acc(Poly2& a, const Poly2& b, const BigInt& scale) {
    if (b.size() > a.size()) a.resize(b.size());
    const size_t cols = std::max(a[0].size(), b[0].size());
    for (auto& row : a) row.resize(cols, 0);
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b[i].size(); ++j) a[i][j] += scale * b[i][j];
}

// (1 + c x^dx X^dX)^e
inline Poly2 poly2_binomial(const BigInt& c, int dx, int dX, int e) {
    Poly2 r(static_cast<size_t>(dx) * e + 1);
    for (auto& row : r) row.assign(static_cast<size_t>(dX) * e + 1, 0);
    BigInt cpow = 1;
    for (int j = 0; j <= e; ++j) {
        r[static_cast<size_t>(dx) * j][static_cast<size_t>(dX) * j] = big_binom(e, j) * cpow;
        cpow *= c;
    }
    return r;
}

}  // namespace detail

// Conditional weight table of the (2^t - 1, 2^t - 1 - t) binary Hamming code:
// entry [i][w] counts codewords of total weight w produced by inputs of
// weight i. Built from the closed-form bivariate enumerator of (input
// weight, parity weight) and then shifted by the systematic part.
inline std::vector<std::vector<BigInt>> hamming_cowef(int t) {
    if (t < 3 || t > 16) throw std::invalid_argument("hamming_cowef supports t in 3..16");
    const int n = (1 << t) - 1;
    const int k = n - t;
    const int half = 1 << (t - 1);
    using detail::Poly2;

    Poly2 sum = detail::poly2_mul(detail::poly2_binomial(-1, 1, 0, half - t), detail::poly2_binomial(-1, 1, 1, t));
    for (auto& row : sum)
        for (auto& c : row) c <<= t;
    detail::poly2_acc(sum, detail::poly2_mul(detail::poly2_binomial(-1, 1, 0, half), detail::poly2_binomial(1, 0, 1, t)), -1);
    detail::poly2_acc(sum, detail::poly2_mul(detail::poly2_binomial(1, 1, 0, half), detail::poly2_binomial(1, 0, 1, t)), 1);
    Poly2 s = detail::poly2_mul(detail::poly2_binomial(1, 1, 0, half - t - 1), sum);

    std::vector<std::vector<BigInt>> table(k + 1, std::vector<BigInt>(n + 1, 0));
    const BigInt div = BigInt(1) << t;
    BigInt total = 0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t p = 0; p < s[i].size(); ++p) {
            if (s[i][p] == 0) continue;
            if (s[i][p] % div != 0 || s[i][p] < 0 || i > static_cast<size_t>(k) || i + p > static_cast<size_t>(n))
                throw std::logic_error("weight table inconsistency");
            table[i][i + p] = s[i][p] / div;
            total += table[i][i + p];
        }
    if (table[0][0] != 1 || total != BigInt(1) << k) throw std::logic_error("weight table inconsistency");
    return table;
}

// average weight spectrum A_0..A_l of a linear code ensemble
struct WeightSpectrum {
    int l = 0;
    int k = 0;
    int q = 2;
    std::vector<BigRat> coeffs;
};

inline BigRat spectrum_total(const WeightSpectrum& ws) {
    BigRat s = 0;
    for (const auto& c : ws.coeffs) s += c;
    return s;
}

// Spectrum of a block code extended by l - n random GF(q) combinations. The
// i = 0 row contributes the all-zero word; every other input weight sees the
// same binomial tail profile, so the block rows collapse into one marginal.
inline WeightSpectrum concat_avg_wef(const std::vector<std::vector<BigInt>>& block_cowef, int k, int l, int q) {
    const int n = static_cast<int>(block_cowef[0].size()) - 1;
    const int h = l - n;
    if (h < 0) throw std::invalid_argument("total length shorter than the block code");
    if (static_cast<int>(block_cowef.size()) != k + 1) throw std::invalid_argument("block table has wrong row count");

    std::vector<BigInt> marg(n + 1, 0);
    for (int i = 1; i <= k; ++i)
        for (int w = 0; w <= n; ++w) marg[w] += block_cowef[i][w];

    std::vector<BigInt> tail(h + 1);
    BigInt qm1_pow = 1;
    for (int w = 0; w <= h; ++w) {
        tail[w] = big_binom(h, w) * qm1_pow;
        qm1_pow *= q - 1;
    }

    const BigInt qh = boost::multiprecision::pow(BigInt(q), h);
    std::vector<BigInt> numer(l + 1, 0);
    for (int w1 = 0; w1 <= n; ++w1) {
        if (marg[w1] == 0) continue;
        for (int w2 = 0; w2 <= h; ++w2) numer[w1 + w2] += marg[w1] * tail[w2];
    }

    WeightSpectrum ws{l, k, q, std::vector<BigRat>(l + 1)};
    ws.coeffs[0] = 1;
    for (int w = 0; w <= l; ++w) ws.coeffs[w] += BigRat(numer[w], qh);
    return ws;
}

// Union bound on the block error probability over an erasure channel: the
// Singleton tail plus, for each correctable erasure count, the expected
// fraction of weight patterns covered by a codeword (exact rationals,
// truncated at 1).
inline double union_bound_pb(const WeightSpectrum& ws, double eps) {
    const int l = ws.l, k = ws.k;
    long double total = singleton_bound_pb(l, k, eps);
    for (int e = 1; e <= l - k; ++e) {
        BigRat inner = 0;
        for (int w = 1; w <= e && w <= l; ++w) inner += BigRat(big_binom(e, w)) * ws.coeffs[w] / BigRat(big_binom(l, w));
        long double ratio = inner.convert_to<long double>();
        if (ratio > 1) ratio = 1;
        total += detail::binom_pmf(l, e, static_cast<long double>(eps)) * ratio;
    }
    return detail::clamp01(total);
}

}  // namespace lrfc
