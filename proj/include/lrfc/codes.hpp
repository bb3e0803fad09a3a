#pragma once

#include "lrfc/gf.hpp"
#include "lrfc/matrix.hpp"
#include "lrfc/rng.hpp"

#include <bitset>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrfc {

enum class Family { GRS, SPC, HAMMING, NONE };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::GRS: return "grs";
        case Family::SPC: return "spc";
        case Family::HAMMING: return "hamming";
        default: return "none";
    }
}

// Description of the fixed-rate prefix code plus the field the rateless part
// draws from. family NONE is the pure rateless scheme: no prefix at all
// (n = 0), every emitted symbol is a random combination.
struct CodeSpec {
    const Field* field = nullptr;
    int n = 0;
    int k = 0;
    Family family = Family::NONE;
    std::vector<std::uint8_t> betas;  // GRS evaluation points
    int hamming_t = 0;

    static CodeSpec grs(const Field& f, int n, int k) {
        std::vector<std::uint8_t> b(n);
        for (int i = 0; i < n; ++i) b[i] = f.alpha_pow(i);
        return grs(f, n, k, std::move(b));
    }

    static CodeSpec grs(const Field& f, int n, int k, std::vector<std::uint8_t> betas) {
        if (n > f.q() - 1)
            throw std::invalid_argument("grs length exceeds q-1 (n=" + std::to_string(n) + ", q=" + std::to_string(f.q()) + ")");
        if (k < 1 || k > n) throw std::invalid_argument("grs requires 1 <= k <= n");
        if (static_cast<int>(betas.size()) != n) throw std::invalid_argument("grs needs n evaluation points");
        std::bitset<256> seen;
        for (auto b : betas) {
            if (b == 0) throw std::invalid_argument("grs evaluation points must be non-zero");
            if (seen[b]) throw std::invalid_argument("grs evaluation points must be distinct");
            seen[b] = true;
        }
        CodeSpec s;
        s.field = &f;
        s.n = n;
        s.k = k;
        s.family = Family::GRS;
        s.betas = std::move(betas);
        return s;
    }

    static CodeSpec spc(int k) {
        if (k < 1) throw std::invalid_argument("spc requires k >= 1");
        CodeSpec s;
        s.field = &Field::get(1);
        s.n = k + 1;
        s.k = k;
        s.family = Family::SPC;
        return s;
    }

    static CodeSpec hamming(int t) {
        if (t < 3 || t > 6) throw std::invalid_argument("hamming parameter t must be in 3..6");
        CodeSpec s;
        s.field = &Field::get(1);
        s.n = (1 << t) - 1;
        s.k = s.n - t;
        s.family = Family::HAMMING;
        s.hamming_t = t;
        return s;
    }

    static CodeSpec none(const Field& f, int k) {
        if (k < 1) throw std::invalid_argument("source block needs k >= 1");
        CodeSpec s;
        s.field = &f;
        s.n = 0;
        s.k = k;
        s.family = Family::NONE;
        return s;
    }

    bool mds() const { return family == Family::GRS || family == Family::SPC; }
};

// G' for GRS codes, k x n: column i is (1, b_i, b_i^2, ..., b_i^{k-1}).
inline Matrix grs_generator(const CodeSpec& spec) {
    if (spec.family != Family::GRS) throw std::invalid_argument("spec is not grs");
    const Field& f = *spec.field;
    Matrix g(f, spec.k, spec.n);
    for (int c = 0; c < spec.n; ++c) {
        std::uint8_t p = 1;
        for (int r = 0; r < spec.k; ++r) {
            g.at(r, c) = p;
            p = f.mul(p, spec.betas[c]);
        }
    }
    return g;
}

// Systematic single parity check generator [I_k | 1].
inline Matrix spc_generator(int k) {
    const Field& f = Field::get(1);
    Matrix g(f, k, k + 1);
    for (int i = 0; i < k; ++i) {
        g.at(i, i) = 1;
        g.at(i, k) = 1;
    }
    return g;
}

// Systematic generator of the (2^t - 1, 2^t - 1 - t) binary Hamming code.
// The parity-check matrix has all non-zero t-bit patterns as columns in
// ascending order; data positions are the non-power-of-two values, so row i
// of the parity block holds the binary digits of the i-th data position.
inline Matrix hamming_generator(int t) {
    if (t < 3 || t > 6) throw std::invalid_argument("hamming parameter t must be in 3..6");
    const Field& f = Field::get(1);
    const int n = (1 << t) - 1, k = n - t;
    Matrix g(f, k, n);
    int i = 0;
    for (int v = 1; v <= n; ++v) {
        if ((v & (v - 1)) == 0) continue;  // power of two: parity position
        g.at(i, i) = 1;
        for (int j = 0; j < t; ++j)
            if (v & (1 << j)) g.at(i, k + j) = 1;
        ++i;
    }
    return g;
}

// Rateless part: entries i.i.d. uniform over all q elements (zero included).
// The column at absolute index j depends only on (seed, j), so any batching
// produces identical columns.
inline Matrix lrfc_columns(const Field& f, int k, int count, std::uint64_t seed, std::uint64_t first_index = 0) {
    Matrix g(f, k, count);
    const std::uint8_t mask = static_cast<std::uint8_t>(f.q() - 1);
    for (int c = 0; c < count; ++c) {
        const std::uint64_t col_key = rng_key(seed, first_index + c);
        for (int r = 0; r < k; ++r) g.at(r, c) = static_cast<std::uint8_t>(rng_at(col_key, r)) & mask;
    }
    return g;
}

inline Matrix generator_prefix(const CodeSpec& spec) {
    switch (spec.family) {
        case Family::GRS: return grs_generator(spec);
        case Family::SPC: return spc_generator(spec.k);
        case Family::HAMMING: return hamming_generator(spec.hamming_t);
        default: return Matrix(*spec.field, spec.k, 0);
    }
}

// Never-ending encoded sequence: the n prefix symbols, then random
// combinations forever. Symbol indices are 1-based like the receiver side.
class EncodedStream {
public:
    EncodedStream(std::vector<std::uint8_t> u, const CodeSpec& spec, std::uint64_t seed)
        : spec_(spec), u_(std::move(u)), seed_(seed) {
        if (static_cast<int>(u_.size()) != spec.k) throw std::invalid_argument("source block size != k");
        if (spec.n > 0) {
            Matrix g = generator_prefix(spec);
            prefix_.resize(spec.n);
            const Field& f = *spec.field;
            for (int c = 0; c < spec.n; ++c) {
                std::uint8_t acc = 0;
                for (int r = 0; r < spec.k; ++r) acc = f.add(acc, f.mul(g.at(r, c), u_[r]));
                prefix_[c] = acc;
            }
        }
    }

    const CodeSpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }
    long emitted() const { return emitted_; }

    std::uint8_t next_symbol() { return symbol_at(++emitted_); }

    // 1-based absolute index; pure function of (u, spec, seed, index)
    std::uint8_t symbol_at(long index) const {
        if (index <= spec_.n) return prefix_[index - 1];
        const Field& f = *spec_.field;
        Matrix col = lrfc_columns(f, spec_.k, 1, seed_, static_cast<std::uint64_t>(index - spec_.n - 1));
        std::uint8_t acc = 0;
        for (int r = 0; r < spec_.k; ++r) acc = f.add(acc, f.mul(col.at(r, 0), u_[r]));
        return acc;
    }

private:
    CodeSpec spec_;
    std::vector<std::uint8_t> u_;
    std::uint64_t seed_;
    std::vector<std::uint8_t> prefix_;
    long emitted_ = 0;
};

}  // namespace lrfc
