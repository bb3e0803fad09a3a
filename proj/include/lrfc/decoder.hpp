#pragma once

#include "lrfc/codes.hpp"
#include "lrfc/matrix.hpp"
#include "lrfc/vandermonde.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lrfc {

// Symbols gathered by a receiver: indices from the fixed prefix (<= n) and
// from the rateless part (> n), each list strictly increasing, values
// aligned prefix-first. Rateless columns are regenerated from lrfc_seed.
struct ReceivedSet {
    CodeSpec spec;
    std::vector<int> mds_indices;
    std::vector<long> lrfc_indices;
    std::vector<std::uint8_t> values;
    std::uint64_t lrfc_seed = 0;

    int m_prime() const { return static_cast<int>(mds_indices.size()); }
    int m_second() const { return static_cast<int>(lrfc_indices.size()); }
    int m() const { return m_prime() + m_second(); }
};

enum class DecodePath { MDS_ONLY, HYBRID, GE_ONLY };

struct DecodeReport {
    bool success = false;
    std::vector<std::uint8_t> u;  // recovered source block on success
    int rank_deficit = 0;         // k - rank on failure
    DecodePath path = DecodePath::GE_ONLY;
    std::uint64_t field_ops = 0;  // delta of the op counter when it is enabled
};

namespace detail {

inline void validate_received(const ReceivedSet& r) {
    if (r.m() == 0) throw std::invalid_argument("empty received set");
    if (static_cast<int>(r.values.size()) != r.m())
        throw std::invalid_argument("received values not aligned with indices");
    int prev = 0;
    for (int j : r.mds_indices) {
        if (j < 1 || j > r.spec.n) throw std::invalid_argument("prefix symbol index out of range");
        if (j <= prev) throw std::invalid_argument("prefix indices must be strictly increasing");
        prev = j;
    }
    long prev2 = r.spec.n;
    for (long j : r.lrfc_indices) {
        if (j <= r.spec.n) throw std::invalid_argument("rateless symbol index out of range");
        if (j <= prev2) throw std::invalid_argument("rateless indices must be strictly increasing");
        prev2 = j;
    }
}

// one rateless row of the system matrix: the column of G'' at 1-based
// stream index j, entries keyed by (seed, j - n - 1)
inline void fill_lrfc_row(std::uint8_t* row, const ReceivedSet& r, long j) {
    const std::uint64_t col_key = rng_key(r.lrfc_seed, static_cast<std::uint64_t>(j - r.spec.n - 1));
    const std::uint8_t mask = static_cast<std::uint8_t>(r.spec.field->q() - 1);
    for (int c = 0; c < r.spec.k; ++c) row[c] = static_cast<std::uint8_t>(rng_at(col_key, c)) & mask;
}

// m x k system: row per received symbol, transposed generator layout
inline Matrix build_system(const ReceivedSet& r) {
    const CodeSpec& s = r.spec;
    const Field& f = *s.field;
    Matrix g(f, r.m(), s.k);
    Matrix prefix = generator_prefix(s);
    int row = 0;
    for (int j : r.mds_indices) {
        for (int c = 0; c < s.k; ++c) g.at(row, c) = prefix.at(c, j - 1);
        ++row;
    }
    for (long j : r.lrfc_indices) {
        fill_lrfc_row(g.row(row), r, j);
        ++row;
    }
    return g;
}

struct OpWindow {
    std::uint64_t start;
    OpWindow() : start(OpCount::enabled() ? OpCount::value() : 0) {}
    std::uint64_t delta() const { return OpCount::enabled() ? OpCount::value() - start : 0; }
};

}  // namespace detail

// Reference decoder: assemble the full system and run plain elimination.
inline DecodeReport decode_ge(const ReceivedSet& r) {
    detail::validate_received(r);
    detail::OpWindow ops;
    Matrix g = detail::build_system(r);
    auto res = ge_solve(std::move(g), r.values);
    DecodeReport rep;
    rep.path = DecodePath::GE_ONLY;
    rep.success = res.solved;
    if (res.solved)
        rep.u = std::move(res.solution);
    else
        rep.rank_deficit = r.spec.k - res.rank;
    rep.field_ops = ops.delta();
    return rep;
}

// Structured decoder. With m' >= k received prefix symbols the source block
// falls out of one Vandermonde solve, done as two triangular applies so the
// cost stays quadratic. With 0 < m' < k the system
//   [ V A ] [u1]   [y1]
//   [ B C ] [u2] = [y2]
// (natural column order already gives this block form, so the column
// permutation of the general reduction is the identity) is reduced by
// A' = V^-1 A, y1' = V^-1 y1, then B is zeroed against [I | A'], leaving
// elimination on the (k - m')-wide block only, and back-substitution.
// With m' = 0, or for prefixes without the evaluation-point structure
// (SPC, Hamming, pure rateless), plain elimination is the decoder.
inline DecodeReport decode_hybrid(const ReceivedSet& r) {
    if (r.spec.family != Family::GRS) {
        DecodeReport rep = decode_ge(r);
        rep.path = DecodePath::GE_ONLY;
        return rep;
    }
    detail::validate_received(r);
    const CodeSpec& s = r.spec;
    const Field& f = *s.field;
    const int k = s.k, mp = r.m_prime() < k ? r.m_prime() : k, ms = r.m_second();

    if (mp == 0) {
        DecodeReport rep = decode_ge(r);
        rep.path = DecodePath::GE_ONLY;
        return rep;
    }

    detail::OpWindow ops;
    std::vector<std::uint8_t> nodes(mp);
    for (int i = 0; i < mp; ++i) nodes[i] = s.betas[r.mds_indices[i] - 1];
    VandermondeSpec vsp(f, nodes);
    Matrix linv = vandermonde_l_inverse(vsp);
    Matrix uinv = vandermonde_u_inverse(vsp);

    DecodeReport rep;
    if (r.m_prime() >= k) {
        // any k prefix symbols determine the block; use the first k
        std::vector<std::uint8_t> y1(r.values.begin(), r.values.begin() + k);
        rep.u = apply_upper(uinv, apply_lower(linv, y1));
        rep.success = true;
        rep.path = DecodePath::MDS_ONLY;
        rep.field_ops = ops.delta();
        return rep;
    }

    const int kt = k - mp;  // tail unknowns
    std::vector<std::uint8_t> y1(r.values.begin(), r.values.begin() + mp);
    std::vector<std::uint8_t> y1p = apply_upper(uinv, apply_lower(linv, y1));

    // A holds the higher node powers; reduce it column by column
    Matrix ap(f, mp, kt);
    {
        std::vector<std::uint8_t> col(mp);
        for (int c = 0; c < kt; ++c) {
            for (int i = 0; i < mp; ++i) col[i] = f.pow(nodes[i], static_cast<unsigned>(mp + c));
            auto reduced = apply_upper(uinv, apply_lower(linv, col));
            for (int i = 0; i < mp; ++i) ap.at(i, c) = reduced[i];
        }
    }

    // zero the rateless B block against [I | A'], keep only the C' system
    Matrix cp(f, ms, kt);
    std::vector<std::uint8_t> y2p(ms);
    std::vector<std::uint8_t> grow(k);
    for (int rr = 0; rr < ms; ++rr) {
        detail::fill_lrfc_row(grow.data(), r, r.lrfc_indices[rr]);
        std::uint8_t acc = r.values[mp + rr];
        for (int i = 0; i < mp; ++i) acc = f.add(acc, f.mul(grow[i], y1p[i]));
        y2p[rr] = acc;
        for (int c = 0; c < kt; ++c) {
            std::uint8_t e = grow[mp + c];
            for (int i = 0; i < mp; ++i) e = f.add(e, f.mul(grow[i], ap.at(i, c)));
            cp.at(rr, c) = e;
        }
    }

    auto res = ge_solve(std::move(cp), y2p);
    rep.path = DecodePath::HYBRID;
    if (!res.solved) {
        rep.rank_deficit = kt - res.rank;
        rep.field_ops = ops.delta();
        return rep;
    }
    rep.success = true;
    rep.u.resize(k);
    for (int i = 0; i < mp; ++i) {
        std::uint8_t acc = y1p[i];
        for (int c = 0; c < kt; ++c) acc = f.add(acc, f.mul(ap.at(i, c), res.solution[c]));
        rep.u[i] = acc;
    }
    for (int c = 0; c < kt; ++c) rep.u[mp + c] = res.solution[c];
    rep.field_ops = ops.delta();
    return rep;
}

}  // namespace lrfc
