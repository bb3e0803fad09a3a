#pragma once

#include "lrfc/gf.hpp"
#include "lrfc/matrix.hpp"

#include <bitset>
#include <stdexcept>
#include <vector>

namespace lrfc {

// Degree-gamma Vandermonde system on distinct non-zero nodes xs:
// V(i,j) = xs[i]^j. V factors as L*U with both inverses available by
// O(gamma^2) recursions, which is what the fast decoder path leans on.
struct VandermondeSpec {
    const Field* f;
    std::vector<std::uint8_t> xs;

    VandermondeSpec(const Field& fld, std::vector<std::uint8_t> nodes) : f(&fld), xs(std::move(nodes)) {
        if (xs.empty() || static_cast<int>(xs.size()) > fld.q() - 1)
            throw std::invalid_argument("vandermonde degree must be in [1, q-1]");
        std::bitset<256> seen;
        for (auto x : xs) {
            if (x == 0) throw std::invalid_argument("vandermonde nodes must be non-zero");
            if (seen[x]) throw std::invalid_argument("vandermonde nodes must be distinct");
            seen[x] = true;
        }
    }

    int degree() const { return static_cast<int>(xs.size()); }
};

inline Matrix vandermonde_matrix(const VandermondeSpec& v) {
    const Field& f = *v.f;
    const int g = v.degree();
    Matrix m(f, g, g);
    for (int i = 0; i < g; ++i) {
        std::uint8_t p = 1;
        for (int j = 0; j < g; ++j) {
            m.at(i, j) = p;
            p = f.mul(p, v.xs[i]);
        }
    }
    return m;
}

// Lower-triangular L^-1: diagonal l(j,j) = prod_{h<j} 1/(x_j - x_h), then
// down each column l(i,j) = l(i-1,j) / (x_j - x_i).
inline Matrix vandermonde_l_inverse(const VandermondeSpec& v) {
    const Field& f = *v.f;
    const int g = v.degree();
    Matrix m(f, g, g);
    for (int j = 0; j < g; ++j) {
        std::uint8_t d = 1;
        for (int h = 0; h < j; ++h) d = f.mul(d, f.inv(f.add(v.xs[j], v.xs[h])));
        m.at(j, j) = d;
        for (int i = j + 1; i < g; ++i)
            m.at(i, j) = f.mul(m.at(i - 1, j), f.inv(f.add(v.xs[j], v.xs[i])));
    }
    return m;
}

// Unit upper-triangular U^-1: first row u(0,j) = u(0,j-1)*x_{j-1}, interior
// u(i,j) = u(i-1,j-1) + u(i,j-1)*x_{j-1}. Signs vanish in characteristic 2.
inline Matrix vandermonde_u_inverse(const VandermondeSpec& v) {
    const Field& f = *v.f;
    const int g = v.degree();
    Matrix m(f, g, g);
    for (int i = 0; i < g; ++i) m.at(i, i) = 1;
    for (int j = 1; j < g; ++j) {
        m.at(0, j) = f.mul(m.at(0, j - 1), v.xs[j - 1]);
        for (int i = 1; i < j; ++i)
            m.at(i, j) = f.add(m.at(i - 1, j - 1), f.mul(m.at(i, j - 1), v.xs[j - 1]));
    }
    return m;
}

// Full inverse as the dense triangular product U^-1 * L^-1. Building the
// factors is O(gamma^2); this product is the cubic part, so solvers that
// care about cost apply the factors to vectors instead (see apply_* below).
inline Matrix vandermonde_inverse(const VandermondeSpec& v) {
    const Field& f = *v.f;
    const int g = v.degree();
    Matrix u = vandermonde_u_inverse(v);
    Matrix l = vandermonde_l_inverse(v);
    Matrix r(f, g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            std::uint8_t acc = 0;
            for (int h = (i > j ? i : j); h < g; ++h)
                acc = f.add(acc, f.mul(u.at(i, h), l.at(h, j)));
            r.at(i, j) = acc;
        }
    return r;
}

// y -> L^-1 y for lower-triangular L^-1, O(gamma^2).
inline std::vector<std::uint8_t> apply_lower(const Matrix& l, const std::vector<std::uint8_t>& y) {
    const Field& f = l.field();
    const int g = l.rows();
    std::vector<std::uint8_t> r(g, 0);
    for (int i = 0; i < g; ++i) {
        std::uint8_t acc = 0;
        for (int j = 0; j <= i; ++j) acc = f.add(acc, f.mul(l.at(i, j), y[j]));
        r[i] = acc;
    }
    return r;
}

// y -> U^-1 y for upper-triangular U^-1, O(gamma^2).
inline std::vector<std::uint8_t> apply_upper(const Matrix& u, const std::vector<std::uint8_t>& y) {
    const Field& f = u.field();
    const int g = u.rows();
    std::vector<std::uint8_t> r(g, 0);
    for (int i = 0; i < g; ++i) {
        std::uint8_t acc = 0;
        for (int j = i; j < g; ++j) acc = f.add(acc, f.mul(u.at(i, j), y[j]));
        r[i] = acc;
    }
    return r;
}

}  // namespace lrfc
