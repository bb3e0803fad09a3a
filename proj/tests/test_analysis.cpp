#include <catch2/catch_amalgamated.hpp>

#include "lrfc/bounds.hpp"
#include "lrfc/codes.hpp"
#include "lrfc/matrix.hpp"
#include "lrfc/wef.hpp"

#include <cmath>
#include <vector>

using namespace lrfc;

namespace {

// lower binomial tail in exact rational arithmetic, eps = num/den
BigRat exact_prefix_loss(int n, int k, int num, int den) {
    BigRat eps(num, den), keep = 1 - eps, p = 0;
    for (int i = 0; i < k; ++i) {
        BigRat term = big_binom(n, i);
        for (int j = 0; j < i; ++j) term *= keep;
        for (int j = 0; j < n - i; ++j) term *= eps;
        p += term;
    }
    return p;
}

double rel_err(double got, double want) {
    if (want == 0) return std::fabs(got);
    return std::fabs(got - want) / std::fabs(want);
}

// every codeword weight of a binary code, grouped by input weight
std::vector<std::vector<BigInt>> brute_cowef(const Matrix& g) {
    const int k = g.rows(), n = g.cols();
    std::vector<std::vector<BigInt>> table(k + 1, std::vector<BigInt>(n + 1, 0));
    for (unsigned long u = 0; u < (1ul << k); ++u) {
        std::vector<uint8_t> in(k);
        int iw = 0;
        for (int b = 0; b < k; ++b) {
            in[b] = (u >> b) & 1;
            iw += in[b];
        }
        auto cw = mat_vec(g.transposed(), in);
        int ow = 0;
        for (auto s : cw) ow += s != 0;
        table[iw][ow] += 1;
    }
    return table;
}

// exact ML block erasure failure probability by enumerating erasure patterns:
// ML fails iff the erased positions cover a nonzero codeword
long double exhaustive_ml_pb(const Matrix& g, double eps) {
    const int k = g.rows(), n = g.cols();
    std::vector<unsigned> supports;
    for (unsigned long u = 1; u < (1ul << k); ++u) {
        std::vector<uint8_t> in(k);
        for (int b = 0; b < k; ++b) in[b] = (u >> b) & 1;
        auto cw = mat_vec(g.transposed(), in);
        unsigned mask = 0;
        for (int i = 0; i < n; ++i)
            if (cw[i]) mask |= 1u << i;
        supports.push_back(mask);
    }
    long double pb = 0;
    for (unsigned e = 0; e < (1u << n); ++e) {
        bool covered = false;
        for (unsigned s : supports)
            if ((s & e) == s) {
                covered = true;
                break;
            }
        if (!covered) continue;
        int w = __builtin_popcount(e);
        pb += powl((long double)eps, w) * powl(1.0L - eps, n - w);
    }
    return pb;
}

}  // namespace

TEST_CASE("fountain band endpoints", "[analysis]") {
    auto b = lrfc_bounds(2, 0);
    REQUIRE(b.lower == 0.5);
    REQUIRE(b.upper == 1.0);

    b = lrfc_bounds(16, 2);
    REQUIRE(rel_err(b.lower, 1.0 / 4096.0) < 1e-15);
    REQUIRE(rel_err(b.upper, 1.0 / 3840.0) < 1e-15);

    for (int q : {2, 4, 16, 256})
        for (int d = 0; d <= 12; ++d) {
            auto p = lrfc_bounds(q, d);
            REQUIRE(p.lower > 0);
            REQUIRE(p.lower <= p.upper);
            REQUIRE(p.upper <= 1.0);
        }

    REQUIRE_THROWS_AS(lrfc_bounds(1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(lrfc_bounds(2, -1), std::invalid_argument);
}

TEST_CASE("prefix loss matches exact rational tail", "[analysis]") {
    struct Case {
        int n, k, num, den;
    };
    for (auto c : std::vector<Case>{{15, 10, 1, 100}, {15, 10, 1, 20}, {15, 10, 1, 10}, {15, 10, 3, 10},
                                    {11, 10, 1, 100}, {11, 10, 1, 10}, {7, 4, 1, 5}, {63, 57, 1, 20}, {3, 2, 1, 2}}) {
        double got = prefix_loss_prob(c.n, c.k, double(c.num) / c.den);
        double want = exact_prefix_loss(c.n, c.k, c.num, c.den).convert_to<double>();
        INFO("n=" << c.n << " k=" << c.k << " eps=" << c.num << "/" << c.den);
        REQUIRE(rel_err(got, want) < 1e-12);
    }

    REQUIRE(prefix_loss_prob(15, 10, 0.0) == 0.0);
    REQUIRE(prefix_loss_prob(15, 10, 1.0) == 1.0);
    REQUIRE(rel_err(prefix_loss_prob(3, 2, 0.5), 0.5) < 1e-15);

    // reference points used elsewhere in the suite
    REQUIRE(rel_err(prefix_loss_prob(15, 10, 0.05), 5.2805673266604556e-05) < 1e-10);
    REQUIRE(rel_err(prefix_loss_prob(11, 10, 0.01), 5.179717490315061e-03) < 1e-10);

    REQUIRE_THROWS_AS(prefix_loss_prob(10, 11, 0.1), std::invalid_argument);
}

TEST_CASE("concatenated band scales the fountain band", "[analysis]") {
    const auto& f16 = Field::get(4);
    auto grs = CodeSpec::grs(f16, 15, 10);

    for (int d = 0; d <= 6; ++d) {
        auto base = lrfc_bounds(16, d);
        auto conc = concat_bounds(grs, d, 0.05);
        double p = prefix_loss_prob(15, 10, 0.05);
        REQUIRE(rel_err(conc.lower, base.lower * p) < 1e-12);
        REQUIRE(rel_err(conc.upper, base.upper * p) < 1e-12);
    }

    // the prefix buys about four orders of magnitude at eps = 0.05
    REQUIRE(concat_bounds(grs, 0, 0.05).upper / lrfc_bounds(16, 0).upper < 1e-4);

    // a plain fountain carries no MDS prefix to lose
    auto none = CodeSpec::none(f16, 10);
    REQUIRE_THROWS_AS(concat_bounds(none, 0, 0.05), std::invalid_argument);
}

TEST_CASE("overhead pmf is a distribution", "[analysis]") {
    for (double eps : {0.01, 0.1, 0.5})
        for (int delta : {0, 3, 10}) {
            long double sum = 0;
            for (int m = 0; m <= 10 + delta; ++m) sum += overhead_pmf(delta, m, 10, eps);
            REQUIRE(std::fabs(double(sum - 1)) < 1e-12);
        }

    REQUIRE(overhead_pmf(4, 14, 10, 0.0) == 1.0);
    REQUIRE(overhead_pmf(4, 13, 10, 0.0) == 0.0);

    double want = 66.0 * std::pow(0.9, 10) * 0.01;
    REQUIRE(rel_err(overhead_pmf(2, 10, 10, 0.1), want) < 1e-12);
}

TEST_CASE("receiver failure model ordering", "[analysis]") {
    const auto& f2 = Field::get(1);
    auto spc = CodeSpec::spc(10);

    for (double eps : {0.005, 0.01, 0.05})
        for (int d = 0; d <= 30; d += 3) {
            double ideal = receiver_failure(spc, d, eps, FountainModel::IDEAL);
            double lo = receiver_failure(spc, d, eps, FountainModel::CONCAT_LOWER);
            double up = receiver_failure(spc, d, eps, FountainModel::CONCAT_UPPER);
            double plain = receiver_failure(spc, d, eps, FountainModel::LRFC);
            REQUIRE(ideal <= lo);
            REQUIRE(lo <= up);
            REQUIRE(up <= plain);
            REQUIRE(plain <= 1.0);
        }

    // ideal model fails only when fewer than k symbols arrive
    long double tail = 0;
    for (int m = 0; m < 10; ++m) tail += overhead_pmf(8, m, 10, 0.01);
    REQUIRE(rel_err(receiver_failure(spc, 8, 0.01, FountainModel::IDEAL), double(tail)) < 1e-12);

    // a lossless channel leaves only the fountain failure term
    auto none2 = CodeSpec::none(f2, 10);
    REQUIRE(rel_err(receiver_failure(none2, 3, 0.0, FountainModel::LRFC), 0.125) < 1e-12);
    REQUIRE(receiver_failure(spc, 3, 0.0, FountainModel::IDEAL) == 0.0);
}

TEST_CASE("system failure across receivers", "[analysis]") {
    REQUIRE(system_failure(0.25, 1) == 0.25);
    REQUIRE(system_failure(0.0, 10000) == 0.0);
    REQUIRE(system_failure(1.0, 10000) == 1.0);
    REQUIRE(system_failure(2.0, 10000) == 1.0);

    // tiny per-receiver probability: P_E ~ N * pe without cancellation
    double pe = 1e-12;
    REQUIRE(rel_err(system_failure(pe, 10000), 1e-8) < 1e-6);

    double prev = 0;
    for (long n : {1L, 10L, 100L, 1000L, 10000L}) {
        double v = system_failure(1e-6, n);
        REQUIRE(v > prev);
        prev = v;
    }
}

TEST_CASE("minimum overhead for the multicast target", "[analysis]") {
    const auto& f2 = Field::get(1);
    const auto& f16 = Field::get(4);
    auto spc = CodeSpec::spc(10);
    auto none2 = CodeSpec::none(f2, 10);
    auto grs = CodeSpec::grs(f16, 15, 10);
    auto none16 = CodeSpec::none(f16, 10);

    const long n_rx = 10000;
    const double eps = 0.01, target = 1e-4;

    REQUIRE(min_overhead(spc, n_rx, eps, FountainModel::CONCAT_UPPER, target) == 20);
    int lrfc2 = min_overhead(none2, n_rx, eps, FountainModel::LRFC, target);
    REQUIRE(lrfc2 >= 27);
    REQUIRE(lrfc2 <= 28);

    REQUIRE(min_overhead(grs, n_rx, eps, FountainModel::CONCAT_UPPER, target) == 5);
    REQUIRE(min_overhead(none16, n_rx, eps, FountainModel::LRFC, target) == 7);
    REQUIRE(min_overhead(grs, n_rx, eps, FountainModel::IDEAL, target) == 5);

    REQUIRE(min_overhead(spc, n_rx, 0.99, FountainModel::LRFC, 1e-12, 16) == -1);
}

TEST_CASE("finite-rate reference bounds", "[analysis]") {
    // with l = k the ideal-MDS bound degenerates to losing any symbol
    for (double eps : {0.01, 0.1, 0.4})
        REQUIRE(rel_err(singleton_bound_pb(20, 20, eps), -std::expm1(20 * std::log1p(-eps))) < 1e-12);

    REQUIRE(singleton_bound_pb(63, 57, 0.0) == 0.0);
    REQUIRE(singleton_bound_pb(63, 57, 1.0) == 1.0);
    REQUIRE(berlekamp_bound_pb(63, 57, 0.0) == 0.0);

    double prev_s = 0, prev_b = 0;
    for (double eps = 0.01; eps < 0.5; eps += 0.03) {
        double s = singleton_bound_pb(114, 57, eps);
        double b = berlekamp_bound_pb(114, 57, eps);
        REQUIRE(b >= s);
        REQUIRE(s >= prev_s);
        REQUIRE(b >= prev_b);
        REQUIRE(b <= 1.0);
        prev_s = s;
        prev_b = b;
    }
}

TEST_CASE("random tail enumerator", "[analysis]") {
    auto p = lrfc_avg_cowef(2, 2, 2, 1);
    REQUIRE(p.size() == 3);
    REQUIRE(p[0] == BigRat(1, 2));
    REQUIRE(p[1] == BigRat(1));
    REQUIRE(p[2] == BigRat(1, 2));

    auto z = lrfc_avg_cowef(5, 3, 16, 0);
    REQUIRE(z.size() == 4);
    REQUIRE(z[0] == BigRat(1));
    REQUIRE(z[1] == 0);

    for (int q : {2, 4, 16})
        for (int k : {1, 4, 7})
            for (int h : {0, 1, 5})
                for (int i = 0; i <= k; ++i) {
                    BigRat sum = 0;
                    for (const auto& c : lrfc_avg_cowef(k, h, q, i)) sum += c;
                    REQUIRE(sum == BigRat(big_binom(k, i)));
                }

    // brute force over all 16 binary 2x2 generator tails
    const auto& f2 = Field::get(1);
    for (int i = 1; i <= 2; ++i) {
        std::vector<BigRat> counts(3, 0);
        for (int g = 0; g < 16; ++g) {
            Matrix tail(f2, 2, 2);
            for (int b = 0; b < 4; ++b) tail.at(b / 2, b % 2) = (g >> b) & 1;
            for (unsigned u = 1; u < 4; ++u) {
                std::vector<uint8_t> in{uint8_t(u & 1), uint8_t((u >> 1) & 1)};
                if (in[0] + in[1] != i) continue;
                auto out = mat_vec(tail.transposed(), in);
                counts[(out[0] != 0) + (out[1] != 0)] += BigRat(1, 16);
            }
        }
        auto want = lrfc_avg_cowef(2, 2, 2, i);
        for (int w = 0; w <= 2; ++w) REQUIRE(counts[w] == want[w]);
    }

    REQUIRE_THROWS_AS(lrfc_avg_cowef(2, 2, 2, 3), std::invalid_argument);
}

TEST_CASE("hamming weight table against brute force", "[analysis]") {
    for (int t : {3, 4}) {
        auto spec = CodeSpec::hamming(t);
        auto got = hamming_cowef(t);
        auto want = brute_cowef(generator_prefix(spec));
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == want[i]);
    }

    auto t3 = hamming_cowef(3);
    std::vector<BigInt> marg(8, 0);
    for (const auto& row : t3)
        for (int w = 0; w <= 7; ++w) marg[w] += row[w];
    std::vector<BigInt> expect{1, 0, 0, 7, 7, 0, 0, 1};
    REQUIRE(marg == expect);

    for (int t : {3, 4, 5, 6}) {
        auto table = hamming_cowef(t);
        const int k = (1 << t) - 1 - t;
        BigInt total = 0;
        BigInt a1 = 0, a2 = 0;
        for (const auto& row : table)
            for (size_t w = 0; w < row.size(); ++w) {
                total += row[w];
                if (w == 1) a1 += row[w];
                if (w == 2) a2 += row[w];
            }
        REQUIRE(total == BigInt(1) << k);
        REQUIRE(a1 == 0);
        REQUIRE(a2 == 0);
    }

    REQUIRE_THROWS_AS(hamming_cowef(2), std::invalid_argument);
}

TEST_CASE("concatenated spectrum", "[analysis]") {
    // degenerate tail: the spectrum is just the block marginal
    auto t3 = hamming_cowef(3);
    auto ws0 = concat_avg_wef(t3, 4, 7, 2);
    std::vector<BigRat> expect{1, 0, 0, 7, 7, 0, 0, 1};
    REQUIRE(ws0.coeffs == expect);

    // brute-force oracle: Hamming (7,4) plus two random binary symbols,
    // averaged over all 256 tail generators
    const auto& f2 = Field::get(1);
    auto g = generator_prefix(CodeSpec::hamming(3));
    std::vector<BigRat> avg(10, 0);
    for (int gm = 0; gm < 256; ++gm) {
        Matrix tail(f2, 4, 2);
        for (int b = 0; b < 8; ++b) tail.at(b / 2, b % 2) = (gm >> b) & 1;
        for (unsigned u = 0; u < 16; ++u) {
            std::vector<uint8_t> in(4);
            for (int b = 0; b < 4; ++b) in[b] = (u >> b) & 1;
            auto head = mat_vec(g.transposed(), in);
            auto tl = mat_vec(tail.transposed(), in);
            int w = 0;
            for (auto s : head) w += s != 0;
            for (auto s : tl) w += s != 0;
            avg[w] += BigRat(1, 256);
        }
    }
    auto ws = concat_avg_wef(t3, 4, 9, 2);
    REQUIRE(ws.coeffs.size() == avg.size());
    for (size_t w = 0; w < avg.size(); ++w) REQUIRE(ws.coeffs[w] == avg[w]);

    // conservation at practical sizes
    auto t6 = hamming_cowef(6);
    for (int l : {114, 228}) {
        auto big = concat_avg_wef(t6, 57, l, 2);
        REQUIRE(big.coeffs[0] == 1);
        REQUIRE(spectrum_total(big) == BigRat(BigInt(1) << 57));
    }

    REQUIRE_THROWS_AS(concat_avg_wef(t3, 4, 6, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(concat_avg_wef(t3, 5, 9, 2), std::invalid_argument);
}

TEST_CASE("union bound on block error probability", "[analysis]") {
    auto t3 = hamming_cowef(3);
    auto hamming_alone = concat_avg_wef(t3, 4, 7, 2);

    REQUIRE(union_bound_pb(hamming_alone, 0.0) == 0.0);
    REQUIRE(union_bound_pb(hamming_alone, 1.0) == 1.0);

    // the bound dominates the exhaustive ML failure probability
    auto g = generator_prefix(CodeSpec::hamming(3));
    for (double eps : {0.05, 0.1, 0.2, 0.3}) {
        double exact = double(exhaustive_ml_pb(g, eps));
        double bound = union_bound_pb(hamming_alone, eps);
        INFO("eps=" << eps);
        REQUIRE(bound >= exact * (1 - 1e-12));
        REQUIRE(bound >= singleton_bound_pb(7, 4, eps));
        REQUIRE(bound <= 1.0);
    }

    // on the whole space every pattern is covered: union bound = Singleton
    WeightSpectrum full{3, 3, 2, {BigRat(1), BigRat(3), BigRat(3), BigRat(1)}};
    for (double eps : {0.1, 0.4})
        REQUIRE(rel_err(union_bound_pb(full, eps), singleton_bound_pb(3, 3, eps)) < 1e-12);

    // longer random tail tightens the bound at fixed eps
    auto t6 = hamming_cowef(6);
    auto r12 = concat_avg_wef(t6, 57, 114, 2);
    auto r14 = concat_avg_wef(t6, 57, 228, 2);
    double b12 = union_bound_pb(r12, 0.2);
    double b14 = union_bound_pb(r14, 0.2);
    REQUIRE(b14 < b12);
    REQUIRE(b12 < 1.0);
}
