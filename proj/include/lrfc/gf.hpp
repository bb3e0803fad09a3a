#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lrfc {

// Thread-local field-operation counter, used by the complexity ratio tests.
// Disabled by default so simulation hot loops pay only a predictable branch.
struct OpCount {
    static bool& enabled() {
        thread_local bool on = false;
        return on;
    }
    static std::uint64_t& value() {
        thread_local std::uint64_t n = 0;
        return n;
    }
    static void reset() { value() = 0; }
    static void tick() {
        if (enabled()) ++value();
    }
};

// GF(2^m) with log/exp tables, m in {1,2,3,4,8}. Elements are the low m bits
// of a byte in the polynomial basis. Immutable after construction.
class Field {
public:
    explicit Field(int m) : m_(m) {
        switch (m) {
            case 1: poly_ = 0x3; break;    // x + 1
            case 2: poly_ = 0x7; break;    // x^2 + x + 1
            case 3: poly_ = 0xB; break;    // x^3 + x + 1
            case 4: poly_ = 0x13; break;   // x^4 + x + 1
            case 8: poly_ = 0x11D; break;  // x^8 + x^4 + x^3 + x^2 + 1
            default:
                throw std::invalid_argument("unsupported extension degree m=" + std::to_string(m));
        }
        q_ = 1 << m;
        log_.fill(-1);
        int x = 1;
        for (int i = 0; i < q_ - 1; ++i) {
            exp_[i] = static_cast<std::uint8_t>(x);
            log_[x] = static_cast<std::int16_t>(i);
            x <<= 1;
            if (x & q_) x ^= poly_;
        }
        for (int i = 0; i < q_ - 1; ++i) exp_[i + q_ - 1] = exp_[i];  // skip the mod in mul
    }

    // Shared immutable instances for the supported degrees.
    static const Field& get(int m) {
        static const Field f1(1), f2(2), f3(3), f4(4), f8(8);
        switch (m) {
            case 1: return f1;
            case 2: return f2;
            case 3: return f3;
            case 4: return f4;
            case 8: return f8;
            default:
                throw std::invalid_argument("unsupported extension degree m=" + std::to_string(m));
        }
    }

    int m() const { return m_; }
    int q() const { return q_; }
    int prim_poly() const { return poly_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
        OpCount::tick();
        return a ^ b;  // characteristic 2: add == subtract
    }

    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        OpCount::tick();
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    std::uint8_t inv(std::uint8_t a) const {
        OpCount::tick();
        if (a == 0) throw std::domain_error("zero has no inverse");
        return exp_[q_ - 1 - log_[a]];
    }

    // a^e by log arithmetic; 0^0 = 1.
    std::uint8_t pow(std::uint8_t a, unsigned e) const {
        OpCount::tick();
        if (e == 0) return 1;
        if (a == 0) return 0;
        return exp_[(static_cast<unsigned>(log_[a]) * e) % (q_ - 1)];
    }

    std::uint8_t alpha_pow(int i) const {  // alpha^i, alpha = primitive element
        int r = i % (q_ - 1);
        if (r < 0) r += q_ - 1;
        return exp_[r];
    }

    int log(std::uint8_t a) const {
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }

private:
    int m_, q_;
    int poly_;
    std::array<std::uint8_t, 512> exp_{};
    std::array<std::int16_t, 256> log_{};
};

}  // namespace lrfc
