#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ats {

using Digest = std::array<uint8_t, 32>;

// floor(log2 b) + 1, the number of digits idec needs for bound b.
uint32_t delta_of(int64_t b);
uint32_t ceil_log2(uint64_t x);
int64_t pow3(uint32_t k);

struct Params {
    uint32_t n = 0;
    uint32_t k = 0;
    int64_t q = 0;
    uint32_t ell = 0;
    uint32_t m = 0;
    uint32_t m_bar = 0;
    uint32_t m_s = 0;
    uint32_t m_bar_s = 0;
    int64_t beta = 0;
    int64_t B = 0;
    uint32_t d = 0;
    std::vector<uint32_t> c;  // c_0 .. c_d
    uint32_t kappa = 0;

    // Derives q, ell, m_bar, m_s, m_bar_s and the tag sequence. m = 0 picks the
    // minimum 2*ceil(log2 q) + 2. Does not validate.
    static Params make(uint32_t n, uint32_t k, int64_t B, int64_t beta, uint32_t kappa,
                       uint32_t m = 0);
    static Params make_with_tags(uint32_t n, uint32_t k, int64_t B, int64_t beta,
                                 uint32_t kappa, uint32_t m, std::vector<uint32_t> c);
    // n=8, k=9, B=2, beta=31, kappa=16.
    static Params defaults();

    // Throws ParamError naming the first violated inequality.
    void validate() const;

    uint32_t cd() const { return c.back(); }
    int64_t half() const { return (q - 1) / 2; }
    int64_t q4() const { return q / 4; }
    int64_t q10() const { return (q + 9) / 10; }
    uint32_t delta_beta() const { return delta_of(beta); }
    uint32_t delta_B() const { return delta_of(B); }
    uint32_t delta_q10() const { return delta_of(q10()); }
    // Fixed width of one serialized Z_q coefficient.
    size_t coeff_bytes() const;

    Digest digest() const;

    bool operator==(const Params&) const = default;
};

// Tag sequence c_j = floor(alpha0 * base^j) with c_0 = 0, extended until c_d >= min_cd.
std::vector<uint32_t> tag_sequence(double base, double alpha0, uint32_t min_cd);

}  // namespace ats
