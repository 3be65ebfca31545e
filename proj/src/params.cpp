#include "ats/params.hpp"

#include <cmath>
#include <string>

#include "ats/bytes.hpp"
#include "ats/errors.hpp"
#include "ats/hash.hpp"

namespace ats {

uint32_t delta_of(int64_t b) {
    if (b < 1) throw DomainError("decomposition bound must be >= 1");
    uint32_t d = 0;
    while (b > 0) {
        ++d;
        b >>= 1;
    }
    return d;
}

uint32_t ceil_log2(uint64_t x) {
    uint32_t r = 0;
    while ((uint64_t{1} << r) < x) ++r;
    return r;
}

int64_t pow3(uint32_t k) {
    int64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) q *= 3;
    return q;
}

std::vector<uint32_t> tag_sequence(double base, double alpha0, uint32_t min_cd) {
    std::vector<uint32_t> c{0};
    for (uint32_t j = 1; c.back() < min_cd; ++j)
        c.push_back(static_cast<uint32_t>(std::floor(alpha0 * std::pow(base, j))));
    return c;
}

Params Params::make_with_tags(uint32_t n, uint32_t k, int64_t B, int64_t beta, uint32_t kappa,
                              uint32_t m, std::vector<uint32_t> c) {
    Params p;
    p.n = n;
    p.k = k;
    p.q = (k >= 1 && k <= 19) ? pow3(k) : 0;
    p.ell = p.q >= 3 ? delta_of((p.q - 1) / 2) : 0;
    p.m = m != 0 ? m : 2 * ceil_log2(static_cast<uint64_t>(p.q)) + 2;
    p.m_bar = p.m + k;
    p.m_s = 4 * p.ell + 1;
    p.m_bar_s = p.m_s * p.ell;
    p.beta = beta;
    p.B = B;
    p.c = std::move(c);
    p.d = p.c.empty() ? 0 : static_cast<uint32_t>(p.c.size() - 1);
    p.kappa = kappa;
    return p;
}

Params Params::make(uint32_t n, uint32_t k, int64_t B, int64_t beta, uint32_t kappa, uint32_t m) {
    return make_with_tags(n, k, B, beta, kappa, m, tag_sequence(2.0, 1.0, 10));
}

Params Params::defaults() { return make(8, 9, 2, 31, 16); }

void Params::validate() const {
    if (n < 4 || (n & (n - 1)) != 0) throw ParamError("n must be a power of two with n >= 4");
    if (k < 1 || k > 19) throw ParamError("k must satisfy 1 <= k <= 19 (q = 3^k < 2^31)");
    if (q != pow3(k)) throw ParamError("q must equal 3^k");
    if (m < 2 * ceil_log2(static_cast<uint64_t>(q)) + 2)
        throw ParamError("m >= 2*ceil(log2 q) + 2 violated");
    if (B < 1) throw ParamError("B >= 1 violated");
    if (beta < 1 || beta > half()) throw ParamError("1 <= beta <= (q-1)/2 violated");
    if (c.size() < 2 || c[0] != 0) throw ParamError("tag sequence must have d >= 1 and c_0 = 0");
    for (size_t j = 1; j < c.size(); ++j)
        if (c[j] <= c[j - 1]) throw ParamError("tag sequence c_j must be strictly increasing");
    if (kappa < 1) throw ParamError("kappa >= 1 violated");
    // 3 n^2 B^3 <= ceil(q/10)
    long double lhs = 3.0L * n * n * static_cast<long double>(B) * B * B;
    if (lhs > static_cast<long double>(q10()))
        throw ParamError("3*n^2*B^3 <= ceil(q/10) violated");
}

size_t Params::coeff_bytes() const {
    size_t w = 1;
    while (w < 8 && (static_cast<uint64_t>(1) << (8 * w)) < static_cast<uint64_t>(q)) ++w;
    return w;
}

Digest Params::digest() const {
    ByteWriter w;
    w.put_bytes("ATS-PARAMS-V1");
    w.put_u32(n);
    w.put_u32(k);
    w.put_u32(m);
    w.put_i64(B);
    w.put_i64(beta);
    w.put_u32(kappa);
    w.put_u32(d);
    for (uint32_t cj : c) w.put_u32(cj);
    return sha256(w.data());
}

}  // namespace ats
