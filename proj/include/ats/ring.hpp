#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ats/bytes.hpp"
#include "ats/params.hpp"
#include "ats/rng.hpp"

namespace ats {

// Centered representative of x mod q in [-(q-1)/2, (q-1)/2]. q is odd throughout.
inline int32_t reduce(int64_t x, int64_t q) {
    int64_t r = x % q;
    int64_t h = (q - 1) / 2;
    if (r > h) r -= q;
    else if (r < -h) r += q;
    return static_cast<int32_t>(r);
}

// Element of R_q = Z_q[X]/(X^n + 1) with centered coefficients.
struct RingElem {
    int64_t q = 0;
    std::vector<int32_t> c;

    RingElem() = default;
    RingElem(size_t n, int64_t q_) : q(q_), c(n, 0) {}
    static RingElem zero(const Params& p) { return RingElem(p.n, p.q); }
    static RingElem one(const Params& p);
    static RingElem from_coeffs(const std::vector<int64_t>& coeffs, int64_t q);

    size_t n() const { return c.size(); }
    bool is_zero() const;
    bool operator==(const RingElem&) const = default;
};

using RingVec = std::vector<RingElem>;

RingVec zero_vec(const Params& p, size_t len);

RingElem add(const RingElem& a, const RingElem& b);
RingElem sub(const RingElem& a, const RingElem& b);
RingElem neg(const RingElem& a);
RingElem scale(const RingElem& a, int64_t s);
// Negacyclic product.
RingElem mul(const RingElem& a, const RingElem& b);
// a * X^j for any j >= 0.
RingElem mul_xj(const RingElem& a, uint64_t j);

RingVec add(const RingVec& a, const RingVec& b);
RingVec sub(const RingVec& a, const RingVec& b);
RingVec scale(const RingVec& a, int64_t s);
// Each entry of v times g.
RingVec mul(const RingVec& v, const RingElem& g);
// Row-times-column: sum_i a_i * b_i.
RingElem dot(const RingVec& a, const RingVec& b);

int64_t inf_norm(const RingElem& a);
int64_t inf_norm(const RingVec& v);

// Integer vector mod q with centered entries.
struct IntVecQ {
    int64_t q = 0;
    std::vector<int32_t> v;

    size_t size() const { return v.size(); }
    bool operator==(const IntVecQ&) const = default;
};

int64_t inf_norm(const IntVecQ& v);

// Dense rows x cols matrix mod q, row-major. Used for rot images and test oracles.
struct IntMatQ {
    int64_t q = 0;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<int32_t> a;

    IntMatQ() = default;
    IntMatQ(size_t r, size_t c, int64_t q_) : q(q_), rows(r), cols(c), a(r * c, 0) {}
    int32_t& at(size_t r, size_t c) { return a[r * cols + c]; }
    int32_t at(size_t r, size_t c) const { return a[r * cols + c]; }
    bool operator==(const IntMatQ&) const = default;
};

IntVecQ matvec(const IntMatQ& m, const IntVecQ& x);
IntMatQ matmul(const IntMatQ& a, const IntMatQ& b);

IntVecQ tau(const RingElem& a);
IntVecQ tau(const RingVec& v);
RingVec tau_inv(const IntVecQ& w, size_t n);

// Column j is tau(a * X^j).
IntMatQ rot(const RingElem& a);
// [rot(a_1) | ... | rot(a_m)].
IntMatQ rot_row(const RingVec& a);

RingElem sample_uniform(Rng& rng, const Params& p);
RingElem sample_chi(Rng& rng, const Params& p, int64_t bound);
RingVec sample_uniform_vec(Rng& rng, const Params& p, size_t len);
RingVec sample_chi_vec(Rng& rng, const Params& p, int64_t bound, size_t len);

// Canonical encoding: n little-endian fields of coeff_bytes() each, value in [0, q).
void put_ring(ByteWriter& w, const RingElem& a, size_t width);
RingElem get_ring(ByteReader& r, const Params& p);
void put_ring_vec(ByteWriter& w, const RingVec& v, size_t width);
RingVec get_ring_vec(ByteReader& r, const Params& p, size_t len);

std::string ring_hex(const RingElem& a, size_t width);

}  // namespace ats
