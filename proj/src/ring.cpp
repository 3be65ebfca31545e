#include "ats/ring.hpp"

#include <cstdlib>

#include "ats/errors.hpp"

namespace ats {

namespace {

void check_same(const RingElem& a, const RingElem& b) {
    if (a.q != b.q || a.n() != b.n()) throw ParamError("ring elements from different parameter sets");
}

void check_len(size_t a, size_t b) {
    if (a != b) throw ShapeError("ring vector dimension mismatch");
}

}  // namespace

RingElem RingElem::one(const Params& p) {
    RingElem r(p.n, p.q);
    r.c[0] = 1;
    return r;
}

RingElem RingElem::from_coeffs(const std::vector<int64_t>& coeffs, int64_t q) {
    RingElem r(coeffs.size(), q);
    for (size_t i = 0; i < coeffs.size(); ++i) r.c[i] = reduce(coeffs[i], q);
    return r;
}

bool RingElem::is_zero() const {
    for (int32_t x : c)
        if (x != 0) return false;
    return true;
}

RingVec zero_vec(const Params& p, size_t len) { return RingVec(len, RingElem::zero(p)); }

RingElem add(const RingElem& a, const RingElem& b) {
    check_same(a, b);
    RingElem r(a.n(), a.q);
    for (size_t i = 0; i < a.n(); ++i) r.c[i] = reduce(int64_t{a.c[i]} + b.c[i], a.q);
    return r;
}

RingElem sub(const RingElem& a, const RingElem& b) {
    check_same(a, b);
    RingElem r(a.n(), a.q);
    for (size_t i = 0; i < a.n(); ++i) r.c[i] = reduce(int64_t{a.c[i]} - b.c[i], a.q);
    return r;
}

RingElem neg(const RingElem& a) {
    RingElem r(a.n(), a.q);
    for (size_t i = 0; i < a.n(); ++i) r.c[i] = -a.c[i];
    return r;
}

RingElem scale(const RingElem& a, int64_t s) {
    RingElem r(a.n(), a.q);
    int64_t sr = reduce(s, a.q);
    for (size_t i = 0; i < a.n(); ++i) r.c[i] = reduce(sr * a.c[i], a.q);
    return r;
}

RingElem mul(const RingElem& a, const RingElem& b) {
    check_same(a, b);
    const size_t n = a.n();
    // |a_i * b_j| < q^2 / 4 and n terms: __int128 keeps large q safe.
    std::vector<__int128> acc(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        const int64_t ai = a.c[i];
        for (size_t j = 0; j < n; ++j) {
            int64_t prod = ai * b.c[j];
            size_t t = i + j;
            if (t >= n) acc[t - n] -= prod;
            else acc[t] += prod;
        }
    }
    RingElem r(n, a.q);
    for (size_t t = 0; t < n; ++t) r.c[t] = static_cast<int32_t>(reduce(static_cast<int64_t>(acc[t] % a.q), a.q));
    return r;
}

RingElem mul_xj(const RingElem& a, uint64_t j) {
    const size_t n = a.n();
    RingElem r(n, a.q);
    uint64_t jj = j % (2 * n);
    for (size_t i = 0; i < n; ++i) {
        uint64_t t = i + jj;
        bool negate = false;
        while (t >= n) {
            t -= n;
            negate = !negate;
        }
        r.c[t] = negate ? -a.c[i] : a.c[i];
    }
    return r;
}

RingVec add(const RingVec& a, const RingVec& b) {
    check_len(a.size(), b.size());
    RingVec r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.push_back(add(a[i], b[i]));
    return r;
}

RingVec sub(const RingVec& a, const RingVec& b) {
    check_len(a.size(), b.size());
    RingVec r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.push_back(sub(a[i], b[i]));
    return r;
}

RingVec scale(const RingVec& a, int64_t s) {
    RingVec r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(scale(x, s));
    return r;
}

RingVec mul(const RingVec& v, const RingElem& g) {
    RingVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(mul(x, g));
    return r;
}

RingElem dot(const RingVec& a, const RingVec& b) {
    check_len(a.size(), b.size());
    if (a.empty()) throw ShapeError("empty ring vector product");
    RingElem r(a[0].n(), a[0].q);
    for (size_t i = 0; i < a.size(); ++i) r = add(r, mul(a[i], b[i]));
    return r;
}

int64_t inf_norm(const RingElem& a) {
    int64_t m = 0;
    for (int32_t x : a.c) m = std::max<int64_t>(m, std::llabs(x));
    return m;
}

int64_t inf_norm(const RingVec& v) {
    int64_t m = 0;
    for (const auto& x : v) m = std::max(m, inf_norm(x));
    return m;
}

int64_t inf_norm(const IntVecQ& v) {
    int64_t m = 0;
    for (int32_t x : v.v) m = std::max<int64_t>(m, std::llabs(x));
    return m;
}

IntVecQ matvec(const IntMatQ& m, const IntVecQ& x) {
    if (m.cols != x.size()) throw ShapeError("matvec dimension mismatch");
    IntVecQ r{m.q, std::vector<int32_t>(m.rows, 0)};
    for (size_t i = 0; i < m.rows; ++i) {
        __int128 acc = 0;
        for (size_t j = 0; j < m.cols; ++j) acc += static_cast<int64_t>(m.at(i, j)) * x.v[j];
        r.v[i] = reduce(static_cast<int64_t>(acc % m.q), m.q);
    }
    return r;
}

IntMatQ matmul(const IntMatQ& a, const IntMatQ& b) {
    if (a.cols != b.rows) throw ShapeError("matmul dimension mismatch");
    IntMatQ r(a.rows, b.cols, a.q);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) {
            __int128 acc = 0;
            for (size_t k = 0; k < a.cols; ++k) acc += static_cast<int64_t>(a.at(i, k)) * b.at(k, j);
            r.at(i, j) = reduce(static_cast<int64_t>(acc % a.q), a.q);
        }
    return r;
}

IntVecQ tau(const RingElem& a) { return IntVecQ{a.q, a.c}; }

IntVecQ tau(const RingVec& v) {
    IntVecQ r;
    if (v.empty()) return r;
    r.q = v[0].q;
    r.v.reserve(v.size() * v[0].n());
    for (const auto& x : v) r.v.insert(r.v.end(), x.c.begin(), x.c.end());
    return r;
}

RingVec tau_inv(const IntVecQ& w, size_t n) {
    if (n == 0 || w.size() % n != 0) throw ShapeError("tau_inv: length not a multiple of n");
    RingVec r;
    r.reserve(w.size() / n);
    for (size_t i = 0; i < w.size(); i += n) {
        RingElem e(n, w.q);
        for (size_t j = 0; j < n; ++j) e.c[j] = reduce(w.v[i + j], w.q);
        r.push_back(std::move(e));
    }
    return r;
}

IntMatQ rot(const RingElem& a) {
    const size_t n = a.n();
    IntMatQ m(n, n, a.q);
    for (size_t j = 0; j < n; ++j) {
        RingElem col = mul_xj(a, j);
        for (size_t i = 0; i < n; ++i) m.at(i, j) = col.c[i];
    }
    return m;
}

IntMatQ rot_row(const RingVec& a) {
    if (a.empty()) return {};
    const size_t n = a[0].n();
    IntMatQ m(n, n * a.size(), a[0].q);
    for (size_t b = 0; b < a.size(); ++b) {
        IntMatQ r = rot(a[b]);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m.at(i, b * n + j) = r.at(i, j);
    }
    return m;
}

RingElem sample_uniform(Rng& rng, const Params& p) {
    RingElem r(p.n, p.q);
    for (auto& x : r.c) x = reduce(static_cast<int64_t>(rng.uniform(static_cast<uint64_t>(p.q))), p.q);
    return r;
}

RingElem sample_chi(Rng& rng, const Params& p, int64_t bound) {
    if (bound < 0 || bound > p.half()) throw DomainError("sample_chi: bound outside [0, (q-1)/2]");
    RingElem r(p.n, p.q);
    for (auto& x : r.c) x = static_cast<int32_t>(rng.uniform_range(-bound, bound));
    return r;
}

RingVec sample_uniform_vec(Rng& rng, const Params& p, size_t len) {
    RingVec v;
    v.reserve(len);
    for (size_t i = 0; i < len; ++i) v.push_back(sample_uniform(rng, p));
    return v;
}

RingVec sample_chi_vec(Rng& rng, const Params& p, int64_t bound, size_t len) {
    RingVec v;
    v.reserve(len);
    for (size_t i = 0; i < len; ++i) v.push_back(sample_chi(rng, p, bound));
    return v;
}

void put_ring(ByteWriter& w, const RingElem& a, size_t width) {
    for (int32_t x : a.c) {
        int64_t u = x < 0 ? x + a.q : x;
        w.put_le(static_cast<uint64_t>(u), width);
    }
}

RingElem get_ring(ByteReader& r, const Params& p) {
    RingElem e(p.n, p.q);
    const size_t width = p.coeff_bytes();
    for (auto& x : e.c) {
        uint64_t u = r.get_le(width);
        if (u >= static_cast<uint64_t>(p.q)) throw FormatError("ring coefficient out of range");
        x = reduce(static_cast<int64_t>(u), p.q);
    }
    return e;
}

void put_ring_vec(ByteWriter& w, const RingVec& v, size_t width) {
    for (const auto& x : v) put_ring(w, x, width);
}

RingVec get_ring_vec(ByteReader& r, const Params& p, size_t len) {
    RingVec v;
    v.reserve(len);
    for (size_t i = 0; i < len; ++i) v.push_back(get_ring(r, p));
    return v;
}

std::string ring_hex(const RingElem& a, size_t width) {
    ByteWriter w;
    put_ring(w, a, width);
    return to_hex(w.data());
}

}  // namespace ats
