#include "ats/decomp.hpp"

#include "ats/errors.hpp"

namespace ats {

BSequence b_sequence(int64_t B) {
    if (B < 1) throw DomainError("b_sequence: B must be >= 1");
    BSequence bs;
    bs.B = B;
    bs.delta = delta_of(B);
    for (uint32_t j = 1; j <= bs.delta; ++j) {
        int64_t p2 = int64_t{1} << j;
        bs.seq.push_back((B + p2 / 2) / p2);
    }
    return bs;
}

TernaryVec idec(const BSequence& bs, int64_t a) {
    if (a < 0 || a > bs.B) throw DomainError("idec: value outside [0, B]");
    TernaryVec out(bs.delta, 0);
    int64_t rest = a;
    for (uint32_t j = 0; j < bs.delta; ++j) {
        if (rest >= bs.seq[j]) {
            out[j] = 1;
            rest -= bs.seq[j];
        }
    }
    return out;
}

namespace {

void rdec_append(const RingElem& a, const BSequence& bs, TernaryVec& out) {
    for (int32_t x : a.c) {
        int64_t mag = x < 0 ? -int64_t{x} : x;
        if (mag > bs.B) throw DomainError("rdec: coefficient exceeds bound B");
        int8_t sign = x < 0 ? -1 : 1;
        int64_t rest = mag;
        for (uint32_t j = 0; j < bs.delta; ++j) {
            int8_t bit = 0;
            if (rest >= bs.seq[j]) {
                bit = 1;
                rest -= bs.seq[j];
            }
            out.push_back(static_cast<int8_t>(sign * bit));
        }
    }
}

}  // namespace

TernaryVec rdec_tau(const RingElem& a, const BSequence& bs) {
    TernaryVec out;
    out.reserve(a.n() * bs.delta);
    rdec_append(a, bs, out);
    return out;
}

TernaryVec rdec_tau(const RingVec& v, const BSequence& bs) {
    TernaryVec out;
    if (!v.empty()) out.reserve(v.size() * v[0].n() * bs.delta);
    for (const auto& a : v) rdec_append(a, bs, out);
    return out;
}

RingVec rdec_ring(const RingElem& a, const BSequence& bs) {
    TernaryVec t = rdec_tau(a, bs);
    return tau_inv(ternary_to_intvec(t, a.q), a.n());
}

RingVec rdec_ring(const RingVec& v, const BSequence& bs) {
    if (v.empty()) return {};
    TernaryVec t = rdec_tau(v, bs);
    return tau_inv(ternary_to_intvec(t, v[0].q), v[0].n());
}

BSequence full_sequence(const Params& p) { return b_sequence(p.half()); }

TernaryVec rdec_tau(const RingElem& a) { return rdec_tau(a, b_sequence((a.q - 1) / 2)); }
RingVec rdec_ring(const RingElem& a) { return rdec_ring(a, b_sequence((a.q - 1) / 2)); }
RingVec rdec_ring(const RingVec& v) {
    if (v.empty()) return {};
    return rdec_ring(v, b_sequence((v[0].q - 1) / 2));
}

IntVecQ apply_H(const BSequence& bs, std::span<const int8_t> w, int64_t q) {
    if (w.size() % bs.delta != 0) throw ShapeError("apply_H: length not a multiple of delta");
    IntVecQ out{q, std::vector<int32_t>(w.size() / bs.delta, 0)};
    for (size_t i = 0; i < out.v.size(); ++i) {
        int64_t acc = 0;
        for (uint32_t j = 0; j < bs.delta; ++j) acc += bs.seq[j] * w[i * bs.delta + j];
        out.v[i] = reduce(acc, q);
    }
    return out;
}

IntVecQ apply_H(const BSequence& bs, const IntVecQ& w) {
    if (w.size() % bs.delta != 0) throw ShapeError("apply_H: length not a multiple of delta");
    IntVecQ out{w.q, std::vector<int32_t>(w.size() / bs.delta, 0)};
    for (size_t i = 0; i < out.v.size(); ++i) {
        __int128 acc = 0;
        for (uint32_t j = 0; j < bs.delta; ++j) acc += static_cast<__int128>(bs.seq[j]) * w.v[i * bs.delta + j];
        out.v[i] = reduce(static_cast<int64_t>(acc % w.q), w.q);
    }
    return out;
}

IntMatQ dense_H(const BSequence& bs, size_t n, size_t m, int64_t q) {
    IntMatQ h(n * m, n * m * bs.delta, q);
    for (size_t r = 0; r < n * m; ++r)
        for (uint32_t j = 0; j < bs.delta; ++j) h.at(r, r * bs.delta + j) = reduce(bs.seq[j], q);
    return h;
}

RingVec ternary_to_ring(std::span<const int8_t> t, const Params& p) {
    return tau_inv(ternary_to_intvec(t, p.q), p.n);
}

IntVecQ ternary_to_intvec(std::span<const int8_t> t, int64_t q) {
    IntVecQ v{q, std::vector<int32_t>(t.begin(), t.end())};
    return v;
}

std::vector<uint8_t> pack_ternary(std::span<const int8_t> t) {
    std::vector<uint8_t> out(packed_ternary_size(t.size()), 0);
    for (size_t i = 0; i < t.size(); ++i) {
        uint8_t code;
        switch (t[i]) {
            case 0: code = 0; break;
            case 1: code = 1; break;
            case -1: code = 3; break;
            default: throw DomainError("pack_ternary: entry outside {-1,0,1}");
        }
        out[i / 4] |= static_cast<uint8_t>(code << (2 * (i % 4)));
    }
    return out;
}

TernaryVec unpack_ternary(std::span<const uint8_t> bytes, size_t len) {
    if (bytes.size() != packed_ternary_size(len)) throw FormatError("packed ternary length mismatch");
    TernaryVec t(len);
    for (size_t i = 0; i < len; ++i) {
        uint8_t code = (bytes[i / 4] >> (2 * (i % 4))) & 3;
        if (code == 2) throw FormatError("invalid ternary code");
        t[i] = code == 0 ? 0 : (code == 1 ? 1 : -1);
    }
    for (size_t i = len; i < bytes.size() * 4; ++i)
        if ((bytes[i / 4] >> (2 * (i % 4))) & 3) throw FormatError("nonzero ternary padding");
    return t;
}

}  // namespace ats
