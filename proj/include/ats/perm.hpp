#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ats/decomp.hpp"
#include "ats/rng.hpp"

namespace ats {

// [b]_3 in {-1, 0, 1}.
inline int8_t mod3c(int64_t b) {
    int64_t r = ((b % 3) + 3) % 3;
    return static_cast<int8_t>(r == 2 ? -1 : r);
}

// Scalar gadgets. Slot layouts:
//   enc3: slot x+1 holds [z-x]_3
//   ext:  slot 2(x+1)+c holds (c ? t : 1-t) * [z-x]_3
//   mult3: slot 3(y+1)+(x+1) holds [a-x]_3 * [g-y]_3
TernaryVec enc3(int z);
TernaryVec ext(int t, int z);
TernaryVec mult3(int a, int g);

// Source-slot maps: permuted[pos] = v[src(pos)].
inline size_t enc3_src(int e, size_t pos) { return static_cast<size_t>(mod3c(int(pos) - 1 - e) + 1); }
inline size_t ext_src(int b, int e, size_t pos) {
    int x = int(pos / 2) - 1, c = int(pos % 2);
    return static_cast<size_t>((mod3c(x - e) + 1) * 2 + (c ^ b));
}
inline size_t mult3_src(int b, int e, size_t pos) {
    int x = int(pos % 3) - 1, y = int(pos / 3) - 1;
    return static_cast<size_t>((mod3c(y - e) + 1) * 3 + (mod3c(x - b) + 1));
}

TernaryVec pi_e(int e, std::span<const int8_t> v);
TernaryVec psi_be(int b, int e, std::span<const int8_t> v);
TernaryVec phi_be(int b, int e, std::span<const int8_t> v);

// Blockwise versions.
TernaryVec enc_vec(std::span<const int8_t> z);
TernaryVec Pi_e(std::span<const int8_t> e, std::span<const int8_t> v);
// enc(z) || ext(t_0, z_1..) || ... || ext(t_{c-1}, ..); length 3|z| + 6|z||t|.
TernaryVec mix(std::span<const int8_t> t, std::span<const int8_t> z);
TernaryVec Psi_be(std::span<const int8_t> b, std::span<const int8_t> e, std::span<const int8_t> v);

// Expansion order: outer group j over |g|/delta, middle i over |a|, inner k over delta.
// Entry (j, i, k) sits at j*|a|*delta + i*delta + k and equals a_i * g_{j*delta + k}.
TernaryVec expd(std::span<const int8_t> a, std::span<const int8_t> g, uint32_t delta);
TernaryVec mult_vec(std::span<const int8_t> a, std::span<const int8_t> g, uint32_t delta);
TernaryVec Phi_be(std::span<const int8_t> b, std::span<const int8_t> e, std::span<const int8_t> v,
                  uint32_t delta);

// Layout of a relation's extended witness: named components (bit or trit vectors)
// extended by Enc / Mix / Mult segments. A permutation seed holds one pad per
// component entry; the same pad is reused wherever the component appears.
class PermutationSpec {
public:
    struct Component {
        size_t len = 0;
        bool binary = false;
    };
    enum class Kind { Enc, Mix, Mult };
    struct Segment {
        Kind kind;
        size_t a;  // Enc: comp; Mix: t comp; Mult: a comp
        size_t b;  // Mix: z comp; Mult: g comp
        uint32_t delta;
    };
    using Values = std::vector<TernaryVec>;

    size_t add_component(size_t len, bool binary);
    void add_enc(size_t comp);
    void add_mix(size_t t_comp, size_t z_comp);
    void add_mult(size_t a_comp, size_t g_comp, uint32_t delta);

    size_t length() const { return length_; }
    size_t seed_length() const;
    const std::vector<Component>& components() const { return comps_; }
    const std::vector<Segment>& segments() const { return segs_; }

    // Throws ShapeError / DomainError on malformed values.
    TernaryVec encode(const Values& values) const;
    // Values of every component, or nullopt if w is not in VALID.
    std::optional<Values> decode(std::span<const int32_t> w) const;
    bool valid(std::span<const int32_t> w) const;
    bool valid(std::span<const int8_t> w) const;

    Values sample_seed(Rng& rng) const;
    Values random_values(Rng& rng) const;
    TernaryVec random_valid(Rng& rng) const { return encode(random_values(rng)); }
    Values inverse_seed(const Values& eta) const;
    // Componentwise x xor eta / [x + eta]_3.
    Values act(const Values& x, const Values& eta) const;

    // Gamma_eta as a source table: out[i] = v[src[i]].
    std::vector<uint32_t> gamma(const Values& eta) const;

    std::vector<uint8_t> pack_seed(const Values& eta) const;
    Values unpack_seed(std::span<const uint8_t> bytes) const;
    size_t packed_seed_size() const { return packed_ternary_size(seed_length()); }

private:
    size_t segment_length(const Segment& s) const;
    void check_values(const Values& v) const;

    std::vector<Component> comps_;
    std::vector<Segment> segs_;
    size_t length_ = 0;
};

template <class T>
std::vector<T> apply_perm(const std::vector<uint32_t>& src, std::span<const T> v) {
    std::vector<T> out(src.size());
    for (size_t i = 0; i < src.size(); ++i) out[i] = v[src[i]];
    return out;
}

}  // namespace ats
