#include "ats/perm.hpp"

#include <algorithm>
#include <array>

#include "ats/errors.hpp"

namespace ats {

namespace {

void check_trit(int z, const char* what) {
    if (z < -1 || z > 1) throw DomainError(what);
}

void check_len(size_t got, size_t want, const char* what) {
    if (got != want) throw ShapeError(what);
}

}  // namespace

TernaryVec enc3(int z) {
    check_trit(z, "enc3: input outside {-1,0,1}");
    TernaryVec v(3);
    for (int x = -1; x <= 1; ++x) v[x + 1] = mod3c(z - x);
    return v;
}

TernaryVec ext(int t, int z) {
    if (t != 0 && t != 1) throw DomainError("ext: t must be a bit");
    check_trit(z, "ext: z outside {-1,0,1}");
    TernaryVec v(6);
    for (int x = -1; x <= 1; ++x)
        for (int c = 0; c <= 1; ++c) v[(x + 1) * 2 + c] = static_cast<int8_t>((c ? t : 1 - t) * mod3c(z - x));
    return v;
}

TernaryVec mult3(int a, int g) {
    check_trit(a, "mult3: a outside {-1,0,1}");
    check_trit(g, "mult3: g outside {-1,0,1}");
    TernaryVec v(9);
    for (int y = -1; y <= 1; ++y)
        for (int x = -1; x <= 1; ++x) v[(y + 1) * 3 + (x + 1)] = static_cast<int8_t>(mod3c(a - x) * mod3c(g - y));
    return v;
}

TernaryVec pi_e(int e, std::span<const int8_t> v) {
    check_len(v.size(), 3, "pi_e: vector must have length 3");
    TernaryVec out(3);
    for (size_t p = 0; p < 3; ++p) out[p] = v[enc3_src(e, p)];
    return out;
}

TernaryVec psi_be(int b, int e, std::span<const int8_t> v) {
    check_len(v.size(), 6, "psi_be: vector must have length 6");
    TernaryVec out(6);
    for (size_t p = 0; p < 6; ++p) out[p] = v[ext_src(b, e, p)];
    return out;
}

TernaryVec phi_be(int b, int e, std::span<const int8_t> v) {
    check_len(v.size(), 9, "phi_be: vector must have length 9");
    TernaryVec out(9);
    for (size_t p = 0; p < 9; ++p) out[p] = v[mult3_src(b, e, p)];
    return out;
}

namespace {

const std::array<std::array<int8_t, 3>, 3>& enc3_table() {
    static const auto t = [] {
        std::array<std::array<int8_t, 3>, 3> r{};
        for (int z = -1; z <= 1; ++z) {
            auto v = enc3(z);
            std::copy(v.begin(), v.end(), r[z + 1].begin());
        }
        return r;
    }();
    return t;
}

const std::array<std::array<std::array<int8_t, 6>, 3>, 2>& ext_table() {
    static const auto t = [] {
        std::array<std::array<std::array<int8_t, 6>, 3>, 2> r{};
        for (int b = 0; b <= 1; ++b)
            for (int z = -1; z <= 1; ++z) {
                auto v = ext(b, z);
                std::copy(v.begin(), v.end(), r[b][z + 1].begin());
            }
        return r;
    }();
    return t;
}

}  // namespace

TernaryVec enc_vec(std::span<const int8_t> z) {
    for (int8_t x : z) check_trit(x, "enc3: input outside {-1,0,1}");
    const auto& T = enc3_table();
    TernaryVec out(3 * z.size());
    for (size_t i = 0; i < z.size(); ++i) std::copy_n(T[z[i] + 1].begin(), 3, out.begin() + 3 * i);
    return out;
}

TernaryVec Pi_e(std::span<const int8_t> e, std::span<const int8_t> v) {
    check_len(v.size(), 3 * e.size(), "Pi_e: length mismatch");
    TernaryVec out(v.size());
    for (size_t i = 0; i < e.size(); ++i)
        for (size_t p = 0; p < 3; ++p) out[3 * i + p] = v[3 * i + enc3_src(e[i], p)];
    return out;
}

TernaryVec mix(std::span<const int8_t> t, std::span<const int8_t> z) {
    for (int8_t x : t)
        if (x != 0 && x != 1) throw DomainError("ext: t must be a bit");
    TernaryVec out = enc_vec(z);
    const auto& T = ext_table();
    out.resize(3 * z.size() + 6 * z.size() * t.size());
    auto o = out.begin() + 3 * z.size();
    for (int8_t tj : t)
        for (int8_t zi : z) {
            std::copy_n(T[tj][zi + 1].begin(), 6, o);
            o += 6;
        }
    return out;
}

TernaryVec Psi_be(std::span<const int8_t> b, std::span<const int8_t> e, std::span<const int8_t> v) {
    const size_t dz = e.size(), dt = b.size();
    check_len(v.size(), 3 * dz + 6 * dz * dt, "Psi_be: length mismatch");
    TernaryVec out = Pi_e(e, v.subspan(0, 3 * dz));
    out.resize(v.size());
    for (size_t j = 0; j < dt; ++j)
        for (size_t i = 0; i < dz; ++i) {
            size_t base = 3 * dz + 6 * (j * dz + i);
            for (size_t p = 0; p < 6; ++p) out[base + p] = v[base + ext_src(b[j], e[i], p)];
        }
    return out;
}

TernaryVec expd(std::span<const int8_t> a, std::span<const int8_t> g, uint32_t delta) {
    if (delta == 0 || g.size() % delta != 0) throw ShapeError("expd: |g| must be a multiple of delta");
    const size_t groups = g.size() / delta;
    TernaryVec out;
    out.reserve(a.size() * g.size());
    for (size_t j = 0; j < groups; ++j)
        for (size_t i = 0; i < a.size(); ++i)
            for (uint32_t k = 0; k < delta; ++k) out.push_back(static_cast<int8_t>(a[i] * g[j * delta + k]));
    return out;
}

TernaryVec mult_vec(std::span<const int8_t> a, std::span<const int8_t> g, uint32_t delta) {
    if (delta == 0 || g.size() % delta != 0) throw ShapeError("mult: |g| must be a multiple of delta");
    for (int8_t x : a) check_trit(x, "mult3: a outside {-1,0,1}");
    for (int8_t x : g) check_trit(x, "mult3: g outside {-1,0,1}");
    static const auto table = [] {
        std::array<std::array<TernaryVec, 3>, 3> t;
        for (int x = -1; x <= 1; ++x)
            for (int y = -1; y <= 1; ++y) t[x + 1][y + 1] = mult3(x, y);
        return t;
    }();
    const size_t groups = g.size() / delta;
    TernaryVec out(9 * a.size() * g.size());
    int8_t* o = out.data();
    for (size_t j = 0; j < groups; ++j)
        for (size_t i = 0; i < a.size(); ++i)
            for (uint32_t k = 0; k < delta; ++k, o += 9) {
                const auto& b = table[a[i] + 1][g[j * delta + k] + 1];
                std::copy(b.begin(), b.end(), o);
            }
    return out;
}

TernaryVec Phi_be(std::span<const int8_t> b, std::span<const int8_t> e, std::span<const int8_t> v,
                  uint32_t delta) {
    if (delta == 0 || e.size() % delta != 0) throw ShapeError("Phi: |e| must be a multiple of delta");
    check_len(v.size(), 9 * b.size() * e.size(), "Phi: length mismatch");
    const size_t groups = e.size() / delta;
    TernaryVec out(v.size());
    size_t blk = 0;
    for (size_t j = 0; j < groups; ++j)
        for (size_t i = 0; i < b.size(); ++i)
            for (uint32_t k = 0; k < delta; ++k, ++blk)
                for (size_t p = 0; p < 9; ++p)
                    out[9 * blk + p] = v[9 * blk + mult3_src(b[i], e[j * delta + k], p)];
    return out;
}

size_t PermutationSpec::add_component(size_t len, bool binary) {
    if (len == 0) throw ShapeError("permutation component must be non-empty");
    comps_.push_back({len, binary});
    return comps_.size() - 1;
}

size_t PermutationSpec::segment_length(const Segment& s) const {
    switch (s.kind) {
        case Kind::Enc: return 3 * comps_[s.a].len;
        case Kind::Mix: return 3 * comps_[s.b].len + 6 * comps_[s.b].len * comps_[s.a].len;
        case Kind::Mult: return 9 * comps_[s.a].len * comps_[s.b].len;
    }
    return 0;
}

void PermutationSpec::add_enc(size_t comp) {
    if (comp >= comps_.size() || comps_[comp].binary) throw ShapeError("enc segment needs a trit component");
    segs_.push_back({Kind::Enc, comp, 0, 0});
    length_ += segment_length(segs_.back());
}

void PermutationSpec::add_mix(size_t t_comp, size_t z_comp) {
    if (t_comp >= comps_.size() || !comps_[t_comp].binary) throw ShapeError("mix needs a bit component for t");
    if (z_comp >= comps_.size() || comps_[z_comp].binary) throw ShapeError("mix needs a trit component for z");
    segs_.push_back({Kind::Mix, t_comp, z_comp, 0});
    length_ += segment_length(segs_.back());
}

void PermutationSpec::add_mult(size_t a_comp, size_t g_comp, uint32_t delta) {
    if (a_comp >= comps_.size() || comps_[a_comp].binary) throw ShapeError("mult needs a trit component for a");
    if (g_comp >= comps_.size() || comps_[g_comp].binary) throw ShapeError("mult needs a trit component for g");
    if (delta == 0 || comps_[g_comp].len % delta != 0) throw ShapeError("mult: |g| must be a multiple of delta");
    segs_.push_back({Kind::Mult, a_comp, g_comp, delta});
    length_ += segment_length(segs_.back());
}

size_t PermutationSpec::seed_length() const {
    size_t s = 0;
    for (const auto& c : comps_) s += c.len;
    return s;
}

void PermutationSpec::check_values(const Values& v) const {
    if (v.size() != comps_.size()) throw ShapeError("wrong number of components");
    for (size_t c = 0; c < comps_.size(); ++c) {
        if (v[c].size() != comps_[c].len) throw ShapeError("component length mismatch");
        for (int8_t x : v[c]) {
            if (comps_[c].binary ? (x != 0 && x != 1) : (x < -1 || x > 1))
                throw DomainError("component entry outside its domain");
        }
    }
}

TernaryVec PermutationSpec::encode(const Values& values) const {
    check_values(values);
    TernaryVec out;
    out.reserve(length_);
    for (const auto& s : segs_) {
        TernaryVec part;
        switch (s.kind) {
            case Kind::Enc: part = enc_vec(values[s.a]); break;
            case Kind::Mix: part = mix(values[s.a], values[s.b]); break;
            case Kind::Mult: part = mult_vec(values[s.a], values[s.b], s.delta); break;
        }
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::optional<PermutationSpec::Values> PermutationSpec::decode(std::span<const int32_t> w) const {
    if (w.size() != length_) return std::nullopt;
    for (int32_t x : w)
        if (x < -1 || x > 1) return std::nullopt;
    Values v(comps_.size());
    std::vector<bool> seen(comps_.size(), false);
    size_t off = 0;
    for (const auto& s : segs_) {
        switch (s.kind) {
            case Kind::Enc:
                if (!seen[s.a]) {
                    for (size_t i = 0; i < comps_[s.a].len; ++i) v[s.a].push_back(static_cast<int8_t>(w[off + 3 * i + 1]));
                    seen[s.a] = true;
                }
                break;
            case Kind::Mix: {
                const size_t dz = comps_[s.b].len, dt = comps_[s.a].len;
                if (!seen[s.b]) {
                    for (size_t i = 0; i < dz; ++i) v[s.b].push_back(static_cast<int8_t>(w[off + 3 * i + 1]));
                    seen[s.b] = true;
                }
                if (!seen[s.a]) {
                    for (size_t j = 0; j < dt; ++j) {
                        size_t base = off + 3 * dz + 6 * j * dz;
                        bool odd = w[base + 1] || w[base + 3] || w[base + 5];
                        v[s.a].push_back(odd ? 1 : 0);
                    }
                    seen[s.a] = true;
                }
                break;
            }
            case Kind::Mult: {
                const size_t na = comps_[s.a].len, lg = comps_[s.b].len;
                const size_t groups = lg / s.delta;
                // a from the zero column of block (0, i, 0), g from the zero row of block (j, 0, k).
                auto zero_col = [&](size_t base) -> int {
                    for (int x = -1; x <= 1; ++x)
                        if (!w[base + x + 1] && !w[base + 3 + x + 1] && !w[base + 6 + x + 1]) return x;
                    return 0;
                };
                auto zero_row = [&](size_t base) -> int {
                    for (int y = -1; y <= 1; ++y)
                        if (!w[base + 3 * (y + 1)] && !w[base + 3 * (y + 1) + 1] && !w[base + 3 * (y + 1) + 2]) return y;
                    return 0;
                };
                if (!seen[s.a]) {
                    for (size_t i = 0; i < na; ++i) v[s.a].push_back(static_cast<int8_t>(zero_col(off + 9 * i * s.delta)));
                    seen[s.a] = true;
                }
                if (!seen[s.b]) {
                    for (size_t j = 0; j < groups; ++j)
                        for (uint32_t k = 0; k < s.delta; ++k)
                            v[s.b].push_back(static_cast<int8_t>(zero_row(off + 9 * (j * na * s.delta + k))));
                    seen[s.b] = true;
                }
                break;
            }
        }
        off += segment_length(s);
    }
    for (size_t c = 0; c < comps_.size(); ++c)
        if (!seen[c]) return std::nullopt;
    TernaryVec re = encode(v);
    for (size_t i = 0; i < length_; ++i)
        if (re[i] != w[i]) return std::nullopt;
    return v;
}

bool PermutationSpec::valid(std::span<const int32_t> w) const { return decode(w).has_value(); }

bool PermutationSpec::valid(std::span<const int8_t> w) const {
    std::vector<int32_t> tmp(w.begin(), w.end());
    return valid(std::span<const int32_t>(tmp));
}

PermutationSpec::Values PermutationSpec::sample_seed(Rng& rng) const {
    Values eta(comps_.size());
    for (size_t c = 0; c < comps_.size(); ++c) {
        eta[c].resize(comps_[c].len);
        for (auto& x : eta[c]) x = static_cast<int8_t>(comps_[c].binary ? rng.bit() : rng.trit());
    }
    return eta;
}

PermutationSpec::Values PermutationSpec::random_values(Rng& rng) const { return sample_seed(rng); }

PermutationSpec::Values PermutationSpec::inverse_seed(const Values& eta) const {
    check_values(eta);
    Values inv = eta;
    for (size_t c = 0; c < comps_.size(); ++c)
        if (!comps_[c].binary)
            for (auto& x : inv[c]) x = static_cast<int8_t>(-x);
    return inv;
}

PermutationSpec::Values PermutationSpec::act(const Values& x, const Values& eta) const {
    check_values(x);
    check_values(eta);
    Values out = x;
    for (size_t c = 0; c < comps_.size(); ++c)
        for (size_t i = 0; i < comps_[c].len; ++i)
            out[c][i] = comps_[c].binary ? static_cast<int8_t>(x[c][i] ^ eta[c][i]) : mod3c(x[c][i] + eta[c][i]);
    return out;
}

namespace {

// Source-index tables for every (b, e) pair, filled from the scalar helpers.
struct SrcTables {
    std::array<std::array<uint8_t, 3>, 3> enc{};
    std::array<std::array<std::array<uint8_t, 6>, 3>, 2> ext{};
    std::array<std::array<std::array<uint8_t, 9>, 3>, 3> mult{};

    SrcTables() {
        for (int e = -1; e <= 1; ++e) {
            for (size_t p = 0; p < 3; ++p) enc[e + 1][p] = static_cast<uint8_t>(enc3_src(e, p));
            for (int b = 0; b <= 1; ++b)
                for (size_t p = 0; p < 6; ++p) ext[b][e + 1][p] = static_cast<uint8_t>(ext_src(b, e, p));
            for (int b = -1; b <= 1; ++b)
                for (size_t p = 0; p < 9; ++p) mult[b + 1][e + 1][p] = static_cast<uint8_t>(mult3_src(b, e, p));
        }
    }
};

const SrcTables& src_tables() {
    static const SrcTables t;
    return t;
}

}  // namespace

std::vector<uint32_t> PermutationSpec::gamma(const Values& eta) const {
    check_values(eta);
    const SrcTables& T = src_tables();
    std::vector<uint32_t> src(length_);
    uint32_t* out = src.data();
    size_t off = 0;
    for (const auto& s : segs_) {
        switch (s.kind) {
            case Kind::Enc: {
                const auto& e = eta[s.a];
                for (size_t i = 0; i < e.size(); ++i) {
                    const auto& t = T.enc[e[i] + 1];
                    const uint32_t base = static_cast<uint32_t>(off + 3 * i);
                    for (size_t p = 0; p < 3; ++p) out[base + p] = base + t[p];
                }
                break;
            }
            case Kind::Mix: {
                const auto& b = eta[s.a];
                const auto& e = eta[s.b];
                const size_t dz = e.size();
                for (size_t i = 0; i < dz; ++i) {
                    const auto& t = T.enc[e[i] + 1];
                    const uint32_t base = static_cast<uint32_t>(off + 3 * i);
                    for (size_t p = 0; p < 3; ++p) out[base + p] = base + t[p];
                }
                for (size_t j = 0; j < b.size(); ++j)
                    for (size_t i = 0; i < dz; ++i) {
                        const auto& t = T.ext[b[j]][e[i] + 1];
                        const uint32_t base = static_cast<uint32_t>(off + 3 * dz + 6 * (j * dz + i));
                        for (size_t p = 0; p < 6; ++p) out[base + p] = base + t[p];
                    }
                break;
            }
            case Kind::Mult: {
                const auto& b = eta[s.a];
                const auto& e = eta[s.b];
                const size_t groups = e.size() / s.delta;
                size_t blk = 0;
                for (size_t j = 0; j < groups; ++j)
                    for (size_t i = 0; i < b.size(); ++i)
                        for (uint32_t k = 0; k < s.delta; ++k, ++blk) {
                            const auto& t = T.mult[b[i] + 1][e[j * s.delta + k] + 1];
                            const uint32_t base = static_cast<uint32_t>(off + 9 * blk);
                            for (size_t p = 0; p < 9; ++p) out[base + p] = base + t[p];
                        }
                break;
            }
        }
        off += segment_length(s);
    }
    return src;
}

std::vector<uint8_t> PermutationSpec::pack_seed(const Values& eta) const {
    check_values(eta);
    TernaryVec flat;
    flat.reserve(seed_length());
    for (const auto& c : eta) flat.insert(flat.end(), c.begin(), c.end());
    return pack_ternary(flat);
}

PermutationSpec::Values PermutationSpec::unpack_seed(std::span<const uint8_t> bytes) const {
    TernaryVec flat = unpack_ternary(bytes, seed_length());
    Values eta(comps_.size());
    size_t pos = 0;
    for (size_t c = 0; c < comps_.size(); ++c) {
        eta[c].assign(flat.begin() + pos, flat.begin() + pos + comps_[c].len);
        pos += comps_[c].len;
    }
    try {
        check_values(eta);
    } catch (const DomainError&) {
        throw FormatError("permutation seed entry outside its domain");
    }
    return eta;
}

}  // namespace ats
