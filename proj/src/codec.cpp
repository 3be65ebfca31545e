#include "ats/codec.hpp"

#include <algorithm>

#include "ats/errors.hpp"

namespace ats {

namespace {

constexpr uint32_t kMaxDim = 1u << 16;

void put_vec(ByteWriter& w, const Params& p, const RingVec& v) { put_ring_vec(w, v, p.coeff_bytes()); }
void put_el(ByteWriter& w, const Params& p, const RingElem& a) { put_ring(w, a, p.coeff_bytes()); }

void need_norm(const RingElem& a, int64_t bound, const char* what) {
    if (inf_norm(a) > bound) throw FormatError(what);
}
void need_norm(const RingVec& v, int64_t bound, const char* what) {
    if (inf_norm(v) > bound) throw FormatError(what);
}

void put_koe_pk(ByteWriter& w, const Params& p, const KoePublicKey& k) {
    put_vec(w, p, k.a);
    put_vec(w, p, k.b);
}

KoePublicKey get_koe_pk(ByteReader& r, const Params& p) {
    KoePublicKey k;
    k.a = get_ring_vec(r, p, p.ell);
    k.b = get_ring_vec(r, p, p.ell);
    return k;
}

void put_vk(ByteWriter& w, const Params& p, const DmVerifKey& vk) {
    put_vec(w, p, vk.A);
    put_vec(w, p, vk.F0);
    for (const auto& a : vk.A_tags) put_vec(w, p, a);
    put_vec(w, p, vk.F);
    put_vec(w, p, vk.F1);
    put_el(w, p, vk.u);
}

DmVerifKey get_vk(ByteReader& r, const Params& p) {
    DmVerifKey vk;
    vk.A = get_ring_vec(r, p, p.m_bar);
    vk.F0 = get_ring_vec(r, p, p.m_bar);
    for (uint32_t i = 0; i <= p.d; ++i) vk.A_tags.push_back(get_ring_vec(r, p, p.k));
    vk.F = get_ring_vec(r, p, p.ell);
    vk.F1 = get_ring_vec(r, p, p.m_bar_s);
    vk.u = get_ring(r, p);
    return vk;
}

void put_randomizer(ByteWriter& w, const Params& p, const KoeRandomizer& k) {
    put_el(w, p, k.g);
    put_vec(w, p, k.e1);
    put_vec(w, p, k.e2);
}

KoeRandomizer get_randomizer(ByteReader& r, const Params& p) {
    KoeRandomizer k;
    k.g = get_ring(r, p);
    k.e1 = get_ring_vec(r, p, p.ell);
    k.e2 = get_ring_vec(r, p, p.ell);
    need_norm(k.g, p.B, "escrow randomness exceeds bound B");
    need_norm(k.e1, p.B, "escrow randomness exceeds bound B");
    need_norm(k.e2, p.B, "escrow randomness exceeds bound B");
    return k;
}

void put_bits(ByteWriter& w, const std::vector<uint8_t>& bits) {
    std::vector<uint8_t> packed((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) packed[i / 8] |= static_cast<uint8_t>(1u << (i % 8));
    w.put_bytes(packed);
}

std::vector<uint8_t> get_bits(ByteReader& r, size_t len) {
    auto packed = r.get_bytes((len + 7) / 8);
    std::vector<uint8_t> bits(len);
    for (size_t i = 0; i < len; ++i) bits[i] = (packed[i / 8] >> (i % 8)) & 1;
    for (size_t i = len; i < packed.size() * 8; ++i)
        if ((packed[i / 8] >> (i % 8)) & 1) throw FormatError("nonzero tag padding");
    return bits;
}

ByteReader open_file(std::span<const uint8_t> bytes, std::string_view mg, const Params& p) {
    ByteReader r(bytes);
    read_header(r, mg, p);
    return r;
}

ByteReader open_key(std::span<const uint8_t> bytes, const Params& p, KeyKind kind) {
    ByteReader r = open_file(bytes, magic::kKey, p);
    if (r.get_u8() != static_cast<uint8_t>(kind)) throw FormatError("key file holds a different kind of key");
    return r;
}

ByteWriter key_writer(const Params& p, KeyKind kind) {
    ByteWriter w;
    write_header(w, magic::kKey, p);
    w.put_u8(static_cast<uint8_t>(kind));
    return w;
}

}  // namespace

void write_header(ByteWriter& w, std::string_view mg, const Params& p) {
    w.put_bytes(mg);
    w.put_u16(kFormatVersion);
    w.put_bytes(p.digest());
}

void read_header(ByteReader& r, std::string_view mg, const Params& p) {
    r.expect(mg);
    if (r.get_u16() != kFormatVersion) throw FormatError("unsupported format version");
    auto d = r.get_bytes(32);
    Digest want = p.digest();
    if (!std::equal(d.begin(), d.end(), want.begin())) throw FormatError("file was made under different parameters");
}

std::string_view peek_magic(std::span<const uint8_t> bytes) {
    if (bytes.size() < 4) return {};
    return {reinterpret_cast<const char*>(bytes.data()), 4};
}

void put_params(ByteWriter& w, const Params& p) {
    w.put_u32(p.n);
    w.put_u32(p.k);
    w.put_u32(p.m);
    w.put_i64(p.B);
    w.put_i64(p.beta);
    w.put_u32(p.kappa);
    w.put_u32(static_cast<uint32_t>(p.c.size()));
    for (uint32_t c : p.c) w.put_u32(c);
}

Params get_params(ByteReader& r) {
    uint32_t n = r.get_u32(), k = r.get_u32(), m = r.get_u32();
    int64_t B = r.get_i64(), beta = r.get_i64();
    uint32_t kappa = r.get_u32();
    uint32_t nc = r.get_u32();
    if (n > kMaxDim || m > kMaxDim || nc > 64 || kappa > kMaxDim) throw FormatError("parameter field out of range");
    std::vector<uint32_t> c(nc);
    for (auto& x : c) x = r.get_u32();
    Params p = Params::make_with_tags(n, k, B, beta, kappa, m, std::move(c));
    p.validate();
    return p;
}

std::vector<uint8_t> serialize_pp(const PublicParams& pp) {
    const Params& p = pp.params;
    ByteWriter w;
    write_header(w, magic::kPublicParams, p);
    put_params(w, p);
    put_vec(w, p, pp.B);
    put_koe_pk(w, p, pp.base1);
    put_koe_pk(w, p, pp.base2);
    return w.take();
}

namespace {

PublicParams get_pp_body(ByteReader& r) {
    // The header digest is checked after the parameters are known.
    r.expect(magic::kPublicParams);
    if (r.get_u16() != kFormatVersion) throw FormatError("unsupported format version");
    auto d = r.get_bytes(32);
    PublicParams pp;
    pp.params = get_params(r);
    Digest want = pp.params.digest();
    if (!std::equal(d.begin(), d.end(), want.begin())) throw FormatError("parameter digest mismatch");
    pp.B = get_ring_vec(r, pp.params, pp.params.m);
    pp.base1 = get_koe_pk(r, pp.params);
    pp.base2 = get_koe_pk(r, pp.params);
    return pp;
}

}  // namespace

PublicParams parse_pp(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    PublicParams pp = get_pp_body(r);
    r.expect_end();
    return pp;
}

std::vector<uint8_t> serialize_gpk(const GroupPublicKey& gpk) {
    const Params& p = gpk.params();
    ByteWriter w;
    write_header(w, magic::kGroupKey, p);
    w.put_blob(serialize_pp(gpk.pp));
    put_vk(w, p, gpk.vk);
    put_koe_pk(w, p, gpk.gm1);
    put_koe_pk(w, p, gpk.gm2);
    return w.take();
}

GroupPublicKey parse_gpk(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect(magic::kGroupKey);
    if (r.get_u16() != kFormatVersion) throw FormatError("unsupported format version");
    auto d = r.get_bytes(32);
    GroupPublicKey gpk;
    gpk.pp = parse_pp(r.get_blob());
    const Params& p = gpk.params();
    Digest want = p.digest();
    if (!std::equal(d.begin(), d.end(), want.begin())) throw FormatError("parameter digest mismatch");
    gpk.vk = get_vk(r, p);
    gpk.gm1 = get_koe_pk(r, p);
    gpk.gm2 = get_koe_pk(r, p);
    r.expect_end();
    return gpk;
}

std::vector<uint8_t> serialize_vk(const Params& p, const DmVerifKey& vk) {
    ByteWriter w;
    write_header(w, magic::kVerifKey, p);
    put_vk(w, p, vk);
    return w.take();
}

DmVerifKey parse_vk(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_file(bytes, magic::kVerifKey, p);
    DmVerifKey vk = get_vk(r, p);
    r.expect_end();
    return vk;
}

std::vector<uint8_t> serialize_cert(const Params& p, const Certificate& c) {
    ByteWriter w;
    write_header(w, magic::kCert, p);
    put_el(w, p, c.p);
    put_koe_pk(w, p, c.epk1);
    put_koe_pk(w, p, c.epk2);
    if (c.sig.t.bits.size() != p.cd()) throw ShapeError("tag must have c_d bits");
    put_bits(w, c.sig.t.bits);
    put_vec(w, p, c.sig.r);
    put_vec(w, p, c.sig.v);
    return w.take();
}

Certificate parse_cert(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_file(bytes, magic::kCert, p);
    Certificate c;
    c.p = get_ring(r, p);
    c.epk1 = get_koe_pk(r, p);
    c.epk2 = get_koe_pk(r, p);
    c.sig.t.bits = get_bits(r, p.cd());
    c.sig.r = get_ring_vec(r, p, p.m_bar);
    c.sig.v = get_ring_vec(r, p, p.m_bar + p.k);
    r.expect_end();
    return c;
}

std::vector<uint8_t> serialize_signature(const Params& p, const GroupSignature& s) {
    ByteWriter w;
    write_header(w, magic::kSignature, p);
    w.put_bytes(signature_bytes(p, s));
    return w.take();
}

GroupSignature parse_signature(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_file(bytes, magic::kSignature, p);
    return parse_signature_bytes(p, r.get_bytes(r.remaining()));
}

std::vector<uint8_t> serialize_open(const Params& p, const OpenResult& o) {
    ByteWriter w;
    write_header(w, magic::kOpen, p);
    if (o.bottom() || !o.proof) {
        w.put_u8(0);
        return w.take();
    }
    w.put_u8(1);
    put_el(w, p, *o.p);
    w.put_bytes(serialize_proof(proof_shape(p, relation_spec(p, kRelOpen)), *o.proof));
    return w.take();
}

OpenResult parse_open(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_file(bytes, magic::kOpen, p);
    OpenResult o;
    uint8_t flag = r.get_u8();
    if (flag == 0) {
        r.expect_end();
        return o;
    }
    if (flag != 1) throw FormatError("bad open-result flag");
    o.p = get_ring(r, p);
    o.proof = parse_proof(proof_shape(p, relation_spec(p, kRelOpen)), r.get_bytes(r.remaining()));
    if (o.proof->relid != kRelOpen) throw FormatError("open proof has the wrong relation id");
    return o;
}

KeyKind peek_key_kind(std::span<const uint8_t> bytes) {
    if (bytes.size() <= kFileHeaderBytes || peek_magic(bytes) != magic::kKey) throw FormatError("not a key file");
    uint8_t k = bytes[kFileHeaderBytes];
    if (k < 1 || k > 5) throw FormatError("unknown key kind");
    return static_cast<KeyKind>(k);
}

std::vector<uint8_t> serialize_upk(const Params& p, const RingElem& upk) {
    ByteWriter w = key_writer(p, KeyKind::Upk);
    put_el(w, p, upk);
    return w.take();
}

RingElem parse_upk(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_key(bytes, p, KeyKind::Upk);
    RingElem a = get_ring(r, p);
    r.expect_end();
    return a;
}

std::vector<uint8_t> serialize_usk(const Params& p, const RingVec& usk) {
    ByteWriter w = key_writer(p, KeyKind::Usk);
    put_vec(w, p, usk);
    return w.take();
}

RingVec parse_usk(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_key(bytes, p, KeyKind::Usk);
    RingVec x = get_ring_vec(r, p, p.m);
    r.expect_end();
    need_norm(x, 1, "usk is not ternary");
    return x;
}

std::vector<uint8_t> serialize_ik(const Params& p, const IssueKey& ik) {
    ByteWriter w = key_writer(p, KeyKind::Ik);
    put_vec(w, p, ik.R.R);
    return w.take();
}

IssueKey parse_ik(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_key(bytes, p, KeyKind::Ik);
    IssueKey ik;
    ik.R.R = get_ring_vec(r, p, size_t{p.m} * p.k);
    r.expect_end();
    need_norm(ik.R.R, 1, "issue key is not ternary");
    return ik;
}

std::vector<uint8_t> serialize_ok(const Params& p, const OpeningKey& ok) {
    ByteWriter w = key_writer(p, KeyKind::Ok);
    put_el(w, p, ok.s1);
    put_vec(w, p, ok.e1);
    return w.take();
}

OpeningKey parse_ok(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_key(bytes, p, KeyKind::Ok);
    OpeningKey ok;
    ok.s1 = get_ring(r, p);
    ok.e1 = get_ring_vec(r, p, p.ell);
    r.expect_end();
    need_norm(ok.s1, p.B, "opening key exceeds bound B");
    need_norm(ok.e1, p.B, "opening key exceeds bound B");
    return ok;
}

void put_escrow(ByteWriter& w, const Params& p, const EscrowWitness& e) {
    put_randomizer(w, p, e.w1);
    put_randomizer(w, p, e.w2);
}

EscrowWitness get_escrow(ByteReader& r, const Params& p) {
    EscrowWitness e;
    e.w1 = get_randomizer(r, p);
    e.w2 = get_randomizer(r, p);
    return e;
}

std::vector<uint8_t> serialize_escrow(const Params& p, const EscrowWitness& e) {
    ByteWriter w = key_writer(p, KeyKind::Escrow);
    put_escrow(w, p, e);
    return w.take();
}

EscrowWitness parse_escrow(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r = open_key(bytes, p, KeyKind::Escrow);
    EscrowWitness e = get_escrow(r, p);
    r.expect_end();
    return e;
}

}  // namespace ats
