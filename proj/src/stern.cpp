#include "ats/stern.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "ats/errors.hpp"
#include "ats/hash.hpp"

namespace ats {

void SparseMatQ::add(size_t row, size_t col, int64_t val) {
    if (row >= rows || col >= cols) throw ShapeError("sparse matrix index out of range");
    int32_t x = reduce(val, q);
    if (x == 0) return;
    r.push_back(static_cast<uint32_t>(row));
    c.push_back(static_cast<uint32_t>(col));
    v.push_back(x);
}

IntVecQ SparseMatQ::mul(std::span<const int32_t> x) const {
    if (x.size() != cols) throw ShapeError("sparse matvec length mismatch");
    std::vector<int64_t> acc(rows, 0);
    // Products stay below 2^40 when q < 2^21, so a plain sum of < 2^22 terms fits.
    const bool small = q < (int64_t{1} << 21) && v.size() < (size_t{1} << 22);
    for (size_t i = 0; i < v.size(); ++i) {
        int64_t p = static_cast<int64_t>(v[i]) * x[c[i]];
        if (small) acc[r[i]] += p;
        else acc[r[i]] = (acc[r[i]] + p) % q;
    }
    IntVecQ out{q, std::vector<int32_t>(rows)};
    for (size_t i = 0; i < rows; ++i) out.v[i] = reduce(acc[i], q);
    return out;
}

IntMatQ SparseMatQ::to_dense() const {
    IntMatQ d(rows, cols, q);
    for (size_t i = 0; i < v.size(); ++i) d.at(r[i], c[i]) = reduce(int64_t{d.at(r[i], c[i])} + v[i], q);
    return d;
}

namespace {

int32_t xof_zq(Xof& x, int64_t q) {
    uint64_t mask = (uint64_t{1} << ceil_log2(static_cast<uint64_t>(q))) - 1;
    for (;;) {
        uint8_t b[4];
        x.read(b, 4);
        uint64_t v = (uint64_t{b[0]} | uint64_t{b[1]} << 8 | uint64_t{b[2]} << 16 | uint64_t{b[3]} << 24) & mask;
        if (v < static_cast<uint64_t>(q)) return reduce(static_cast<int64_t>(v), q);
    }
}

inline uint64_t canon(int32_t x, int64_t q) { return static_cast<uint64_t>(x < 0 ? x + q : x); }

}  // namespace

ComKey::ComKey(const Params& p)
    : q_(p.q), width_(p.coeff_bytes()), rows_(2 * size_t{p.n}) {
    rho_bits_ = rows_ * ceil_log2(static_cast<uint64_t>(q_)) + 2 * kLambda;
    ByteWriter seed;
    seed.put_bytes("ATS-COM-KEY");
    Digest d = p.digest();
    seed.put_bytes(d);
    Xof x(seed.data());
    b1_.resize(rows_ * rho_bits_);
    b2_.resize(rows_ * kHashBits);
    for (auto& e : b1_) e = xof_zq(x, q_);
    for (auto& e : b2_) e = xof_zq(x, q_);
}

std::vector<uint8_t> ComKey::commit_hash(const Digest& h, std::span<const uint8_t> rho) const {
    if (rho.size() != rho_bytes()) throw ShapeError("commitment randomness has wrong length");
    std::vector<int64_t> acc(rows_, 0);
    for (size_t j = 0; j < rho_bits_; ++j)
        if ((rho[j / 8] >> (j % 8)) & 1)
            for (size_t i = 0; i < rows_; ++i) acc[i] += b1_[i * rho_bits_ + j];
    for (size_t j = 0; j < kHashBits; ++j)
        if ((h[j / 8] >> (j % 8)) & 1)
            for (size_t i = 0; i < rows_; ++i) acc[i] += b2_[i * kHashBits + j];
    ByteWriter w;
    for (int64_t a : acc) w.put_le(canon(reduce(a, q_), q_), width_);
    return w.take();
}

std::vector<uint8_t> ComKey::commit(std::span<const uint8_t> payload, std::span<const uint8_t> rho) const {
    return commit_hash(sha256(payload), rho);
}

struct PayloadHasher::Impl {
    Sha256 h;
};

PayloadHasher::PayloadHasher(int64_t q, size_t width)
    : impl_(std::make_unique<Impl>()), q_(q), width_(width) {
    buf_.reserve(1 << 16);
}

PayloadHasher::~PayloadHasher() = default;

void PayloadHasher::flush() {
    impl_->h.update(buf_);
    buf_.clear();
}

void PayloadHasher::bytes(std::span<const uint8_t> b) {
    flush();
    impl_->h.update(b);
}

void PayloadHasher::zq(std::span<const int32_t> x) {
    zq_sum(x, {});
}

namespace {

// Canonical representative in [0, q) of v, given |v| <= q + (q-1)/2.
inline uint32_t canon_near(int32_t v, int32_t q, int32_t h) {
    v -= v > h ? q : 0;
    v += v < -h ? q : 0;
    return static_cast<uint32_t>(v + (v < 0 ? q : 0));
}

}  // namespace

// b empty means all zeros.
void PayloadHasher::zq_sum(std::span<const int32_t> a, std::span<const int8_t> b) {
    if (!b.empty() && a.size() != b.size()) throw ShapeError("payload sum length mismatch");
    constexpr size_t kChunk = 8192;
    const int32_t h = static_cast<int32_t>((q_ - 1) / 2);
    const int32_t q = static_cast<int32_t>(q_);
    flush();
    if (width_ == 2 && std::endian::native == std::endian::little) {
        std::array<uint16_t, kChunk> tmp;
        for (size_t k0 = 0; k0 < a.size(); k0 += kChunk) {
            const size_t cnt = std::min(kChunk, a.size() - k0);
            const int32_t* pa = a.data() + k0;
            if (b.empty()) {
                for (size_t k = 0; k < cnt; ++k) tmp[k] = static_cast<uint16_t>(canon_near(pa[k], q, h));
            } else {
                const int8_t* pb = b.data() + k0;
                for (size_t k = 0; k < cnt; ++k) tmp[k] = static_cast<uint16_t>(canon_near(pa[k] + pb[k], q, h));
            }
            impl_->h.update(reinterpret_cast<const uint8_t*>(tmp.data()), cnt * 2);
        }
        return;
    }
    buf_.resize(kChunk * width_);
    for (size_t k0 = 0; k0 < a.size(); k0 += kChunk) {
        const size_t cnt = std::min(kChunk, a.size() - k0);
        uint8_t* out = buf_.data();
        for (size_t k = 0; k < cnt; ++k) {
            uint32_t c = canon_near(a[k0 + k] + (b.empty() ? 0 : b[k0 + k]), q, h);
            for (size_t i = 0; i < width_; ++i) *out++ = static_cast<uint8_t>(c >> (8 * i));
        }
        impl_->h.update(buf_.data(), cnt * width_);
    }
    buf_.clear();
}

Digest PayloadHasher::final() {
    flush();
    return impl_->h.final();
}

bool RelationInstance::satisfied(std::span<const int32_t> w) const {
    if (w.size() != L() || !spec.valid(w)) return false;
    return M.mul(w) == u;
}

bool RelationInstance::satisfied(std::span<const int8_t> w) const {
    std::vector<int32_t> tmp(w.begin(), w.end());
    return satisfied(std::span<const int32_t>(tmp));
}

void RelationInstance::finalize_statement(std::span<const uint8_t> public_input) {
    Sha256 h;
    h.update(std::string_view("ATS-STATEMENT"));
    h.update(&id, 1);
    Digest pd = params.digest();
    h.update(pd);
    ByteWriter w;
    w.put_u64(M.rows);
    w.put_u64(M.cols);
    w.put_u64(M.nnz());
    for (int32_t x : u.v) w.put_le(canon(x, u.q), params.coeff_bytes());
    h.update(w.data());
    h.update(public_input);
    statement = h.final();
}

namespace {

std::vector<uint8_t> random_rho(const ComKey& ck, Rng& rng) {
    std::vector<uint8_t> rho(ck.rho_bytes());
    rng.fill(rho.data(), rho.size());
    size_t extra = rho.size() * 8 - ck.rho_bits();
    if (extra) rho.back() &= static_cast<uint8_t>(0xFF >> extra);
    return rho;
}

bool rho_ok(const ComKey& ck, const std::vector<uint8_t>& rho) {
    if (rho.size() != ck.rho_bytes()) return false;
    size_t extra = rho.size() * 8 - ck.rho_bits();
    return !extra || (rho.back() >> (8 - extra)) == 0;
}

// C1 payload: packed eta || y.
std::vector<uint8_t> c1_commit(const RelationInstance& rel, const PermutationSpec::Values& eta,
                               const IntVecQ& y, const std::vector<uint8_t>& rho) {
    PayloadHasher h(rel.params.q, rel.params.coeff_bytes());
    h.bytes(rel.spec.pack_seed(eta));
    h.zq(y.v);
    return rel.com->commit_hash(h.final(), rho);
}

std::vector<uint8_t> vec_commit(const RelationInstance& rel, std::span<const int32_t> x,
                                const std::vector<uint8_t>& rho) {
    PayloadHasher h(rel.params.q, rel.params.coeff_bytes());
    h.zq(x);
    return rel.com->commit_hash(h.final(), rho);
}

std::vector<uint8_t> sum_commit(const RelationInstance& rel, std::span<const int32_t> a,
                                std::span<const int8_t> b, const std::vector<uint8_t>& rho) {
    PayloadHasher h(rel.params.q, rel.params.coeff_bytes());
    h.zq_sum(a, b);
    return rel.com->commit_hash(h.final(), rho);
}

std::vector<int32_t> add_zq(std::span<const int8_t> a, std::span<const int32_t> b, int64_t q) {
    std::vector<int32_t> out(a.size());
    const int32_t h = static_cast<int32_t>((q - 1) / 2), qq = static_cast<int32_t>(q);
    for (size_t i = 0; i < a.size(); ++i) {
        int32_t v = a[i] + b[i];
        out[i] = v > h ? v - qq : (v < -h ? v + qq : v);
    }
    return out;
}

std::pair<SternCommitment, SternProverState> commit_impl(const RelationInstance& rel,
                                                         std::shared_ptr<const Witness> w,
                                                         bool shift_c1, Rng& rng) {
    const int64_t q = rel.params.q;
    SternProverState st;
    st.w = std::move(w);
    st.eta = rel.spec.sample_seed(rng);
    st.src = rel.spec.gamma(st.eta);
    st.r_w.resize(rel.L());
    rng.uniform_centered(st.r_w, q);
    st.rho1 = random_rho(*rel.com, rng);
    st.rho2 = random_rho(*rel.com, rng);
    st.rho3 = random_rho(*rel.com, rng);

    IntVecQ y;
    if (shift_c1) {
        y = rel.M.mul(add_zq(*st.w, st.r_w, q));
        for (size_t i = 0; i < y.v.size(); ++i) y.v[i] = reduce(int64_t{y.v[i]} - rel.u.v[i], q);
    } else {
        y = rel.M.mul(st.r_w);
    }
    auto t_r = apply_perm<int32_t>(st.src, st.r_w);
    auto t_w = apply_perm<int8_t>(st.src, *st.w);
    SternCommitment cmt;
    cmt.c1 = c1_commit(rel, st.eta, y, st.rho1);
    cmt.c2 = vec_commit(rel, t_r, st.rho2);
    cmt.c3 = sum_commit(rel, t_r, t_w, st.rho3);
    return {std::move(cmt), std::move(st)};
}

bool canonical_zq(std::span<const int32_t> x, int64_t q) {
    const int64_t h = (q - 1) / 2;
    return std::all_of(x.begin(), x.end(), [h](int32_t e) { return e >= -h && e <= h; });
}

bool eta_ok(const RelationInstance& rel, const PermutationSpec::Values& eta) {
    const auto& comps = rel.spec.components();
    if (eta.size() != comps.size()) return false;
    for (size_t c = 0; c < comps.size(); ++c) {
        if (eta[c].size() != comps[c].len) return false;
        for (int8_t x : eta[c])
            if (comps[c].binary ? (x != 0 && x != 1) : (x < -1 || x > 1)) return false;
    }
    return true;
}

}  // namespace

std::pair<SternCommitment, SternProverState> stern_commit(const RelationInstance& rel, const Witness& w,
                                                          Rng& rng) {
    if (!rel.satisfied(std::span<const int8_t>(w)))
        throw WitnessError("refusing to prove: witness not in VALID or M*w != u");
    return commit_impl(rel, std::make_shared<const Witness>(w), false, rng);
}

SternResponse stern_respond(const RelationInstance& rel, const SternProverState& st, uint8_t ch) {
    SternResponse r;
    r.ch = ch;
    switch (ch) {
        case 1:
            r.t_w = apply_perm<int8_t>(st.src, *st.w);
            r.vec = apply_perm<int32_t>(st.src, st.r_w);
            r.rho_a = st.rho2;
            r.rho_b = st.rho3;
            break;
        case 2:
            r.eta = st.eta;
            r.vec = add_zq(*st.w, st.r_w, rel.params.q);
            r.rho_a = st.rho1;
            r.rho_b = st.rho3;
            break;
        case 3:
            r.eta = st.eta;
            r.vec = st.r_w;
            r.rho_a = st.rho1;
            r.rho_b = st.rho2;
            break;
        default:
            throw DomainError("challenge must be 1, 2 or 3");
    }
    return r;
}

bool stern_verify(const RelationInstance& rel, const SternCommitment& cmt, const SternResponse& rsp) {
    try {
        const int64_t q = rel.params.q;
        const size_t cb = rel.com->digest_bytes();
        if (cmt.c1.size() != cb || cmt.c2.size() != cb || cmt.c3.size() != cb) return false;
        if (!rho_ok(*rel.com, rsp.rho_a) || !rho_ok(*rel.com, rsp.rho_b)) return false;
        if (rsp.vec.size() != rel.L() || !canonical_zq(rsp.vec, q)) return false;
        switch (rsp.ch) {
            case 1: {
                if (rsp.t_w.size() != rel.L() || !rel.spec.valid(std::span<const int8_t>(rsp.t_w))) return false;
                if (vec_commit(rel, rsp.vec, rsp.rho_a) != cmt.c2) return false;
                return sum_commit(rel, rsp.vec, rsp.t_w, rsp.rho_b) == cmt.c3;
            }
            case 2: {
                if (!eta_ok(rel, rsp.eta)) return false;
                IntVecQ y = rel.M.mul(rsp.vec);
                for (size_t i = 0; i < y.v.size(); ++i) y.v[i] = reduce(int64_t{y.v[i]} - rel.u.v[i], q);
                if (c1_commit(rel, rsp.eta, y, rsp.rho_a) != cmt.c1) return false;
                auto src = rel.spec.gamma(rsp.eta);
                return vec_commit(rel, apply_perm<int32_t>(src, rsp.vec), rsp.rho_b) == cmt.c3;
            }
            case 3: {
                if (!eta_ok(rel, rsp.eta)) return false;
                if (c1_commit(rel, rsp.eta, rel.M.mul(rsp.vec), rsp.rho_a) != cmt.c1) return false;
                auto src = rel.spec.gamma(rsp.eta);
                return vec_commit(rel, apply_perm<int32_t>(src, rsp.vec), rsp.rho_b) == cmt.c2;
            }
            default:
                return false;
        }
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<int32_t> extract_witness(const RelationInstance& rel, const SternCommitment& cmt,
                                     const SternResponse& r1, const SternResponse& r2,
                                     const SternResponse& r3) {
    if (r1.ch != 1 || r2.ch != 2 || r3.ch != 3) throw ExtractionError("responses must answer challenges 1, 2, 3");
    if (!stern_verify(rel, cmt, r1) || !stern_verify(rel, cmt, r2) || !stern_verify(rel, cmt, r3))
        throw ExtractionError("a transcript does not verify against the shared commitment");
    if (r2.eta != r3.eta) throw ExtractionError("commitment binding broken: eta2 != eta3");
    const int64_t q = rel.params.q;
    std::vector<int32_t> w(rel.L());
    for (size_t i = 0; i < w.size(); ++i) w[i] = reduce(int64_t{r2.vec[i]} - r3.vec[i], q);
    if (!rel.satisfied(w)) throw ExtractionError("extracted vector fails VALID or M*w = u");
    return w;
}

std::pair<SternCommitment, SternProverState> simulate_commit(const RelationInstance& rel,
                                                             SimStrategy s, Rng& rng) {
    auto w = std::make_shared<const Witness>(rel.spec.random_valid(rng));
    return commit_impl(rel, std::move(w), s == SimStrategy::B, rng);
}

std::pair<SternCommitment, SternResponse> simulate_round(const RelationInstance& rel, uint8_t target_ch,
                                                         Rng& rng) {
    SimStrategy s;
    switch (target_ch) {
        case 1: s = rng.bit() ? SimStrategy::A : SimStrategy::B; break;
        case 2: s = SimStrategy::B; break;
        case 3: s = SimStrategy::A; break;
        default: throw DomainError("challenge must be 1, 2 or 3");
    }
    auto [cmt, st] = simulate_commit(rel, s, rng);
    return {std::move(cmt), stern_respond(rel, st, target_ch)};
}

std::vector<uint8_t> fs_challenges(const RelationInstance& rel, std::span<const uint8_t> message,
                                   std::span<const uint8_t> context,
                                   const std::vector<SternCommitment>& cmts) {
    ByteWriter w;
    w.put_bytes("ATS-FS");
    w.put_u8(rel.id);
    w.put_bytes(rel.statement);
    w.put_u64(message.size());
    w.put_bytes(message);
    w.put_u64(context.size());
    w.put_bytes(context);
    w.put_u32(static_cast<uint32_t>(cmts.size()));
    for (const auto& c : cmts) {
        w.put_bytes(c.c1);
        w.put_bytes(c.c2);
        w.put_bytes(c.c3);
    }
    Xof x(w.data());
    std::vector<uint8_t> chs;
    chs.reserve(cmts.size());
    while (chs.size() < cmts.size()) {
        uint8_t b = x.next_byte();
        if (b >= 252) continue;
        chs.push_back(static_cast<uint8_t>(b % 3 + 1));
    }
    return chs;
}

NizkProof fs_prove(const RelationInstance& rel, const Witness& w, std::span<const uint8_t> message,
                   std::span<const uint8_t> context, uint32_t kappa, Rng& rng) {
    if (kappa < 1) throw ParamError("kappa >= 1 violated");
    if (!rel.satisfied(std::span<const int8_t>(w)))
        throw WitnessError("refusing to prove: witness not in VALID or M*w != u");
    auto shared = std::make_shared<const Witness>(w);
    NizkProof proof;
    proof.relid = rel.id;
    std::vector<SternProverState> states;
    for (uint32_t i = 0; i < kappa; ++i) {
        auto [cmt, st] = commit_impl(rel, shared, false, rng);
        proof.cmts.push_back(std::move(cmt));
        states.push_back(std::move(st));
    }
    proof.chs = fs_challenges(rel, message, context, proof.cmts);
    for (uint32_t i = 0; i < kappa; ++i) {
        proof.rsps.push_back(stern_respond(rel, states[i], proof.chs[i]));
        states[i] = SternProverState{};
    }
    return proof;
}

bool fs_verify(const RelationInstance& rel, std::span<const uint8_t> message,
               std::span<const uint8_t> context, const NizkProof& proof) {
    if (proof.relid != rel.id) return false;
    const size_t k = proof.cmts.size();
    if (k != rel.params.kappa || proof.chs.size() != k || proof.rsps.size() != k) return false;
    if (fs_challenges(rel, message, context, proof.cmts) != proof.chs) return false;
    for (size_t i = 0; i < k; ++i) {
        if (proof.rsps[i].ch != proof.chs[i]) return false;
        if (!stern_verify(rel, proof.cmts[i], proof.rsps[i])) return false;
    }
    return true;
}

ProofShape proof_shape(const Params& p, const PermutationSpec& spec) {
    ProofShape s;
    s.q = p.q;
    s.L = spec.length();
    s.eta_len = spec.seed_length();
    for (const auto& c : spec.components()) s.eta_comps.push_back(c.len);
    s.width = p.coeff_bytes();
    ComKey ck(p);
    s.rho_bytes = ck.rho_bytes();
    s.com_bytes = ck.digest_bytes();
    return s;
}

ProofShape proof_shape(const RelationInstance& rel) {
    ProofShape s = proof_shape(rel.params, rel.spec);
    s.rho_bytes = rel.com->rho_bytes();
    s.com_bytes = rel.com->digest_bytes();
    return s;
}

size_t proof_size(const ProofShape& s, std::span<const uint8_t> chs) {
    size_t total = kProofHeaderBytes;
    for (uint8_t ch : chs)
        total += 3 * s.com_bytes + 1 + s.width * s.L + 2 * s.rho_bytes +
                 (ch == 1 ? packed_ternary_size(s.L) : packed_ternary_size(s.eta_len));
    return total;
}

std::vector<uint8_t> serialize_proof(const ProofShape& s, const NizkProof& proof) {
    ByteWriter w;
    w.put_bytes("ATSP");
    w.put_u16(kProofVersion);
    w.put_u8(proof.relid);
    w.put_u16(static_cast<uint16_t>(proof.cmts.size()));
    for (size_t i = 0; i < proof.cmts.size(); ++i) {
        const auto& c = proof.cmts[i];
        const auto& r = proof.rsps[i];
        if (c.c1.size() != s.com_bytes || c.c2.size() != s.com_bytes || c.c3.size() != s.com_bytes)
            throw ShapeError("commitment size mismatch");
        if (r.vec.size() != s.L || r.rho_a.size() != s.rho_bytes || r.rho_b.size() != s.rho_bytes)
            throw ShapeError("response size mismatch");
        w.put_bytes(c.c1);
        w.put_bytes(c.c2);
        w.put_bytes(c.c3);
        w.put_u8(r.ch);
        if (r.ch == 1) {
            if (r.t_w.size() != s.L) throw ShapeError("t_w size mismatch");
            w.put_bytes(pack_ternary(r.t_w));
        } else {
            TernaryVec flat;
            for (const auto& comp : r.eta) flat.insert(flat.end(), comp.begin(), comp.end());
            if (flat.size() != s.eta_len) throw ShapeError("eta size mismatch");
            w.put_bytes(pack_ternary(flat));
        }
        for (int32_t x : r.vec) w.put_le(canon(x, s.q), s.width);
        w.put_bytes(r.rho_a);
        w.put_bytes(r.rho_b);
    }
    return w.take();
}

NizkProof parse_proof(const ProofShape& s, std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect("ATSP");
    if (r.get_u16() != kProofVersion) throw FormatError("unsupported proof version");
    NizkProof proof;
    proof.relid = r.get_u8();
    uint16_t kappa = r.get_u16();
    if (kappa == 0) throw FormatError("proof has no rounds");
    const int64_t half = (s.q - 1) / 2;
    for (uint16_t i = 0; i < kappa; ++i) {
        SternCommitment c;
        auto take = [&](size_t n) {
            auto b = r.get_bytes(n);
            return std::vector<uint8_t>(b.begin(), b.end());
        };
        c.c1 = take(s.com_bytes);
        c.c2 = take(s.com_bytes);
        c.c3 = take(s.com_bytes);
        SternResponse rsp;
        rsp.ch = r.get_u8();
        if (rsp.ch < 1 || rsp.ch > 3) throw FormatError("challenge byte outside 1..3");
        if (rsp.ch == 1) {
            rsp.t_w = unpack_ternary(r.get_bytes(packed_ternary_size(s.L)), s.L);
        } else {
            TernaryVec flat = unpack_ternary(r.get_bytes(packed_ternary_size(s.eta_len)), s.eta_len);
            size_t pos = 0;
            for (size_t len : s.eta_comps) {
                rsp.eta.emplace_back(flat.begin() + pos, flat.begin() + pos + len);
                pos += len;
            }
        }
        rsp.vec.resize(s.L);
        for (auto& x : rsp.vec) {
            uint64_t v = r.get_le(s.width);
            if (v >= static_cast<uint64_t>(s.q)) throw FormatError("Z_q entry out of range");
            x = static_cast<int32_t>(static_cast<int64_t>(v) > half ? static_cast<int64_t>(v) - s.q : static_cast<int64_t>(v));
        }
        rsp.rho_a = take(s.rho_bytes);
        rsp.rho_b = take(s.rho_bytes);
        proof.chs.push_back(rsp.ch);
        proof.cmts.push_back(std::move(c));
        proof.rsps.push_back(std::move(rsp));
    }
    r.expect_end();
    return proof;
}

}  // namespace ats
