#include "ats/relations.hpp"

#include <functional>

#include "ats/decomp.hpp"
#include "ats/errors.hpp"

namespace ats {

namespace {

// Adds weight * tau(a * X^shift) to column col, rows row0 .. row0 + n - 1.
void rot_col(SparseMatQ& M, size_t row0, size_t col, const RingElem& a, uint64_t shift, int64_t weight) {
    const size_t n = a.n();
    const int64_t w = reduce(weight, M.q);
    if (w == 0) return;
    for (size_t t = 0; t < n; ++t) {
        if (a.c[t] == 0) continue;
        uint64_t pos = t + shift;
        int64_t sign = ((pos / n) & 1) ? -1 : 1;
        M.add(row0 + pos % n, col, sign * w * a.c[t]);
    }
}

// Q-block entry: a*_kk * g*_{j,d} contributes B_d * B'_{kk % ell} * tau(X^{kk/ell + j}).
void q_col(SparseMatQ& M, size_t row0, size_t col, size_t n, size_t ell, size_t j, size_t kk,
           int64_t bd, const BSequence& full) {
    size_t pos = kk / ell + j;
    int64_t sign = (pos >= n) ? -1 : 1;
    M.add(row0 + pos % n, col, sign * bd * full.seq[kk % ell]);
}

size_t enc_col(size_t off, size_t idx) { return off + 3 * idx + 1; }

TernaryVec concat(std::initializer_list<const TernaryVec*> parts) {
    TernaryVec out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

std::vector<uint8_t> public_bytes(const Params& p, std::initializer_list<const RingVec*> vecs) {
    ByteWriter w;
    for (const auto* v : vecs) {
        w.put_u32(static_cast<uint32_t>(v->size()));
        put_ring_vec(w, *v, p.coeff_bytes());
    }
    return w.take();
}

RelationInstance new_instance(const Params& p, uint8_t id, size_t K, size_t L) {
    RelationInstance rel;
    rel.id = id;
    rel.params = p;
    rel.M = SparseMatQ(K, L, p.q);
    rel.u = IntVecQ{p.q, std::vector<int32_t>(K, 0)};
    rel.com = std::make_shared<const ComKey>(p);
    return rel;
}

void check_len(size_t got, size_t want, const char* what) {
    if (got != want) throw ShapeError(what);
}

Witness finish(const RelationInstance& rel, const PermutationSpec::Values& vals, const char* what) {
    Witness w = rel.spec.encode(vals);
    if (!rel.satisfied(std::span<const int8_t>(w))) throw WitnessError(what);
    return w;
}

// Equation rows for the DM signature: rows [row0, row0+n) hold A_t v - F y = u,
// rows [row0+n, row0+2n) hold F0 r + F1 rdec(m) - H tau(y) = 0. msg_col maps an
// index of tau(rdec(m)) to its witness column.
struct DmColumns {
    size_t mix_off;   // mix(t, z*)
    size_t s_off;     // enc offsets of s*, r*, tau(y) inside an Enc segment
    size_t r_off;
    size_t y_off;
    std::function<size_t(size_t)> msg_col;
};

void add_dm_rows(SparseMatQ& M, const Params& p, const DmVerifKey& vk, size_t row0, const DmColumns& cols) {
    const size_t n = p.n;
    const BSequence bb = b_sequence(p.beta);
    const BSequence full = full_sequence(p);
    const size_t dz = size_t{n} * p.k * bb.delta;
    // z* and t_j * z*
    for (uint32_t e = 0; e < p.k; ++e)
        for (size_t c = 0; c < n; ++c)
            for (uint32_t d = 0; d < bb.delta; ++d) {
                size_t idx = (e * n + c) * bb.delta + d;
                rot_col(M, row0, cols.mix_off + 3 * idx + 1, vk.A_tags[0][e], c, bb.seq[d]);
                for (uint32_t i = 1; i <= p.d; ++i)
                    for (uint32_t j = p.c[i - 1]; j < p.c[i]; ++j) {
                        size_t col = cols.mix_off + 3 * dz + 6 * (j * dz + idx) + 3;
                        rot_col(M, row0, col, vk.A_tags[i][e], j + c, bb.seq[d]);
                    }
            }
    // s* and r*
    for (uint32_t e = 0; e < p.m_bar; ++e)
        for (size_t c = 0; c < n; ++c)
            for (uint32_t d = 0; d < bb.delta; ++d) {
                size_t idx = (e * n + c) * bb.delta + d;
                rot_col(M, row0, enc_col(cols.s_off, idx), vk.A[e], c, bb.seq[d]);
                rot_col(M, row0 + n, enc_col(cols.r_off, idx), vk.F0[e], c, bb.seq[d]);
            }
    // tau(y)
    for (size_t c = 0; c < n * p.ell; ++c) {
        size_t col = enc_col(cols.y_off, c);
        rot_col(M, row0, col, vk.F[c / n], c % n, -1);
        M.add(row0 + n + c / p.ell, col, -full.seq[c % p.ell]);
    }
    // tau(rdec(m))
    for (size_t c = 0; c < n * p.m_bar_s; ++c) rot_col(M, row0 + n, cols.msg_col(c), vk.F1[c / n], c % n, 1);
}

void check_vk(const Params& p, const DmVerifKey& vk) {
    check_len(vk.A.size(), p.m_bar, "vk.A must have m_bar entries");
    check_len(vk.F0.size(), p.m_bar, "vk.F0 must have m_bar entries");
    check_len(vk.A_tags.size(), p.d + 1, "vk must have d+1 tag blocks");
    for (const auto& a : vk.A_tags) check_len(a.size(), p.k, "tag blocks must have k entries");
    check_len(vk.F.size(), p.ell, "vk.F must have ell entries");
    check_len(vk.F1.size(), p.m_bar_s, "vk.F1 must have m_bar_s entries");
}

std::vector<uint8_t> vk_bytes(const Params& p, const DmVerifKey& vk) {
    ByteWriter w;
    auto put = [&](const RingVec& v) { put_ring_vec(w, v, p.coeff_bytes()); };
    put(vk.A);
    put(vk.F0);
    for (const auto& a : vk.A_tags) put(a);
    put(vk.F);
    put(vk.F1);
    put_ring(w, vk.u, p.coeff_bytes());
    return w.take();
}

// Signature pieces in decomposed form.
struct DmParts {
    TernaryVec t, z_star, s_star, r_star, y_tau, msg_tau;
};

DmParts dm_parts(const Params& p, const DmVerifKey& vk, const RingVec& m, const DmSignature& sig) {
    if (!dm_verify(p, vk, m, sig)) throw WitnessError("condition (i) violated: DM signature does not verify");
    const BSequence bb = b_sequence(p.beta);
    DmTrace tr;
    dm_target(p, vk, m, sig.r, &tr);
    DmParts out;
    out.t.assign(sig.t.bits.begin(), sig.t.bits.end());
    RingVec s(sig.v.begin(), sig.v.begin() + p.m_bar);
    RingVec z(sig.v.begin() + p.m_bar, sig.v.end());
    out.z_star = rdec_tau(z, bb);
    out.s_star = rdec_tau(s, bb);
    out.r_star = rdec_tau(sig.r, bb);
    out.y_tau = rdec_tau(tr.y);
    out.msg_tau = rdec_tau(m, full_sequence(p));
    return out;
}

}  // namespace

std::vector<size_t> value_positions(const PermutationSpec& spec) {
    std::vector<size_t> out;
    size_t off = 0;
    const auto& comps = spec.components();
    for (const auto& s : spec.segments()) {
        switch (s.kind) {
            case PermutationSpec::Kind::Enc:
                for (size_t i = 0; i < comps[s.a].len; ++i) out.push_back(off + 3 * i + 1);
                off += 3 * comps[s.a].len;
                break;
            case PermutationSpec::Kind::Mix: {
                const size_t dz = comps[s.b].len, dt = comps[s.a].len;
                for (size_t i = 0; i < dz; ++i) out.push_back(off + 3 * i + 1);
                for (size_t b = 0; b < dz * dt; ++b) out.push_back(off + 3 * dz + 6 * b + 3);
                off += 3 * dz + 6 * dz * dt;
                break;
            }
            case PermutationSpec::Kind::Mult: {
                const size_t blocks = comps[s.a].len * comps[s.b].len;
                for (size_t b = 0; b < blocks; ++b) out.push_back(off + 9 * b + 4);
                off += 9 * blocks;
                break;
            }
        }
    }
    return out;
}

RelationDims dm_dims(const Params& p) {
    const size_t n = p.n, db = p.delta_beta();
    RelationDims d;
    d.L1 = (p.k * db + 2 * size_t{p.cd()} * p.k * db) * 3 * n;
    d.L2 = 6 * n * p.m_bar * db + 3 * n * p.ell + 3 * n * p.m_bar_s;
    d.K = 2 * n;
    return d;
}

RelationDims rlwe_dims(const Params& p) {
    const size_t n = p.n, l = p.ell, dB = p.delta_B();
    RelationDims d;
    d.L1 = 9 * n * n * l * l * dB;
    d.L2 = 3 * n * l * dB;
    d.K = n * l;
    return d;
}

RelationDims ats_dims(const Params& p) {
    const size_t n = p.n, l = p.ell, dB = p.delta_B(), db = p.delta_beta();
    RelationDims d;
    d.L1 = 3 * n * p.k * db + 6 * n * p.k * db * p.cd();
    const size_t L2p = 2 * n * p.m_bar * db + 2 * n * l + n * p.m + 4 * n * l * dB;
    d.L2 = 3 * L2p;
    d.L3 = 12 * n * l * l;
    d.L4 = 36 * n * n * l * l * dB;
    d.K = 3 * n + 4 * n * l;
    return d;
}

RelationDims open_dims(const Params& p) {
    const size_t n = p.n, l = p.ell, dB = p.delta_B(), d10 = p.delta_q10();
    RelationDims d;
    d.L1 = 3 * (n * dB + n * l * dB + n * l * d10);
    d.K = 2 * n * l;
    return d;
}

PermutationSpec relation_spec(const Params& p, RelationId id) {
    const size_t n = p.n, l = p.ell, db = p.delta_beta();
    const uint32_t dB = p.delta_B();
    PermutationSpec spec;
    switch (id) {
        case kRelDm: {
            size_t t = spec.add_component(p.cd(), true);
            size_t z = spec.add_component(n * p.k * db, false);
            size_t w2 = spec.add_component(dm_dims(p).L2 / 3, false);
            spec.add_mix(t, z);
            spec.add_enc(w2);
            break;
        }
        case kRelRlwe: {
            std::vector<size_t> b;
            for (size_t i = 0; i < l; ++i) b.push_back(spec.add_component(n * l, false));
            size_t f1 = spec.add_component(n * dB, false);
            size_t f2 = spec.add_component(n * l * dB, false);
            for (size_t i = 0; i < l; ++i) spec.add_mult(b[i], f1, dB);
            spec.add_enc(f2);
            break;
        }
        case kRelAts: {
            // eta = (f1, f2, f3, f4_1..f4_2l, f5_1..f5_2l, f6, f7)
            size_t f1 = spec.add_component(p.cd(), true);
            size_t f2 = spec.add_component(n * p.k * db, false);
            size_t f3 = spec.add_component(ats_dims(p).L2 / 3, false);
            std::vector<size_t> f45;
            for (size_t j = 0; j < 4 * l; ++j) f45.push_back(spec.add_component(n * l, false));
            size_t f6 = spec.add_component(n * dB, false);
            size_t f7 = spec.add_component(n * dB, false);
            spec.add_mix(f1, f2);
            spec.add_enc(f3);
            for (size_t j = 0; j < 4 * l; ++j) spec.add_enc(f45[j]);
            for (size_t j = 0; j < 4 * l; ++j) spec.add_mult(f45[j], j < 2 * l ? f6 : f7, dB);
            break;
        }
        case kRelOpen:
            spec.add_enc(spec.add_component(open_dims(p).L1 / 3, false));
            break;
        default:
            throw DomainError("unknown relation id");
    }
    return spec;
}

// ---- DM ----

RelationInstance build_dm_relation(const Params& p, const DmVerifKey& vk) {
    check_vk(p, vk);
    const size_t n = p.n, db = p.delta_beta();
    const RelationDims dims = dm_dims(p);
    RelationInstance rel = new_instance(p, kRelDm, dims.K, dims.total());

    rel.spec = relation_spec(p, kRelDm);
    if (rel.spec.length() != dims.total()) throw InternalError("DM relation length audit failed");

    const size_t nmb = n * p.m_bar * db;
    DmColumns cols;
    cols.mix_off = 0;
    cols.s_off = dims.L1;
    cols.r_off = dims.L1 + 3 * nmb;
    cols.y_off = dims.L1 + 6 * nmb;
    const size_t msg_off = cols.y_off + 3 * n * p.ell;
    cols.msg_col = [msg_off](size_t c) { return enc_col(msg_off, c); };
    add_dm_rows(rel.M, p, vk, 0, cols);

    IntVecQ tu = tau(vk.u);
    std::copy(tu.v.begin(), tu.v.end(), rel.u.v.begin());
    rel.finalize_statement(vk_bytes(p, vk));
    return rel;
}

Witness encode_dm_witness(const RelationInstance& rel, const Params& p, const DmVerifKey& vk,
                          const RingVec& m, const DmSignature& sig) {
    DmParts d = dm_parts(p, vk, m, sig);
    PermutationSpec::Values vals{d.t, d.z_star, concat({&d.s_star, &d.r_star, &d.y_tau, &d.msg_tau})};
    return finish(rel, vals, "DM witness does not satisfy M*w = u");
}

// ---- RLWE with hidden a ----

RelationInstance build_rlwe_relation(const Params& p, const RingVec& c) {
    check_len(c.size(), p.ell, "c must have ell entries");
    const size_t n = p.n, l = p.ell;
    const BSequence bB = b_sequence(p.B);
    const BSequence full = full_sequence(p);
    const size_t dB = bB.delta;
    const RelationDims dims = rlwe_dims(p);
    RelationInstance rel = new_instance(p, kRelRlwe, dims.K, dims.total());

    rel.spec = relation_spec(p, kRelRlwe);
    if (rel.spec.length() != dims.total()) throw InternalError("RLWE relation length audit failed");

    const size_t blk = 9 * n * n * l * dB;
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t kk = 0; kk < n * l; ++kk)
                for (size_t d = 0; d < dB; ++d) {
                    size_t col = i * blk + 9 * (j * n * l * dB + kk * dB + d) + 4;
                    q_col(rel.M, i * n, col, n, l, j, kk, bB.seq[d], full);
                }
    for (size_t c2 = 0; c2 < n * l * dB; ++c2) rel.M.add(c2 / dB, enc_col(dims.L1, c2), bB.seq[c2 % dB]);

    rel.u = tau(c);
    rel.finalize_statement(public_bytes(p, {&c}));
    return rel;
}

Witness encode_rlwe_witness(const RelationInstance& rel, const Params& p, const RingVec& c,
                            const RingVec& a, const RingElem& g, const RingVec& e) {
    check_len(a.size(), p.ell, "a must have ell entries");
    check_len(e.size(), p.ell, "e must have ell entries");
    if (inf_norm(g) > p.B || inf_norm(e) > p.B) throw WitnessError("g or e exceeds bound B");
    if (add(mul(a, g), e) != c) throw WitnessError("c != a*g + e");
    const BSequence bB = b_sequence(p.B);
    PermutationSpec::Values vals;
    for (const auto& ai : a) vals.push_back(rdec_tau(ai));
    vals.push_back(rdec_tau(g, bB));
    vals.push_back(rdec_tau(e, bB));
    return finish(rel, vals, "RLWE witness does not satisfy M*w = u");
}

// ---- full signing relation ----

RingVec ats_message(const RingElem& p, const KoePublicKey& epk1, const KoePublicKey& epk2) {
    RingVec m{p};
    for (const RingVec* v : {&epk1.a, &epk1.b, &epk2.a, &epk2.b}) m.insert(m.end(), v->begin(), v->end());
    return m;
}

RelationInstance build_ats_relation(const Params& p, const AtsPublic& pub) {
    check_vk(p, pub.vk);
    check_len(pub.B.size(), p.m, "B must have m entries");
    for (const KoeCiphertext* ct : {&pub.c1, &pub.c2}) {
        check_len(ct->c1.size(), p.ell, "ciphertext must have ell entries");
        check_len(ct->c2.size(), p.ell, "ciphertext must have ell entries");
    }
    const size_t n = p.n, l = p.ell;
    const size_t db = p.delta_beta();
    const BSequence bB = b_sequence(p.B);
    const BSequence full = full_sequence(p);
    const size_t dB = bB.delta;
    const RelationDims dims = ats_dims(p);
    RelationInstance rel = new_instance(p, kRelAts, dims.K, dims.total());

    rel.spec = relation_spec(p, kRelAts);
    if (rel.spec.length() != dims.total()) throw InternalError("ATS relation length audit failed");

    // Offsets inside w2bar.
    const size_t nmb = n * p.m_bar * db;
    const size_t o_s = 0, o_r = nmb, o_y = 2 * nmb, o_p = o_y + n * l, o_x = o_p + n * l;
    const size_t o_e = o_x + n * p.m;  // e11, e12, e21, e22 each n*l*dB
    const size_t w2 = dims.L1;
    const size_t w3 = dims.L1 + dims.L2;
    const size_t w4 = w3 + dims.L3;
    auto w3_col = [&](size_t blockj, size_t idx) { return w3 + 3 * (blockj * n * l + idx) + 1; };

    // Row blocks.
    const size_t r_dm = 0, r_bx = 2 * n, r_c = 3 * n;
    auto r_ct = [&](size_t key, size_t part) { return r_c + (2 * key + part) * n * l; };

    DmColumns cols;
    cols.mix_off = 0;
    cols.s_off = w2 + 3 * o_s;
    cols.r_off = w2 + 3 * o_r;
    cols.y_off = w2 + 3 * o_y;
    cols.msg_col = [&](size_t c) {
        if (c < n * l) return enc_col(w2, o_p + c);
        size_t c3 = c - n * l;
        return w3_col(c3 / (n * l), c3 % (n * l));
    };
    add_dm_rows(rel.M, p, pub.vk, r_dm, cols);

    // B x = p
    for (size_t c = 0; c < n * p.m; ++c) rot_col(rel.M, r_bx, enc_col(w2, o_x + c), pub.B[c / n], c % n, 1);
    for (size_t c = 0; c < n * l; ++c) {
        size_t col = enc_col(w2, o_p + c);
        rel.M.add(r_bx + c / l, col, -full.seq[c % l]);
        // floor(q/4) * tau(rdec(p)) in both c_{i,2}
        rel.M.add(r_ct(0, 1) + c, col, p.q4());
        rel.M.add(r_ct(1, 1) + c, col, p.q4());
    }
    // H_{l,B} e*_{i,part}
    for (size_t key = 0; key < 2; ++key)
        for (size_t part = 0; part < 2; ++part) {
            size_t off = o_e + (2 * key + part) * n * l * dB;
            for (size_t c = 0; c < n * l * dB; ++c)
                rel.M.add(r_ct(key, part) + c / dB, enc_col(w2, off + c), bB.seq[c % dB]);
        }
    // Q * expd blocks. Block j: key j / 2l; a-part if (j mod 2l) < l, else b-part.
    const size_t blk = 9 * n * n * l * dB;
    for (size_t j = 0; j < 4 * l; ++j) {
        size_t key = j / (2 * l), jj = j % (2 * l);
        size_t part = jj < l ? 0 : 1;
        size_t elem = jj % l;
        size_t row0 = r_ct(key, part) + elem * n;
        for (size_t g = 0; g < n; ++g)
            for (size_t kk = 0; kk < n * l; ++kk)
                for (size_t d = 0; d < dB; ++d) {
                    size_t col = w4 + j * blk + 9 * (g * n * l * dB + kk * dB + d) + 4;
                    q_col(rel.M, row0, col, n, l, g, kk, bB.seq[d], full);
                }
    }

    IntVecQ tu = tau(pub.vk.u);
    std::copy(tu.v.begin(), tu.v.end(), rel.u.v.begin() + r_dm);
    for (size_t key = 0; key < 2; ++key) {
        const KoeCiphertext& ct = key == 0 ? pub.c1 : pub.c2;
        IntVecQ a = tau(ct.c1), b = tau(ct.c2);
        std::copy(a.v.begin(), a.v.end(), rel.u.v.begin() + r_ct(key, 0));
        std::copy(b.v.begin(), b.v.end(), rel.u.v.begin() + r_ct(key, 1));
    }
    std::vector<uint8_t> pubb = vk_bytes(p, pub.vk);
    auto more = public_bytes(p, {&pub.B, &pub.c1.c1, &pub.c1.c2, &pub.c2.c1, &pub.c2.c2});
    pubb.insert(pubb.end(), more.begin(), more.end());
    rel.finalize_statement(pubb);
    return rel;
}

Witness encode_ats_witness(const RelationInstance& rel, const Params& p, const AtsPublic& pub,
                           const AtsWitness& w) {
    const size_t l = p.ell;
    for (const KoePublicKey* k : {&w.epk1, &w.epk2}) {
        check_len(k->a.size(), l, "epk must have ell entries");
        check_len(k->b.size(), l, "epk must have ell entries");
    }
    check_len(w.x.size(), p.m, "x must have m entries");
    RingVec m = ats_message(w.p, w.epk1, w.epk2);
    DmParts d = dm_parts(p, pub.vk, m, w.sig);
    if (inf_norm(w.x) > 1) throw WitnessError("condition (ii) violated: x is not ternary");
    if (dot(pub.B, w.x) != w.p) throw WitnessError("condition (ii) violated: B*x != p");
    const KoeRandomizer* rnd[2] = {&w.enc1, &w.enc2};
    const KoePublicKey* epk[2] = {&w.epk1, &w.epk2};
    const KoeCiphertext* ct[2] = {&pub.c1, &pub.c2};
    for (int i = 0; i < 2; ++i) {
        try {
            check_randomizer(p, *rnd[i]);
        } catch (const std::exception&) {
            throw WitnessError("condition (iii) violated: encryption randomness out of bounds");
        }
        if (koe_enc(p, *epk[i], w.p, *rnd[i]) != *ct[i])
            throw WitnessError(i == 0 ? "condition (iii) violated: c_1 is not an encryption of p"
                                      : "condition (iii) violated: c_2 is not an encryption of p");
    }

    const BSequence bB = b_sequence(p.B);
    const TernaryVec p_tau = rdec_tau(w.p);
    TernaryVec x_tau;
    for (int32_t v : tau(w.x).v) x_tau.push_back(static_cast<int8_t>(v));
    TernaryVec e_parts[4];
    for (int i = 0; i < 2; ++i) {
        e_parts[2 * i] = rdec_tau(rnd[i]->e1, bB);
        e_parts[2 * i + 1] = rdec_tau(rnd[i]->e2, bB);
    }
    TernaryVec w2 = concat({&d.s_star, &d.r_star, &d.y_tau, &p_tau, &x_tau, &e_parts[0], &e_parts[1],
                            &e_parts[2], &e_parts[3]});

    PermutationSpec::Values vals{d.t, d.z_star, w2};
    for (const KoePublicKey* k : {&w.epk1, &w.epk2}) {
        for (const auto& a : k->a) vals.push_back(rdec_tau(a));
        for (const auto& b : k->b) vals.push_back(rdec_tau(b));
    }
    vals.push_back(rdec_tau(w.enc1.g, bB));
    vals.push_back(rdec_tau(w.enc2.g, bB));
    return finish(rel, vals, "ATS witness does not satisfy M*w = u");
}

// ---- opening ----

RelationInstance build_open_relation(const Params& p, const OpenPublic& pub) {
    for (const RingVec* v : {&pub.pk.a, &pub.pk.b, &pub.c1.c1, &pub.c1.c2}) check_len(v->size(), p.ell, "open public input must have ell entries");
    const size_t n = p.n, l = p.ell;
    const BSequence bB = b_sequence(p.B);
    const BSequence b10 = b_sequence(p.q10());
    const size_t dB = bB.delta, d10 = b10.delta;
    const RelationDims dims = open_dims(p);
    RelationInstance rel = new_instance(p, kRelOpen, dims.K, dims.total());

    rel.spec = relation_spec(p, kRelOpen);
    if (rel.spec.length() != dims.total()) throw InternalError("open relation length audit failed");

    const size_t o_s = 0, o_e = n * dB, o_y = o_e + n * l * dB;
    const size_t r1 = 0, r2 = n * l;
    for (size_t i = 0; i < l; ++i)
        for (size_t c = 0; c < n * dB; ++c) {
            size_t col = enc_col(0, o_s + c);
            rot_col(rel.M, r1 + i * n, col, pub.pk.a[i], c / dB, bB.seq[c % dB]);
            rot_col(rel.M, r2 + i * n, col, pub.c1.c1[i], c / dB, bB.seq[c % dB]);
        }
    for (size_t c = 0; c < n * l * dB; ++c) rel.M.add(r1 + c / dB, enc_col(0, o_e + c), bB.seq[c % dB]);
    for (size_t c = 0; c < n * l * d10; ++c) rel.M.add(r2 + c / d10, enc_col(0, o_y + c), b10.seq[c % d10]);

    IntVecQ tb = tau(pub.pk.b);
    IntVecQ rhs = tau(sub(pub.c1.c2, scale(rdec_ring(pub.p_open), p.q4())));
    std::copy(tb.v.begin(), tb.v.end(), rel.u.v.begin() + r1);
    std::copy(rhs.v.begin(), rhs.v.end(), rel.u.v.begin() + r2);
    RingVec pv{pub.p_open};
    rel.finalize_statement(public_bytes(p, {&pub.pk.a, &pub.pk.b, &pub.c1.c1, &pub.c1.c2, &pv}));
    return rel;
}

Witness encode_open_witness(const RelationInstance& rel, const Params& p, const OpenPublic& pub,
                            const OpenWitness& w) {
    check_len(w.e.size(), p.ell, "e must have ell entries");
    check_len(w.y.size(), p.ell, "y must have ell entries");
    if (inf_norm(w.s) > p.B || inf_norm(w.e) > p.B) throw WitnessError("s or e exceeds bound B");
    if (inf_norm(w.y) > p.q10()) throw WitnessError("y exceeds bound ceil(q/10)");
    if (add(mul(pub.pk.a, w.s), w.e) != pub.pk.b) throw WitnessError("a*s + e != b");
    if (add(mul(pub.c1.c1, w.s), w.y) != sub(pub.c1.c2, scale(rdec_ring(pub.p_open), p.q4())))
        throw WitnessError("c_{1,2} - c_{1,1}*s != y + floor(q/4)*rdec(p')");
    const BSequence bB = b_sequence(p.B);
    const BSequence b10 = b_sequence(p.q10());
    TernaryVec s = rdec_tau(w.s, bB), e = rdec_tau(w.e, bB), y = rdec_tau(w.y, b10);
    PermutationSpec::Values vals{concat({&s, &e, &y})};
    return finish(rel, vals, "open witness does not satisfy M*w = u");
}

}  // namespace ats
