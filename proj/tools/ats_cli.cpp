// ats-cli: key lifecycle, enrollment, signing, opening and accounting.
// Exit codes: 0 ok, 1 negative result, 2 malformed input, 3 policy, 4 exhausted, 5 lock.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <malloc.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "ats/ats.hpp"
#include "ats/codec.hpp"
#include "ats/errors.hpp"
#include "ats/gm_store.hpp"

using namespace ats;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kMalformed = 2, kPolicy = 3, kExhausted = 4, kLock = 5 };

struct Options {
    bool json_out = false;
    std::optional<uint64_t> seed;
};

Options g_opt;

Rng make_rng() {
    if (const char* env = std::getenv("ATS_SEED")) {
        try {
            return Rng(static_cast<uint64_t>(std::stoull(env)));
        } catch (const std::exception&) {
            throw FormatError("ATS_SEED must be an unsigned integer");
        }
    }
    if (g_opt.seed) return Rng(*g_opt.seed);
    return Rng::from_os();
}

// One result line, or a JSON object under --json.
void emit(const std::string& line, json extra = json::object()) {
    if (g_opt.json_out) {
        extra["result"] = line;
        std::cout << extra.dump() << "\n";
    } else {
        std::cout << line << "\n";
    }
}

std::string hex_of(const Params& p, const RingElem& a) { return ring_hex(a, p.coeff_bytes()); }

RingElem ring_from_hex(const Params& p, const std::string& hex) {
    auto bytes = from_hex(hex);
    ByteReader r(bytes);
    RingElem a = get_ring(r, p);
    r.expect_end();
    return a;
}

std::vector<int64_t> int_list(const std::string& s, const char* flag) {
    std::vector<int64_t> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw FormatError(std::string(flag) + " expects comma-separated integers");
        }
        if (v.back() < 0 || v.back() > (int64_t{1} << 30)) throw ParamError(std::string(flag) + " entries must be in [0, 2^30]");
    }
    return v;
}

Params parse_params(const std::string& list, const std::string& tags) {
    Params p = Params::defaults();
    if (!list.empty()) {
        auto v = int_list(list, "--params");
        if (v.size() != 5) throw FormatError("--params expects exactly n,k,B,beta,kappa");
        p = Params::make(static_cast<uint32_t>(v[0]), static_cast<uint32_t>(v[1]), v[2], v[3],
                         static_cast<uint32_t>(v[4]));
    }
    if (!tags.empty()) {
        std::vector<uint32_t> c;
        for (int64_t x : int_list(tags, "--tags")) c.push_back(static_cast<uint32_t>(x));
        p = Params::make_with_tags(p.n, p.k, p.B, p.beta, p.kappa, 0, std::move(c));
    }
    p.validate();
    return p;
}

void write_public(const fs::path& path, std::span<const uint8_t> data) { write_file_atomic(path, data, 0644); }
void write_secret(const fs::path& path, std::span<const uint8_t> data) { write_file_atomic(path, data, 0600); }

GroupPublicKey load_gpk(const std::string& path) { return parse_gpk(read_file(path)); }

std::vector<uint8_t> load_message(const std::string& path) { return read_file(path); }

int cmd_setup(const std::string& params, const std::string& tags, const std::string& out) {
    Params p = parse_params(params, tags);
    Rng rng = make_rng();
    PublicParams pp = ats_setup(p, rng);
    write_public(out, serialize_pp(pp));
    emit("OK", {{"n", p.n}, {"q", p.q}, {"kappa", p.kappa}});
    return kOk;
}

int cmd_gkeygen(const std::string& pp_path, const std::string& out, const std::string& secret_prefix,
                const std::string& state_path) {
    PublicParams pp = parse_pp(read_file(pp_path));
    Rng rng = make_rng();
    GroupKeys gk = ats_gkeygen(pp, rng);
    const Params& p = pp.params;
    write_public(out, serialize_gpk(gk.gpk));
    write_secret(secret_prefix + ".ik", serialize_ik(p, gk.ik));
    write_secret(secret_prefix + ".ok", serialize_ok(p, gk.ok));
    if (!state_path.empty()) {
        GmLock lock(state_path);
        if (fs::exists(state_path)) throw PolicyError("GM state file already exists");
        save_gm_state(state_path, p, GmState{});
    }
    emit("OK");
    return kOk;
}

int cmd_ukeygen(const std::string& src, const std::string& out, const std::string& secret_out) {
    auto bytes = read_file(src);
    PublicParams pp = peek_magic(bytes) == magic::kGroupKey ? parse_gpk(bytes).pp : parse_pp(bytes);
    Rng rng = make_rng();
    UserKeys u = ats_ukeygen(pp, rng);
    write_public(out, serialize_upk(pp.params, u.upk));
    write_secret(secret_out, serialize_usk(pp.params, u.usk));
    emit("OK", {{"upk", hex_of(pp.params, u.upk)}});
    return kOk;
}

int cmd_enroll(const std::string& gpk_path, const std::string& ik_path, const std::string& state_path,
               const std::string& upk_path, int tr, const std::string& out, const std::string& secret_out,
               bool allow_dup) {
    GroupPublicKey gpk = load_gpk(gpk_path);
    const Params& p = gpk.params();
    IssueKey ik = parse_ik(p, read_file(ik_path));
    RingElem upk = parse_upk(p, read_file(upk_path));
    GmLock lock(state_path);
    GmState st = load_gm_state(state_path, p);
    Rng rng = make_rng();
    EnrollResult res = ats_enroll(gpk, ik, st, upk, static_cast<uint8_t>(tr), rng, allow_dup);
    // State first: a crash after this point never reuses a tag.
    save_gm_state(state_path, p, st);
    write_public(out, serialize_cert(p, res.cert));
    write_secret(secret_out, serialize_escrow(p, res.escrow));
    emit("OK", {{"index", res.entry.index}, {"tr", tr}});
    return kOk;
}

int cmd_account(const std::string& gpk_path, const std::string& cert_path, const std::string& escrow_path, int tr) {
    GroupPublicKey gpk = load_gpk(gpk_path);
    const Params& p = gpk.params();
    Certificate cert = parse_cert(p, read_file(cert_path));
    EscrowWitness esc = parse_escrow(p, read_file(escrow_path));
    if (ats_account(gpk, cert, esc, tr)) {
        emit("ACCOUNT-OK tr=" + std::to_string(tr), {{"tr", tr}});
        return kOk;
    }
    emit("FAIL", {{"tr", tr}});
    return kNegative;
}

int cmd_sign(const std::string& gpk_path, const std::string& cert_path, const std::string& usk_path,
             const std::string& msg_path, const std::string& out) {
    GroupPublicKey gpk = load_gpk(gpk_path);
    const Params& p = gpk.params();
    Certificate cert = parse_cert(p, read_file(cert_path));
    RingVec usk = parse_usk(p, read_file(usk_path));
    auto msg = load_message(msg_path);
    Rng rng = make_rng();
    GroupSignature sig = ats_sign(gpk, cert, usk, msg, rng);
    write_public(out, serialize_signature(p, sig));
    emit("OK");
    return kOk;
}

int cmd_verify(const std::string& gpk_path, const std::string& msg_path, const std::string& sig_path) {
    GroupPublicKey gpk = load_gpk(gpk_path);
    auto msg = load_message(msg_path);
    GroupSignature sig = parse_signature(gpk.params(), read_file(sig_path));
    bool ok = ats_verify(gpk, msg, sig);
    emit(ok ? "OK" : "FAIL");
    return ok ? kOk : kNegative;
}

int cmd_open(const std::string& gpk_path, const std::string& ok_path, const std::string& state_path,
             const std::string& msg_path, const std::string& sig_path, const std::string& out) {
    GroupPublicKey gpk = load_gpk(gpk_path);
    const Params& p = gpk.params();
    OpeningKey ok = parse_ok(p, read_file(ok_path));
    auto msg = load_message(msg_path);
    GroupSignature sig = parse_signature(p, read_file(sig_path));
    GmState st;
    {
        GmLock lock(state_path, true);
        st = load_gm_state(state_path, p);
    }
    Rng rng = make_rng();
    OpenResult res = ats_open(gpk, ok, st.reg, msg, sig, rng);
    if (!out.empty()) write_public(out, serialize_open(p, res));
    if (res.bottom()) {
        emit("BOTTOM");
    } else {
        std::string hex = hex_of(p, *res.p);
        emit(hex, {{"upk", hex}});
    }
    return kOk;
}

int cmd_judge(const std::string& gpk_path, const std::string& msg_path, const std::string& sig_path,
              const std::string& opened, const std::string& proof_path) {
    GroupPublicKey gpk = load_gpk(gpk_path);
    const Params& p = gpk.params();
    auto msg = load_message(msg_path);
    GroupSignature sig = parse_signature(p, read_file(sig_path));
    OpenResult res = parse_open(p, read_file(proof_path));
    std::optional<RingElem> p_open;
    if (opened != "BOTTOM") {
        if (fs::is_regular_file(opened)) p_open = parse_upk(p, read_file(opened));
        else p_open = ring_from_hex(p, opened);
    }
    bool ok = ats_judge(gpk, msg, sig, p_open, res.proof);
    emit(ok ? "OK" : "FAIL");
    return ok ? kOk : kNegative;
}

int run(int argc, char** argv) {
    CLI::App app{"Accountable tracing signatures"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_opt.json_out, "Emit JSON result objects");
    app.add_option("--seed", g_opt.seed, "Deterministic RNG seed (ATS_SEED overrides)");

    std::string params, tags, out, secret_out, pp_path, gpk, ik, ok, state, upk, cert, escrow, usk, msg, sig, opened,
        open_proof;
    int tr = -1;
    bool allow_dup = false;

    auto* setup = app.add_subcommand("setup", "Generate public parameters");
    setup->add_option("--params", params, "n,k,B,beta,kappa");
    setup->add_option("--tags", tags, "Tag sequence c_0,...,c_d (default 0,2,4,8,16)");
    setup->add_option("--out", out)->required();

    auto* gkeygen = app.add_subcommand("gkeygen", "Generate group keys");
    gkeygen->add_option("--pp", pp_path)->required();
    gkeygen->add_option("--out", out)->required();
    gkeygen->add_option("--secret-out", secret_out, "Prefix for .ik and .ok")->required();
    gkeygen->add_option("--gm-state", state, "Initialize an empty GM state file");

    auto* ukeygen = app.add_subcommand("ukeygen", "Generate a user key pair");
    ukeygen->add_option("--pp", pp_path, "Public parameters or group public key")->required();
    ukeygen->add_option("--out", out)->required();
    ukeygen->add_option("--secret-out", secret_out)->required();

    auto* enroll = app.add_subcommand("enroll", "Enroll a user");
    enroll->add_option("--gpk", gpk)->required();
    enroll->add_option("--ik", ik)->required();
    enroll->add_option("--gm-state", state)->required();
    enroll->add_option("--upk", upk)->required();
    enroll->add_option("--traceable", tr)->required()->check(CLI::Range(0, 1));
    enroll->add_option("--out", out)->required();
    enroll->add_option("--secret-out", secret_out, "Escrow witness output")->required();
    enroll->add_flag("--allow-duplicate", allow_dup);

    auto* account = app.add_subcommand("account", "Check the traceability choice");
    account->add_option("--gpk", gpk)->required();
    account->add_option("--cert", cert)->required();
    account->add_option("--escrow", escrow)->required();
    account->add_option("--tr", tr)->required()->check(CLI::Range(0, 1));

    auto* sign = app.add_subcommand("sign", "Sign a message");
    sign->add_option("--gpk", gpk)->required();
    sign->add_option("--cert", cert)->required();
    sign->add_option("--usk", usk)->required();
    sign->add_option("--message-file", msg)->required();
    sign->add_option("--out", out)->required();

    auto* verify = app.add_subcommand("verify", "Verify a group signature");
    verify->add_option("--gpk", gpk)->required();
    verify->add_option("--message-file", msg)->required();
    verify->add_option("--sig", sig)->required();

    auto* open = app.add_subcommand("open", "Open a group signature");
    open->add_option("--gpk", gpk)->required();
    open->add_option("--ok", ok)->required();
    open->add_option("--gm-state", state)->required();
    open->add_option("--message-file", msg)->required();
    open->add_option("--sig", sig)->required();
    open->add_option("--out", out, "Write the open result and proof");

    auto* judge = app.add_subcommand("judge", "Check an opening");
    judge->add_option("--gpk", gpk)->required();
    judge->add_option("--message-file", msg)->required();
    judge->add_option("--sig", sig)->required();
    judge->add_option("--opened-upk", opened, "hex, upk file, or BOTTOM")->required();
    judge->add_option("--open-proof", open_proof)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kMalformed;
    }

    if (*setup) return cmd_setup(params, tags, out);
    if (*gkeygen) return cmd_gkeygen(pp_path, out, secret_out, state);
    if (*ukeygen) return cmd_ukeygen(pp_path, out, secret_out);
    if (*enroll) return cmd_enroll(gpk, ik, state, upk, tr, out, secret_out, allow_dup);
    if (*account) return cmd_account(gpk, cert, escrow, tr);
    if (*sign) return cmd_sign(gpk, cert, usk, msg, out);
    if (*verify) return cmd_verify(gpk, msg, sig);
    if (*open) return cmd_open(gpk, ok, state, msg, sig, out);
    if (*judge) return cmd_judge(gpk, msg, sig, opened, open_proof);
    return kMalformed;
}

int fail(int code, const std::string& kind, const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (g_opt.json_out) std::cout << json{{"result", "ERROR"}, {"kind", kind}, {"message", e.what()}}.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    // Keep freed witness-sized buffers in the heap instead of handing them back to the kernel.
    mallopt(M_MMAP_THRESHOLD, 32 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
    mallopt(M_TOP_PAD, 64 << 20);
    try {
        return run(argc, argv);
    } catch (const LockError& e) {
        return fail(kLock, "lock", e);
    } catch (const PolicyError& e) {
        return fail(kPolicy, "policy", e);
    } catch (const ExhaustedError& e) {
        return fail(kExhausted, "exhausted", e);
    } catch (const std::exception& e) {
        return fail(kMalformed, "malformed", e);
    }
}
