#include "ats/gm_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "ats/codec.hpp"
#include "ats/errors.hpp"
#include "ats/hash.hpp"

namespace ats {

namespace {

constexpr int kCrashExit = 86;

Digest chain_start(const Params& p) {
    Sha256 h;
    h.update(std::string_view("ATS-GM-CHAIN"));
    h.update(p.digest());
    return h.final();
}

Digest chain_next(const Digest& prev, std::span<const uint8_t> body) {
    Sha256 h;
    h.update(prev);
    h.update(body);
    return h.final();
}

std::vector<uint8_t> record_body(const Params& p, const RegEntry& e) {
    ByteWriter w;
    w.put_u64(e.index);
    put_ring(w, e.p, p.coeff_bytes());
    w.put_u8(e.tr);
    put_escrow(w, p, e.escrow);
    return w.take();
}

[[noreturn]] void sys_fail(const std::string& what) {
    throw std::runtime_error(what + ": " + std::strerror(errno));
}

void write_all(int fd, std::span<const uint8_t> data) {
    size_t off = 0;
    while (off < data.size()) {
        ssize_t n = ::write(fd, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            sys_fail("write failed");
        }
        off += static_cast<size_t>(n);
    }
}

void fsync_dir(const std::filesystem::path& dir) {
    int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd < 0) return;
    ::fsync(fd);
    ::close(fd);
}

bool crash_requested(const char* point) {
    const char* env = std::getenv("ATS_CRASH_POINT");
    return env && std::strcmp(env, point) == 0;
}

}  // namespace

std::vector<uint8_t> serialize_gm_state(const Params& p, const GmState& st) {
    ByteWriter w;
    write_header(w, magic::kGmState, p);
    w.put_u64(st.signer.S);
    w.put_u32(static_cast<uint32_t>(st.reg.size()));
    Digest chain = chain_start(p);
    for (const auto& e : st.reg) {
        auto body = record_body(p, e);
        chain = chain_next(chain, body);
        w.put_bytes(body);
        w.put_bytes(chain);
    }
    return w.take();
}

GmState parse_gm_state(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    read_header(r, magic::kGmState, p);
    GmState st;
    st.signer.S = r.get_u64();
    uint32_t count = r.get_u32();
    Digest chain = chain_start(p);
    for (uint32_t i = 0; i < count; ++i) {
        size_t start = r.position();
        RegEntry e;
        e.index = r.get_u64();
        e.p = get_ring(r, p);
        e.tr = r.get_u8();
        e.escrow = get_escrow(r, p);
        if (e.index != i) throw FormatError("GM state record indices are not dense");
        if (e.tr > 1) throw FormatError("GM state record has tr outside {0,1}");
        chain = chain_next(chain, bytes.subspan(start, r.position() - start));
        auto stored = r.get_bytes(chain.size());
        if (!std::equal(stored.begin(), stored.end(), chain.begin())) throw FormatError("GM state hash chain broken");
        st.reg.push_back(std::move(e));
    }
    r.expect_end();
    if (st.signer.S != st.reg.size()) throw FormatError("GM state counter disagrees with the record count");
    return st;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const uint8_t> data, unsigned mode) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, mode);
    if (fd < 0) sys_fail("cannot create " + tmp.string());
    ::fchmod(fd, mode);
    try {
        write_all(fd, data);
        if (::fsync(fd) != 0) sys_fail("fsync failed");
    } catch (...) {
        ::close(fd);
        throw;
    }
    ::close(fd);
    if (crash_requested("after-temp-write")) std::_Exit(kCrashExit);
    if (::rename(tmp.c_str(), path.c_str()) != 0) sys_fail("rename failed");
    fsync_dir(path.parent_path());
}

void save_gm_state(const std::filesystem::path& path, const Params& p, const GmState& st) {
    write_file_atomic(path, serialize_gm_state(p, st), 0600);
}

GmState load_gm_state(const std::filesystem::path& path, const Params& p) {
    return parse_gm_state(p, read_file(path));
}

GmLock::GmLock(const std::filesystem::path& state_path, bool shared) {
    std::filesystem::path lock = state_path;
    lock += ".lock";
    fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT, 0600);
    if (fd_ < 0) throw LockError("cannot open lock file " + lock.string());
    if (::flock(fd_, (shared ? LOCK_SH : LOCK_EX) | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw LockError("GM state is locked by another process");
    }
}

GmLock::~GmLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

}  // namespace ats
