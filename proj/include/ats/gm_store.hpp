#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "ats/ats.hpp"

namespace ats {

// GM state file: header || u64 S || u32 count || records, each record ending with the
// SHA-256 chain value over (previous chain value || record body).
std::vector<uint8_t> serialize_gm_state(const Params& p, const GmState& st);
// Throws FormatError if the chain, the index sequence or the counter is inconsistent.
GmState parse_gm_state(const Params& p, std::span<const uint8_t> bytes);

// Temp file, fsync, rename, fsync of the directory. ATS_CRASH_POINT=after-temp-write
// exits the process right after the temp file is durable.
void save_gm_state(const std::filesystem::path& path, const Params& p, const GmState& st);
GmState load_gm_state(const std::filesystem::path& path, const Params& p);

// Advisory lock on "<state>.lock": exclusive for writers, shared for readers.
// Throws LockError instead of waiting.
class GmLock {
public:
    explicit GmLock(const std::filesystem::path& state_path, bool shared = false);
    ~GmLock();
    GmLock(const GmLock&) = delete;
    GmLock& operator=(const GmLock&) = delete;

private:
    int fd_ = -1;
};

std::vector<uint8_t> read_file(const std::filesystem::path& path);
// Atomic replace; mode applies to the new file.
void write_file_atomic(const std::filesystem::path& path, std::span<const uint8_t> data, unsigned mode = 0644);

}  // namespace ats
