#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ats/ats.hpp"

namespace ats {

// Every artifact file: magic(4) || u16 version || params digest(32) || payload.
namespace magic {
inline constexpr std::string_view kKey = "ATSK";
inline constexpr std::string_view kVerifKey = "ATSV";
inline constexpr std::string_view kCert = "ATSC";
inline constexpr std::string_view kSignature = "ATSS";
inline constexpr std::string_view kOpen = "ATSO";
inline constexpr std::string_view kGroupKey = "ATSG";
inline constexpr std::string_view kPublicParams = "ATSQ";
inline constexpr std::string_view kGmState = "ATSM";
}  // namespace magic

constexpr uint16_t kFormatVersion = 1;
constexpr size_t kFileHeaderBytes = 4 + 2 + 32;

// First payload byte of an ATSK file.
enum class KeyKind : uint8_t { Upk = 1, Usk = 2, Ik = 3, Ok = 4, Escrow = 5 };

void write_header(ByteWriter& w, std::string_view mg, const Params& p);
// Checks magic, version and that the digest matches p.
void read_header(ByteReader& r, std::string_view mg, const Params& p);
// Magic of a buffer, or "" when too short.
std::string_view peek_magic(std::span<const uint8_t> bytes);

void put_params(ByteWriter& w, const Params& p);
// Throws FormatError on malformed bytes, ParamError on invalid parameters.
Params get_params(ByteReader& r);

std::vector<uint8_t> serialize_pp(const PublicParams& pp);
PublicParams parse_pp(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_gpk(const GroupPublicKey& gpk);
GroupPublicKey parse_gpk(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_vk(const Params& p, const DmVerifKey& vk);
DmVerifKey parse_vk(const Params& p, std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_cert(const Params& p, const Certificate& c);
Certificate parse_cert(const Params& p, std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_signature(const Params& p, const GroupSignature& s);
GroupSignature parse_signature(const Params& p, std::span<const uint8_t> bytes);

// p' = bottom is encoded as flag 0 with nothing after it.
std::vector<uint8_t> serialize_open(const Params& p, const OpenResult& o);
OpenResult parse_open(const Params& p, std::span<const uint8_t> bytes);

KeyKind peek_key_kind(std::span<const uint8_t> bytes);
std::vector<uint8_t> serialize_upk(const Params& p, const RingElem& upk);
RingElem parse_upk(const Params& p, std::span<const uint8_t> bytes);
std::vector<uint8_t> serialize_usk(const Params& p, const RingVec& usk);
RingVec parse_usk(const Params& p, std::span<const uint8_t> bytes);
std::vector<uint8_t> serialize_ik(const Params& p, const IssueKey& ik);
IssueKey parse_ik(const Params& p, std::span<const uint8_t> bytes);
std::vector<uint8_t> serialize_ok(const Params& p, const OpeningKey& ok);
OpeningKey parse_ok(const Params& p, std::span<const uint8_t> bytes);
std::vector<uint8_t> serialize_escrow(const Params& p, const EscrowWitness& w);
EscrowWitness parse_escrow(const Params& p, std::span<const uint8_t> bytes);

// Payload pieces shared with the GM state file.
void put_escrow(ByteWriter& w, const Params& p, const EscrowWitness& e);
EscrowWitness get_escrow(ByteReader& r, const Params& p);

}  // namespace ats
