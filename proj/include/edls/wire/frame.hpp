// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_WIRE_FRAME_HPP
#define EDLS_WIRE_FRAME_HPP

#include <string>
#include <vector>

#include "edls/wire/bytes.hpp"

namespace edls::wire {

// Container format. Layout, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "EDLS"
//   4       2     version (currently 1)
//   6       2     section count
//   8       8     payload length in bytes
//   16      4     CRC-32 of the payload
//   20      4     reserved, must be zero
//   24      20*n  section table: tag (4 ASCII bytes),
//                 offset into payload (u64), length (u64)
//   24+20n  ...   payload
//
// Tags may repeat (a record carries one CTXT section per ciphertext).
// Readers must skip sections with tags they do not understand; a version
// bump is the only breaking change.
inline constexpr char kMagic[4] = {'E', 'D', 'L', 'S'};
inline constexpr std::uint16_t kVersion = 1;

namespace tag {
inline const std::string params = "HPRM";       // parameter descriptor, JSON
inline const std::string meta = "META";         // record metadata, JSON
inline const std::string public_key = "PUBK";
inline const std::string relin_key = "RLNK";
inline const std::string secret_key = "SECK";   // local storage only
inline const std::string ciphertext = "CTXT";
}  // namespace tag

struct Section {
  std::string tag;  // exactly 4 ASCII characters
  Bytes bytes;
};

struct Frame {
  std::uint16_t version = kVersion;
  std::vector<Section> sections;

  bool has(const std::string& tag) const;
  // First section with the tag; throws Errc::bad_frame if absent.
  const Bytes& section(const std::string& tag) const;
  std::vector<const Bytes*> sections_tagged(const std::string& tag) const;
};

// Serializes sections into the container, computing length and checksum.
Bytes build_frame(const std::vector<Section>& sections);

// Parses and fully validates a container: magic, version, bounds and
// checksum. Unknown tags are preserved for the caller to ignore.
// Throws Errc::bad_frame / Errc::version_unsupported /
// Errc::checksum_mismatch.
Frame parse_frame(std::span<const std::uint8_t> data);

std::uint32_t crc32_of(std::span<const std::uint8_t> data);

}  // namespace edls::wire

#endif  // EDLS_WIRE_FRAME_HPP
