// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/wire/frame.hpp"

#include <zlib.h>

#include <algorithm>

namespace edls::wire {

std::uint32_t crc32_of(std::span<const std::uint8_t> data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt-sized chunks; feed in slices to stay safe on huge
  // payloads.
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t chunk = std::min<std::size_t>(data.size() - pos,
                                                    1u << 30);
    crc = ::crc32(crc, data.data() + pos, static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

bool Frame::has(const std::string& tag) const {
  return std::any_of(sections.begin(), sections.end(),
                     [&](const Section& s) { return s.tag == tag; });
}

const Bytes& Frame::section(const std::string& tag) const {
  for (const auto& s : sections)
    if (s.tag == tag) return s.bytes;
  raise(Errc::bad_frame, "frame is missing a " + tag + " section");
}

std::vector<const Bytes*> Frame::sections_tagged(const std::string& tag) const {
  std::vector<const Bytes*> out;
  for (const auto& s : sections)
    if (s.tag == tag) out.push_back(&s.bytes);
  return out;
}

Bytes build_frame(const std::vector<Section>& sections) {
  Bytes payload;
  struct Entry {
    std::string tag;
    std::uint64_t offset, length;
  };
  std::vector<Entry> table;
  for (const auto& s : sections) {
    if (s.tag.size() != 4)
      raise(Errc::bad_frame, "section tag must be 4 ASCII characters");
    table.push_back({s.tag, payload.size(), s.bytes.size()});
    payload.insert(payload.end(), s.bytes.begin(), s.bytes.end());
  }

  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(kMagic), 4));
  w.u16(kVersion);
  w.u16(static_cast<std::uint16_t>(sections.size()));
  w.u64(payload.size());
  w.u32(crc32_of(payload));
  w.u32(0);  // reserved
  for (const auto& e : table) {
    w.bytes(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(e.tag.data()), 4));
    w.u64(e.offset);
    w.u64(e.length);
  }
  w.bytes(payload);
  return w.take();
}

Frame parse_frame(std::span<const std::uint8_t> data) {
  if (data.size() < 24) raise(Errc::bad_frame, "frame shorter than header");
  if (std::memcmp(data.data(), kMagic, 4) != 0)
    raise(Errc::bad_frame, "bad magic: not an EDLS frame");
  ByteReader header(data.subspan(4, 20));
  const std::uint16_t version = header.u16();
  if (version != kVersion)
    raise(Errc::version_unsupported,
          "frame version " + std::to_string(version) +
              " (this build reads version " + std::to_string(kVersion) + ")");
  const std::uint16_t count = header.u16();
  const std::uint64_t payload_len = header.u64();
  const std::uint32_t crc = header.u32();
  const std::uint32_t reserved = header.u32();
  if (reserved != 0) raise(Errc::bad_frame, "reserved field must be zero");

  const std::uint64_t table_bytes = 20ull * count;
  if (data.size() < 24 + table_bytes)
    raise(Errc::bad_frame, "truncated section table");
  const std::uint64_t expect_total = 24 + table_bytes + payload_len;
  if (data.size() != expect_total)
    raise(Errc::bad_frame, "frame length does not match header");

  const auto payload = data.subspan(24 + table_bytes, payload_len);
  if (crc32_of(payload) != crc)
    raise(Errc::checksum_mismatch, "payload checksum does not match");

  Frame frame;
  frame.version = version;
  ByteReader table(data.subspan(24, table_bytes));
  for (std::uint16_t i = 0; i < count; ++i) {
    const auto tag_bytes = table.bytes(4);
    std::string tag(tag_bytes.begin(), tag_bytes.end());
    for (char c : tag)
      if (c < 0x20 || c > 0x7e)
        raise(Errc::bad_frame, "section tag is not printable ASCII");
    const std::uint64_t offset = table.u64();
    const std::uint64_t length = table.u64();
    if (offset > payload_len || length > payload_len - offset)
      raise(Errc::bad_frame, "section exceeds the payload bounds");
    Section s;
    s.tag = std::move(tag);
    s.bytes.assign(payload.begin() + offset, payload.begin() + offset + length);
    frame.sections.push_back(std::move(s));
  }
  return frame;
}

}  // namespace edls::wire
