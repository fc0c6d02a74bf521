#include "crntsim/wire.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace crntsim {

namespace {

constexpr std::uint8_t kFlagPnt = 0x01;

struct Writer {
  std::vector<std::uint8_t>& out;

  void u8(std::uint8_t v) { out.push_back(v); }
  void u16(std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
};

struct Reader {
  std::span<const std::uint8_t> in;
  std::size_t pos = 0;

  bool need(std::size_t n) const { return pos + n <= in.size(); }
  std::uint8_t u8() { return in[pos++]; }
  std::uint16_t u16() {
    std::uint16_t v = static_cast<std::uint16_t>(in[pos] | (in[pos + 1] << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
};

std::int32_t to_cm(double meters) {
  const double cm = std::round(meters * 100.0);
  if (!(cm >= std::numeric_limits<std::int32_t>::min() &&
        cm <= std::numeric_limits<std::int32_t>::max()))
    throw std::invalid_argument("position out of wire range");
  return static_cast<std::int32_t>(cm);
}

std::uint16_t to_cms(double mps) {
  const double cms = std::round(mps * 100.0);
  if (!(cms >= 0.0 && cms <= 65535.0)) throw std::invalid_argument("speed out of wire range");
  return static_cast<std::uint16_t>(cms);
}

std::uint16_t to_cdeg(double deg) {
  long v = std::lround(deg * 100.0) % 36000;
  if (v < 0) v += 36000;
  return static_cast<std::uint16_t>(v);
}

void encode_entry_fields(Writer& w, VehicleId id, Position pos, double speed, Heading heading) {
  w.u32(id);
  w.i32(to_cm(pos.x));
  w.i32(to_cm(pos.y));
  w.u16(to_cms(speed));
  w.u16(to_cdeg(heading.deg));
}

}  // namespace

std::size_t encoded_size(const Beacon& b) {
  std::size_t n = kBaseBeaconBytes;
  if (b.pnt) n += kPntHeaderBytes + kPntEntryBytes * b.pnt->entries.size();
  return n;
}

std::size_t pnt_entry_capacity(std::size_t byte_budget) {
  if (byte_budget < kPntHeaderBytes) return 0;
  return std::min<std::size_t>((byte_budget - kPntHeaderBytes) / kPntEntryBytes, 255);
}

std::vector<std::uint8_t> encode_beacon(const Beacon& b) {
  if (b.interval_ms == 0) throw std::invalid_argument("beacon interval must be > 0");
  const std::size_t total = encoded_size(b);
  if (total > kMaxBeaconBytes) throw std::invalid_argument("beacon exceeds 512-byte cap");
  if (b.pnt) {
    if (b.pnt->lt_ms <= b.pnt->ts_ms) throw std::invalid_argument("PNT lifetime must exceed ts");
    if (b.pnt->entries.size() > 255) throw std::invalid_argument("PNT entry count exceeds u8");
  }

  std::vector<std::uint8_t> bytes;
  bytes.reserve(total);
  Writer w{bytes};
  w.u8(kBeaconMagic);
  w.u8(kWireVersion);
  w.u8(b.pnt ? kFlagPnt : 0);
  w.u16(static_cast<std::uint16_t>(total));
  w.u32(b.sender);
  w.u64(b.ts_ms);
  w.u16(b.interval_ms);
  w.i32(to_cm(b.pos.x));
  w.i32(to_cm(b.pos.y));
  w.u16(to_cms(b.speed_mps));
  w.u16(to_cdeg(b.heading.deg));
  if (b.pnt) {
    w.u64(b.pnt->ts_ms);
    w.u64(b.pnt->lt_ms);
    w.u16(b.pnt->sn);
    w.u8(static_cast<std::uint8_t>(b.pnt->entries.size()));
    for (const PntEntry& e : b.pnt->entries)
      encode_entry_fields(w, e.id, e.pos, e.speed_mps, e.heading);
  }
  return bytes;
}

const char* to_string(DecodeError e) {
  switch (e) {
    case DecodeError::None: return "None";
    case DecodeError::Truncated: return "Truncated";
    case DecodeError::BadMagic: return "BadMagic";
    case DecodeError::BadVersion: return "BadVersion";
    case DecodeError::BadFlags: return "BadFlags";
    case DecodeError::LengthMismatch: return "LengthMismatch";
    case DecodeError::CountMismatch: return "CountMismatch";
    case DecodeError::FieldRange: return "FieldRange";
  }
  return "?";
}

DecodeResult decode_beacon(std::span<const std::uint8_t> bytes) {
  Reader r{bytes};
  if (!r.need(5)) return {std::nullopt, DecodeError::Truncated};
  if (r.u8() != kBeaconMagic) return {std::nullopt, DecodeError::BadMagic};
  if (r.u8() != kWireVersion) return {std::nullopt, DecodeError::BadVersion};
  const std::uint8_t flags = r.u8();
  if ((flags & ~kFlagPnt) != 0) return {std::nullopt, DecodeError::BadFlags};
  const std::uint16_t length = r.u16();
  if (length != bytes.size()) return {std::nullopt, DecodeError::LengthMismatch};
  if (length > kMaxBeaconBytes) return {std::nullopt, DecodeError::LengthMismatch};
  const bool has_pnt = (flags & kFlagPnt) != 0;
  if (!has_pnt && length != kBaseBeaconBytes) return {std::nullopt, DecodeError::LengthMismatch};
  if (has_pnt && length < kBaseBeaconBytes + kPntHeaderBytes)
    return {std::nullopt, DecodeError::Truncated};

  Beacon b;
  b.sender = r.u32();
  b.ts_ms = r.u64();
  b.interval_ms = r.u16();
  if (b.interval_ms == 0) return {std::nullopt, DecodeError::FieldRange};
  b.pos.x = r.i32() / 100.0;
  b.pos.y = r.i32() / 100.0;
  b.speed_mps = r.u16() / 100.0;
  const std::uint16_t hdg = r.u16();
  if (hdg >= 36000) return {std::nullopt, DecodeError::FieldRange};
  b.heading = Heading{hdg / 100.0};

  if (has_pnt) {
    Pnt pnt;
    pnt.ts_ms = r.u64();
    pnt.lt_ms = r.u64();
    pnt.sn = r.u16();
    const std::uint8_t count = r.u8();
    if (length != kBaseBeaconBytes + kPntHeaderBytes + kPntEntryBytes * count)
      return {std::nullopt, DecodeError::CountMismatch};
    if (pnt.lt_ms <= pnt.ts_ms) return {std::nullopt, DecodeError::FieldRange};
    pnt.entries.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
      PntEntry e;
      e.id = r.u32();
      e.pos.x = r.i32() / 100.0;
      e.pos.y = r.i32() / 100.0;
      e.speed_mps = r.u16() / 100.0;
      const std::uint16_t eh = r.u16();
      if (eh >= 36000) return {std::nullopt, DecodeError::FieldRange};
      e.heading = Heading{eh / 100.0};
      pnt.entries.push_back(e);
    }
    b.pnt = std::move(pnt);
  }
  return {b, DecodeError::None};
}

bool wire_has_pnt(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 3 && bytes[0] == kBeaconMagic && (bytes[2] & kFlagPnt) != 0;
}

Beacon wire_quantized(const Beacon& b) {
  Beacon q = b;
  q.pos.x = to_cm(b.pos.x) / 100.0;
  q.pos.y = to_cm(b.pos.y) / 100.0;
  q.speed_mps = to_cms(b.speed_mps) / 100.0;
  q.heading = Heading{to_cdeg(b.heading.deg) / 100.0};
  if (q.pnt) {
    for (PntEntry& e : q.pnt->entries) {
      e.pos.x = to_cm(e.pos.x) / 100.0;
      e.pos.y = to_cm(e.pos.y) / 100.0;
      e.speed_mps = to_cms(e.speed_mps) / 100.0;
      e.heading = Heading{to_cdeg(e.heading.deg) / 100.0};
    }
  }
  return q;
}

}  // namespace crntsim
