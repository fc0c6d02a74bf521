#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crntsim/types.hpp"

namespace crntsim {

// Byte layout (little-endian throughout, see docs/wire-format.md):
//   0  u8   magic 0xB7
//   1  u8   version 1
//   2  u8   flags, bit 0 = PNT present
//   3  u16  total length in bytes
//   5  u32  sender id
//   9  u64  timestamp, ms
//   17 u16  beacon interval, ms
//   19 i32  x, centimeters
//   23 i32  y, centimeters
//   27 u16  speed, cm/s
//   29 u16  heading, centidegrees [0, 36000)
// PNT section when flag bit 0 is set:
//   31 u64  PNT timestamp, ms
//   39 u64  PNT lifetime deadline, ms
//   47 u16  sequence number
//   49 u8   entry count
//   50 16*k entries: u32 id, i32 x cm, i32 y cm, u16 speed cm/s, u16 heading cdeg

inline constexpr std::uint8_t kBeaconMagic = 0xB7;
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kMaxBeaconBytes = 512;
inline constexpr std::size_t kBaseBeaconBytes = 31;
inline constexpr std::size_t kPntHeaderBytes = 19;
inline constexpr std::size_t kPntEntryBytes = 16;

/// Encoded size of a beacon without encoding it.
std::size_t encoded_size(const Beacon& b);

/// Largest entry count a PNT section can hold within byte_budget bytes.
std::size_t pnt_entry_capacity(std::size_t byte_budget);

/// Serialize. Throws std::invalid_argument when the beacon violates its
/// invariants (size cap, field ranges, lt <= ts).
std::vector<std::uint8_t> encode_beacon(const Beacon& b);

enum class DecodeError {
  None,
  Truncated,
  BadMagic,
  BadVersion,
  BadFlags,
  LengthMismatch,
  CountMismatch,
  FieldRange,
};

const char* to_string(DecodeError e);

struct DecodeResult {
  std::optional<Beacon> beacon;
  DecodeError error = DecodeError::None;

  bool ok() const { return beacon.has_value(); }
};

/// Parse arbitrary bytes. Never throws; malformed input yields an error
/// code instead of a beacon.
DecodeResult decode_beacon(std::span<const std::uint8_t> bytes);

/// Header-only test for the PNT flag, without a full decode.
bool wire_has_pnt(std::span<const std::uint8_t> bytes);

/// The beacon with position/speed/heading rounded to wire resolution
/// (cm, cm/s, centidegrees). decode(encode(b)) == wire_quantized(b) for
/// every encodable b, and the function is idempotent.
Beacon wire_quantized(const Beacon& b);

}  // namespace crntsim
