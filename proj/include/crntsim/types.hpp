#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace crntsim {

using VehicleId = std::uint32_t;
using SimMs = std::uint64_t;  // milliseconds of simulation time
using SimUs = std::uint64_t;  // microseconds of simulation time

/// Planar scenario coordinates, meters east (x) / north (y).
struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

inline double distance_m(Position a, Position b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

enum class Compass8 : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

const char* to_string(Compass8 c);

/// Heading in degrees, [0, 360) clockwise from north.
struct Heading {
  double deg = 0.0;

  static Heading from_degrees(double d);
  /// 8-point label, 45-degree sectors centered on each compass point.
  Compass8 compass8() const;

  bool operator==(const Heading&) const = default;
};

/// Heading of the movement vector (vx east, vy north).
Heading heading_of(double vx, double vy);

/// One row of a neighbor table: a vehicle's last-known state.
struct NeighborEntry {
  VehicleId id = 0;
  Position pos;
  double speed_mps = 0.0;
  Heading heading;
  SimMs last_update_ms = 0;

  bool operator==(const NeighborEntry&) const = default;
};

/// Per-second table of direct neighbors, nearest-first.
struct NeighborTable {
  VehicleId owner = 0;
  SimMs built_at_ms = 0;
  std::vector<NeighborEntry> entries;

  bool empty() const { return entries.empty(); }
};

/// On-wire neighbor row. Carries no freshness of its own: a merged entry
/// inherits the PNT timestamp.
struct PntEntry {
  VehicleId id = 0;
  Position pos;
  double speed_mps = 0.0;
  Heading heading;

  bool operator==(const PntEntry&) const = default;
};

/// Piggybacked neighbor table: the NT stamped, lifetimed and sequenced
/// for transmission inside a beacon.
struct Pnt {
  SimMs ts_ms = 0;  // timestamp at build
  SimMs lt_ms = 0;  // expiry deadline, > ts_ms
  std::uint16_t sn = 0;
  std::vector<PntEntry> entries;  // nearest-first, possibly truncated

  bool operator==(const Pnt&) const = default;
};

/// Periodic safety message, optionally carrying a PNT.
struct Beacon {
  VehicleId sender = 0;
  SimMs ts_ms = 0;
  std::uint16_t interval_ms = 100;
  Position pos;
  double speed_mps = 0.0;
  Heading heading;
  std::optional<Pnt> pnt;

  bool operator==(const Beacon&) const = default;
};

/// Per-receiver dedup state: last PNT sequence number confirmed from each
/// peer, most recently confirmed first.
struct SequenceList {
  struct Row {
    VehicleId peer = 0;
    std::uint16_t sn = 0;
    SimMs received_at_ms = 0;
  };
  std::vector<Row> rows;

  const Row* find(VehicleId peer) const;
  /// Insert or update the peer's row and move it to the front.
  void confirm(VehicleId peer, std::uint16_t sn, SimMs now_ms);
};

/// One stored CRNT row plus bookkeeping that never goes on the wire.
struct CrntEntry {
  NeighborEntry entry;
  VehicleId reported_by = 0;  // subject itself for direct receptions
  double sensed_dist_m = 0.0;  // owner-to-subject distance when learned
};

/// Union view of the owner's own NT and every accepted PNT: the extended,
/// at-most-two-radio-hop picture of the network.
struct Crnt {
  VehicleId owner = 0;
  std::map<VehicleId, CrntEntry> entries;
  SimMs last_refresh_ms = 0;
};

/// Beacons received per neighbor over the last second, for Eq.-style
/// congestion estimation. Counts are clamped to [0, 10] by the caller.
struct CongestionSample {
  std::map<VehicleId, int> counts;

  std::size_t n() const { return counts.size(); }
};

}  // namespace crntsim
