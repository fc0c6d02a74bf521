#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>

#include "crntsim/types.hpp"

namespace crntsim {

/// Congestion probability per the beacon-count estimator:
/// CP = (1 - sum(B) / (n * 10)) * 100, in percent.
/// Returns nullopt when the sample has no neighbors (sparse area).
std::optional<double> compute_congestion(const CongestionSample& sample);

/// Gate for building and piggybacking the NT. Open strictly below the
/// threshold; at the threshold the channel counts as congested.
bool should_build_nt(double cp_pct, double threshold_pct = 50.0);

/// Build the per-second neighbor table from the beacons received in the
/// last second. One row per distinct sender (freshest beacon wins),
/// sorted nearest-first from owner_pos; ties broken by ascending id.
/// The owner never appears in its own table.
NeighborTable build_nt(VehicleId owner, Position owner_pos,
                       std::span<const Beacon> recent_beacons, SimMs now_ms);

/// Stamp, lifetime and sequence the NT for transmission, keeping the
/// longest nearest-first prefix whose encoding fits byte_budget.
/// Returns nullopt for an empty table (plain beacon instead).
std::optional<Pnt> make_pnt(const NeighborTable& nt, SimMs now_ms, std::uint16_t next_sn,
                            SimMs lifetime_ms, std::size_t byte_budget);

/// True when `incoming` is newer than `stored` under wrapping comparison
/// at the given counter width: 0 < (incoming - stored) mod 2^bits < 2^(bits-1).
bool sn_newer(std::uint16_t incoming, std::uint16_t stored, unsigned bits = 16);

enum class SeqCheck { Fresh, Stale };

/// Fresh iff the peer was never heard or the sequence number advanced;
/// an equal sequence number is a duplicate.
SeqCheck check_sequence(const SequenceList& sl, VehicleId peer, std::uint16_t sn);

enum class AcceptResult { Merged, RejectedStaleSn, RejectedExpired, NoPnt };

const char* to_string(AcceptResult r);

/// Receive-side PNT handling: dedup against the sequence list, lifetime
/// check, then union-merge every entry into the CRNT. A merged entry
/// inherits last_update from the PNT timestamp; it replaces an existing
/// one only when fresher (ties to the higher reporting peer). Entries
/// about the owner itself are discarded. The sequence list is updated
/// only on a merge.
AcceptResult accept_pnt(Crnt& crnt, SequenceList& sl, const Beacon& beacon, SimMs now_ms,
                        Position owner_pos);

/// Learn the sender's own state from a directly received beacon.
void merge_direct(Crnt& crnt, const Beacon& beacon, double dist_at_rx_m);

/// Per-peer 99 ms inspection throttle: once a beacon from a peer carried
/// a PNT, later beacons from that peer are not tested for one for 99 ms.
bool should_inspect(VehicleId peer, SimMs now_ms,
                    const std::map<VehicleId, SimMs>& last_pnt_inspect);

/// Drop every entry older than the horizon.
void purge_stale(Crnt& crnt, SimMs now_ms, SimMs horizon_ms);

}  // namespace crntsim
