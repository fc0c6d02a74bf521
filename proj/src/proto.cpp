#include "crntsim/proto.hpp"

#include <algorithm>
#include <cmath>

#include "crntsim/wire.hpp"

namespace crntsim {

const char* to_string(Compass8 c) {
  switch (c) {
    case Compass8::N: return "N";
    case Compass8::NE: return "NE";
    case Compass8::E: return "E";
    case Compass8::SE: return "SE";
    case Compass8::S: return "S";
    case Compass8::SW: return "SW";
    case Compass8::W: return "W";
    case Compass8::NW: return "NW";
  }
  return "?";
}

Heading Heading::from_degrees(double d) {
  double m = std::fmod(d, 360.0);
  if (m < 0) m += 360.0;
  if (m >= 360.0) m = 0.0;  // fmod can land exactly on 360 after the add
  return Heading{m};
}

Compass8 Heading::compass8() const {
  const int sector = static_cast<int>(std::fmod(deg + 22.5, 360.0) / 45.0);
  return static_cast<Compass8>(sector & 7);
}

Heading heading_of(double vx, double vy) {
  if (vx == 0.0 && vy == 0.0) return Heading{0.0};
  return Heading::from_degrees(std::atan2(vx, vy) * 180.0 / M_PI);
}

const SequenceList::Row* SequenceList::find(VehicleId peer) const {
  for (const auto& r : rows)
    if (r.peer == peer) return &r;
  return nullptr;
}

void SequenceList::confirm(VehicleId peer, std::uint16_t sn, SimMs now_ms) {
  std::erase_if(rows, [peer](const Row& r) { return r.peer == peer; });
  rows.insert(rows.begin(), Row{peer, sn, now_ms});
}

std::optional<double> compute_congestion(const CongestionSample& sample) {
  if (sample.counts.empty()) return std::nullopt;
  long sum = 0;
  for (const auto& [id, count] : sample.counts) sum += count;
  const double n = static_cast<double>(sample.counts.size());
  return (1.0 - static_cast<double>(sum) / (n * 10.0)) * 100.0;
}

bool should_build_nt(double cp_pct, double threshold_pct) {
  return cp_pct < threshold_pct;
}

NeighborTable build_nt(VehicleId owner, Position owner_pos,
                       std::span<const Beacon> recent_beacons, SimMs now_ms) {
  NeighborTable nt;
  nt.owner = owner;
  nt.built_at_ms = now_ms;

  std::map<VehicleId, const Beacon*> freshest;
  for (const Beacon& b : recent_beacons) {
    if (b.sender == owner) continue;
    auto [it, inserted] = freshest.try_emplace(b.sender, &b);
    if (!inserted && b.ts_ms >= it->second->ts_ms) it->second = &b;
  }

  nt.entries.reserve(freshest.size());
  for (const auto& [id, b] : freshest)
    nt.entries.push_back(NeighborEntry{id, b->pos, b->speed_mps, b->heading, b->ts_ms});

  std::sort(nt.entries.begin(), nt.entries.end(),
            [owner_pos](const NeighborEntry& a, const NeighborEntry& b) {
              const double da = distance_m(owner_pos, a.pos);
              const double db = distance_m(owner_pos, b.pos);
              if (da != db) return da < db;
              return a.id < b.id;
            });
  return nt;
}

std::optional<Pnt> make_pnt(const NeighborTable& nt, SimMs now_ms, std::uint16_t next_sn,
                            SimMs lifetime_ms, std::size_t byte_budget) {
  if (nt.empty()) return std::nullopt;
  Pnt pnt;
  pnt.ts_ms = now_ms;
  pnt.lt_ms = now_ms + lifetime_ms;
  pnt.sn = next_sn;
  const std::size_t keep = std::min(nt.entries.size(), pnt_entry_capacity(byte_budget));
  pnt.entries.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const NeighborEntry& e = nt.entries[i];
    pnt.entries.push_back(PntEntry{e.id, e.pos, e.speed_mps, e.heading});
  }
  return pnt;
}

bool sn_newer(std::uint16_t incoming, std::uint16_t stored, unsigned bits) {
  const std::uint32_t mask = (bits >= 32) ? 0xffffffffu : ((1u << bits) - 1u);
  const std::uint32_t diff = (static_cast<std::uint32_t>(incoming) - stored) & mask;
  return diff != 0 && diff < (mask / 2 + 1);
}

SeqCheck check_sequence(const SequenceList& sl, VehicleId peer, std::uint16_t sn) {
  const auto* row = sl.find(peer);
  if (row == nullptr) return SeqCheck::Fresh;
  return sn_newer(sn, row->sn) ? SeqCheck::Fresh : SeqCheck::Stale;
}

const char* to_string(AcceptResult r) {
  switch (r) {
    case AcceptResult::Merged: return "Merged";
    case AcceptResult::RejectedStaleSn: return "RejectedStaleSn";
    case AcceptResult::RejectedExpired: return "RejectedExpired";
    case AcceptResult::NoPnt: return "NoPnt";
  }
  return "?";
}

namespace {

// Freshest wins; equal stamps go to the higher reporting peer.
bool supersedes(SimMs cand_update, VehicleId cand_reporter, const CrntEntry& cur) {
  if (cand_update != cur.entry.last_update_ms) return cand_update > cur.entry.last_update_ms;
  return cand_reporter > cur.reported_by;
}

}  // namespace

AcceptResult accept_pnt(Crnt& crnt, SequenceList& sl, const Beacon& beacon, SimMs now_ms,
                        Position owner_pos) {
  if (!beacon.pnt.has_value()) return AcceptResult::NoPnt;
  const Pnt& pnt = *beacon.pnt;
  if (check_sequence(sl, beacon.sender, pnt.sn) == SeqCheck::Stale)
    return AcceptResult::RejectedStaleSn;
  if (now_ms > pnt.lt_ms) return AcceptResult::RejectedExpired;

  for (const PntEntry& we : pnt.entries) {
    if (we.id == crnt.owner) continue;
    NeighborEntry cand{we.id, we.pos, we.speed_mps, we.heading, pnt.ts_ms};
    auto it = crnt.entries.find(we.id);
    if (it != crnt.entries.end() && !supersedes(cand.last_update_ms, beacon.sender, it->second))
      continue;
    CrntEntry stored{cand, beacon.sender, distance_m(owner_pos, we.pos)};
    if (it != crnt.entries.end())
      it->second = stored;
    else
      crnt.entries.emplace(we.id, stored);
  }
  sl.confirm(beacon.sender, pnt.sn, now_ms);
  crnt.last_refresh_ms = now_ms;
  return AcceptResult::Merged;
}

void merge_direct(Crnt& crnt, const Beacon& beacon, double dist_at_rx_m) {
  if (beacon.sender == crnt.owner) return;
  NeighborEntry cand{beacon.sender, beacon.pos, beacon.speed_mps, beacon.heading, beacon.ts_ms};
  auto it = crnt.entries.find(beacon.sender);
  if (it != crnt.entries.end() && !supersedes(cand.last_update_ms, beacon.sender, it->second))
    return;
  CrntEntry stored{cand, beacon.sender, dist_at_rx_m};
  if (it != crnt.entries.end())
    it->second = stored;
  else
    crnt.entries.emplace(beacon.sender, stored);
}

bool should_inspect(VehicleId peer, SimMs now_ms,
                    const std::map<VehicleId, SimMs>& last_pnt_inspect) {
  auto it = last_pnt_inspect.find(peer);
  if (it == last_pnt_inspect.end()) return true;
  return now_ms - it->second >= 99;
}

void purge_stale(Crnt& crnt, SimMs now_ms, SimMs horizon_ms) {
  std::erase_if(crnt.entries, [&](const auto& kv) {
    return now_ms - kv.second.entry.last_update_ms > horizon_ms;
  });
}

}  // namespace crntsim
