#pragma once

// Declarative horseshoe model: one direction of an open ring, from the head
// terminal through a line of add/drop nodes to the tail terminal.
//
// Node ids: head = 0, add/drop nodes = 1..n, tail = n + 1. Span i (0-based)
// connects node i to node i + 1. Slots are 1-based, ascending in frequency.

#include <optional>
#include <string>
#include <vector>

#include "wbnet/components.hpp"

namespace wbnet {

struct ChannelPlan {
  int n_slots = 96;
  double f_start_hz = 191.55e12;
  double spacing_hz = 50e9;

  [[nodiscard]] double frequency_hz(int slot) const {
    return f_start_hz + (slot - 1) * spacing_hz;
  }
  [[nodiscard]] bool contains(int slot) const { return slot >= 1 && slot <= n_slots; }
};

enum class NodeKind { Terminal, AddDrop };

struct AddSpec {
  int slot = 1;
  TransmitterParams tx;
};

struct NodeSpec {
  NodeKind kind = NodeKind::AddDrop;
  std::string name;
  /// Booster at the head, pre-amplifier elsewhere.
  std::optional<EdfaParams> amplifier;
  /// Head only: N:1 transmitter coupler. ways = 0 means one port per add.
  SplitterParams terminal_coupler{0, 0.0};
  std::optional<CouplerParams> drop_coupler;
  SplitterParams drop_splitter{1, 0.0};
  std::optional<WavelengthBlockerParams> wb;
  std::optional<CouplerParams> add_coupler;
  /// K:1 combiner in front of the add coupler. ways = 0 means one port per add.
  SplitterParams add_combiner{0, 0.0};
  std::vector<AddSpec> adds;
  /// Terminated at this node: received and blocked in the express path.
  std::vector<int> drops;
  /// Received on a drop port while the channel continues (drop-and-continue).
  std::vector<int> monitors;

  [[nodiscard]] int terminal_coupler_ways() const;
  [[nodiscard]] int add_combiner_ways() const;
  [[nodiscard]] bool blocks(int slot) const;
};

struct SpanSpec {
  double length_km = 40.0;
  double attenuation_db_per_km = 0.25;
  double extra_loss_db = 0.0;

  [[nodiscard]] double loss_db() const { return length_km * attenuation_db_per_km + extra_loss_db; }
};

inline NodeSpec terminal(std::string name) {
  NodeSpec n;
  n.kind = NodeKind::Terminal;
  n.name = std::move(name);
  return n;
}

struct Topology {
  ChannelPlan plan;
  NodeSpec head = terminal("head");
  std::vector<SpanSpec> spans;
  std::vector<NodeSpec> nodes;
  NodeSpec tail = terminal("tail");
  ReceiverParams rx;
  /// Loss between every drop splitter branch and its receiver.
  double drop_path_extra_loss_db = 0.0;

  [[nodiscard]] int node_count() const { return static_cast<int>(nodes.size()) + 2; }
  [[nodiscard]] const NodeSpec& node(int id) const;
  NodeSpec& node(int id);
  /// Fibre distance from the head to node `id`.
  [[nodiscard]] double position_km(int id) const;
};

struct TopologyIssue {
  int node = -1;  // -1: not tied to a node
  int slot = 0;   // 0: not tied to a slot
  std::string message;
};

/// Structural and wavelength-assignment checks; empty result means valid.
std::vector<TopologyIssue> validate_topology(const Topology& t);

class TopologyError : public std::runtime_error {
 public:
  explicit TopologyError(std::vector<TopologyIssue> issues);
  [[nodiscard]] const std::vector<TopologyIssue>& issues() const { return issues_; }

 private:
  std::vector<TopologyIssue> issues_;
};

/// Throws TopologyError when validate_topology reports anything.
void require_valid(const Topology& t);

struct SlotOrigin {
  int node = 0;
  TransmitterParams tx;

  bool operator==(const SlotOrigin&) const = default;
};

/// Index [segment][slot - 1]. Segment i is the fibre leaving node i; a
/// back-to-back topology (no spans) has a single segment head -> tail.
using OccupancyMap = std::vector<std::vector<std::optional<SlotOrigin>>>;

OccupancyMap occupancy_map(const Topology& t);

/// Transmitter feeding `slot` as originated at node `origin`, if any.
const TransmitterParams* transmitter_for(const Topology& t, int origin, int slot);

}  // namespace wbnet
