#include "wbnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wbnet {

namespace {

std::string join(const std::vector<TopologyIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "; ";
    out += i.message;
  }
  return out;
}

std::string at(int node, int slot) {
  return "at node " + std::to_string(node) + " slot " + std::to_string(slot);
}

class Checker {
 public:
  explicit Checker(const Topology& t) : t_(t) {}

  std::vector<TopologyIssue> run() {
    check_plan();
    check_structure();
    for (int id = 0; id < t_.node_count(); ++id) check_components(id);
    for (std::size_t i = 0; i < t_.spans.size(); ++i) check_span(i);
    for (const auto& v : violations(t_.rx)) add(-1, 0, "receiver " + v.field + ": " + v.message);
    if (!std::isfinite(t_.drop_path_extra_loss_db) || t_.drop_path_extra_loss_db < 0.0) {
      add(-1, 0, "drop path extra loss must be >= 0 dB");
    }
    if (issues_.empty()) check_wavelengths();
    return std::move(issues_);
  }

 private:
  void add(int node, int slot, std::string msg) { issues_.push_back({node, slot, std::move(msg)}); }

  void check_plan() {
    const auto& p = t_.plan;
    if (p.n_slots < 1) add(-1, 0, "channel plan needs at least one slot");
    if (!(p.spacing_hz > 0.0)) add(-1, 0, "channel spacing must be > 0");
    if (!(p.f_start_hz > 0.0)) add(-1, 0, "start frequency must be > 0");
  }

  void check_structure() {
    const bool back_to_back = t_.spans.empty() && t_.nodes.empty();
    if (!back_to_back && t_.spans.size() != t_.nodes.size() + 1) {
      add(-1, 0, "spans and nodes must alternate: expected " +
                     std::to_string(t_.nodes.size() + 1) + " spans, got " +
                     std::to_string(t_.spans.size()));
    }
    if (t_.head.kind != NodeKind::Terminal) add(0, 0, "head must be a terminal node");
    if (t_.tail.kind != NodeKind::Terminal) {
      add(t_.node_count() - 1, 0, "tail must be a terminal node");
    }
    for (std::size_t i = 0; i < t_.nodes.size(); ++i) {
      if (t_.nodes[i].kind != NodeKind::AddDrop) {
        add(static_cast<int>(i) + 1, 0, "interior node must be an add/drop node");
      }
    }
  }

  void component(int id, const std::string& what, const std::vector<Violation>& v) {
    for (const auto& x : v) {
      add(id, 0, "node " + std::to_string(id) + " " + what + " " + x.field + ": " + x.message);
    }
  }

  void check_slots(int id, const std::vector<int>& slots, const char* what) {
    std::set<int> seen;
    for (int s : slots) {
      if (!t_.plan.contains(s)) {
        add(id, s, std::string(what) + " slot outside channel plan " + at(id, s));
      } else if (!seen.insert(s).second) {
        add(id, s, std::string("duplicate ") + what + " " + at(id, s));
      }
    }
  }

  void check_components(int id) {
    const NodeSpec& n = t_.node(id);
    const bool head = id == 0;
    const bool tail = id == t_.node_count() - 1;
    if (n.amplifier) component(id, "amplifier", violations(*n.amplifier));
    if (n.drop_coupler) component(id, "drop coupler", violations(*n.drop_coupler));
    if (n.add_coupler) component(id, "add coupler", violations(*n.add_coupler));
    if (n.wb) component(id, "blocker", violations(*n.wb, t_.plan.n_slots));
    component(id, "drop splitter", violations(n.drop_splitter));
    if (n.terminal_coupler.ways < 0 || n.terminal_coupler.excess_loss_db < 0.0) {
      add(id, 0, "node " + std::to_string(id) + " terminal coupler: invalid parameters");
    }
    if (n.add_combiner.ways < 0 || n.add_combiner.excess_loss_db < 0.0) {
      add(id, 0, "node " + std::to_string(id) + " add combiner: invalid parameters");
    }
    for (const auto& a : n.adds) component(id, "transmitter", violations(a.tx));

    std::vector<int> add_slots;
    for (const auto& a : n.adds) add_slots.push_back(a.slot);
    check_slots(id, add_slots, "add");
    check_slots(id, n.drops, "drop");
    check_slots(id, n.monitors, "monitor");

    const auto ids = std::to_string(id);
    if (head && (!n.drops.empty() || !n.monitors.empty())) add(id, 0, "head node cannot drop");
    if (tail && !n.adds.empty()) add(id, 0, "tail node cannot add");
    if (head && n.terminal_coupler.ways > 0 &&
        n.terminal_coupler.ways < static_cast<int>(n.adds.size())) {
      add(id, 0, "terminal coupler has fewer ports than transmitters at node " + ids);
    }
    if (!head && !tail) {
      if (!n.adds.empty() && !n.add_coupler) add(id, 0, "adds without add coupler at node " + ids);
      if ((!n.drops.empty() || !n.monitors.empty()) && !n.drop_coupler) {
        add(id, 0, "drops without drop coupler at node " + ids);
      }
      if (n.add_combiner.ways > 0 && n.add_combiner.ways < static_cast<int>(n.adds.size())) {
        add(id, 0, "add combiner has fewer ports than transmitters at node " + ids);
      }
      for (int s : n.drops) {
        if (!n.blocks(s)) add(id, s, "drop without block " + at(id, s));
      }
    }
  }

  void check_span(std::size_t i) {
    const SpanSpec& s = t_.spans[i];
    const auto name = "span " + std::to_string(i + 1);
    if (!std::isfinite(s.length_km) || s.length_km < 0.0) add(-1, 0, name + ": length must be >= 0");
    if (!std::isfinite(s.attenuation_db_per_km) || !(s.attenuation_db_per_km > 0.0)) {
      add(-1, 0, name + ": attenuation must be > 0");
    }
    if (!std::isfinite(s.extra_loss_db) || s.extra_loss_db < 0.0) {
      add(-1, 0, name + ": extra loss must be >= 0");
    }
  }

  void check_wavelengths() {
    std::vector<bool> lit(static_cast<std::size_t>(t_.plan.n_slots) + 1, false);
    for (const auto& a : t_.head.adds) lit[a.slot] = true;

    for (int id = 1; id < t_.node_count(); ++id) {
      const NodeSpec& n = t_.node(id);
      for (int s : n.drops) {
        if (!lit[s]) add(id, s, "drop of dark slot " + at(id, s));
      }
      for (int s : n.monitors) {
        if (!lit[s]) add(id, s, "monitor of dark slot " + at(id, s));
      }
      for (int s = 1; s <= t_.plan.n_slots; ++s) {
        if (n.blocks(s)) lit[s] = false;
      }
      for (const auto& a : n.adds) {
        if (lit[a.slot]) {
          add(id, a.slot, "wavelength collision " + at(id, a.slot));
        }
        lit[a.slot] = true;
      }
    }
  }

  const Topology& t_;
  std::vector<TopologyIssue> issues_;
};

}  // namespace

int NodeSpec::terminal_coupler_ways() const {
  return terminal_coupler.ways > 0 ? terminal_coupler.ways
                                   : std::max<int>(1, static_cast<int>(adds.size()));
}

int NodeSpec::add_combiner_ways() const {
  return add_combiner.ways > 0 ? add_combiner.ways : std::max<int>(1, static_cast<int>(adds.size()));
}

bool NodeSpec::blocks(int slot) const { return wb && wb->blocked.count(slot) > 0; }

const NodeSpec& Topology::node(int id) const {
  if (id == 0) return head;
  if (id == node_count() - 1) return tail;
  if (id < 0 || id > node_count() - 1) throw std::out_of_range("node id out of range");
  return nodes[static_cast<std::size_t>(id - 1)];
}

NodeSpec& Topology::node(int id) {
  return const_cast<NodeSpec&>(static_cast<const Topology&>(*this).node(id));
}

double Topology::position_km(int id) const {
  double km = 0.0;
  for (int i = 0; i < id && i < static_cast<int>(spans.size()); ++i) km += spans[i].length_km;
  return km;
}

TopologyError::TopologyError(std::vector<TopologyIssue> issues)
    : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

std::vector<TopologyIssue> validate_topology(const Topology& t) { return Checker(t).run(); }

void require_valid(const Topology& t) {
  auto issues = validate_topology(t);
  if (!issues.empty()) throw TopologyError(std::move(issues));
}

OccupancyMap occupancy_map(const Topology& t) {
  const auto n = static_cast<std::size_t>(t.plan.n_slots);
  std::vector<std::optional<SlotOrigin>> current(n);
  for (const auto& a : t.head.adds) current[a.slot - 1] = SlotOrigin{0, a.tx};

  const std::size_t segments = std::max<std::size_t>(1, t.spans.size());
  OccupancyMap map;
  map.reserve(segments);
  map.push_back(current);
  for (std::size_t seg = 1; seg < segments; ++seg) {
    const int id = static_cast<int>(seg);
    const NodeSpec& node = t.node(id);
    for (int s = 1; s <= t.plan.n_slots; ++s) {
      if (node.blocks(s)) current[s - 1].reset();
    }
    for (const auto& a : node.adds) current[a.slot - 1] = SlotOrigin{id, a.tx};
    map.push_back(current);
  }
  return map;
}

const TransmitterParams* transmitter_for(const Topology& t, int origin, int slot) {
  if (origin < 0 || origin >= t.node_count()) return nullptr;
  for (const auto& a : t.node(origin).adds) {
    if (a.slot == slot) return &a.tx;
  }
  return nullptr;
}

}  // namespace wbnet
