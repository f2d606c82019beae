#include "wbnet/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "wbnet/simd/kernels.hpp"

namespace wbnet::prop {

namespace {

const simd::KernelTable& k() { return simd::kernels(); }

std::string fmt_db(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::vector<int> observed_slots(const NodeSpec& n) {
  std::set<int> s(n.drops.begin(), n.drops.end());
  s.insert(n.monitors.begin(), n.monitors.end());
  return {s.begin(), s.end()};
}

}  // namespace

ChannelState::ChannelState(int n_slots)
    : signal(static_cast<std::size_t>(n_slots), 0.0),
      noise(static_cast<std::size_t>(n_slots), 0.0),
      active(static_cast<std::size_t>(n_slots), 0),
      origin(static_cast<std::size_t>(n_slots), -1) {}

double ChannelState::total_power() const {
  return k().sum_pair(signal.data(), noise.data(), signal.size());
}

int ChannelState::active_count() const {
  return static_cast<int>(std::count(active.begin(), active.end(), std::uint8_t{1}));
}

std::optional<double> ChannelState::osnr(int slot) const {
  if (!is_active(slot)) return std::nullopt;
  const double n = noise[slot - 1];
  if (n == 0.0) return std::numeric_limits<double>::infinity();
  return signal[slot - 1] / n;
}

std::vector<double> ChannelState::osnr_all() const {
  std::vector<double> out(signal.size());
  k().divide(signal.data(), noise.data(), out.data(), out.size());
  return out;
}

ChannelState apply_attenuation(ChannelState s, double loss_db) {
  if (loss_db < 0.0) throw std::invalid_argument("attenuation must be >= 0 dB");
  if (loss_db == 0.0) return s;
  k().scale_all(s.signal.data(), s.noise.data(), db_to_linear(-loss_db), s.signal.size());
  return s;
}

ChannelState apply_attenuation(ChannelState s, std::span<const double> loss_db) {
  if (loss_db.size() != s.signal.size()) {
    throw std::invalid_argument("per-slot loss vector does not match the channel plan");
  }
  std::vector<double> factor(loss_db.size());
  for (std::size_t i = 0; i < loss_db.size(); ++i) {
    if (loss_db[i] < 0.0) throw std::invalid_argument("attenuation must be >= 0 dB");
    factor[i] = loss_db[i] == 0.0 ? 1.0 : db_to_linear(-loss_db[i]);
  }
  k().scale_each(s.signal.data(), s.noise.data(), factor.data(), factor.size());
  return s;
}

std::vector<double> ase_unit_power(const EdfaParams& amp, const Spectrum& sp) {
  const auto& c = sp.constants;
  std::vector<double> out(static_cast<std::size_t>(sp.plan.n_slots));
  for (int slot = 1; slot <= sp.plan.n_slots; ++slot) {
    const double f = sp.plan.frequency_hz(slot);
    const double nf_db = amp.noise_figure_db + amp.nf_tilt_db_per_thz * (f - c.carrier_hz) / 1e12;
    out[slot - 1] = c.planck * f * c.reference_bandwidth_hz * db_to_linear(nf_db);
  }
  return out;
}

AmplifierOutcome apply_edfa(ChannelState s, const EdfaParams& amp, const Spectrum& sp,
                            Warnings& warnings, bool noiseless) {
  std::vector<double> ase = ase_unit_power(amp, sp);
  if (noiseless) std::fill(ase.begin(), ase.end(), 0.0);

  const double t_in = s.total_power();
  const double a = k().sum(ase.data(), ase.size());
  const double p_out = to_watts(Dbm{amp.p_out_max_dbm}).value;
  const double g_max = db_to_linear(amp.gain_max_db);
  const double target = t_in + a > 0.0 ? (p_out + a) / (t_in + a) : g_max;

  double g = amp.mode == AmplifierMode::TargetPower ? target : db_to_linear(amp.gain_db);

  if (g > g_max) {
    warnings.push_back({"gain_clamp", "required gain " + fmt_db(linear_to_db(g)) +
                                          " dB exceeds maximum " + fmt_db(amp.gain_max_db) +
                                          " dB"});
    g = g_max;
  }
  if (amp.mode == AmplifierMode::FixedGain && g > target * (1.0 + 1e-12)) {
    warnings.push_back({"output_saturated", "output limited to " + fmt_db(amp.p_out_max_dbm) +
                                                " dBm"});
    g = target;
  }
  if (g < 1.0) {
    warnings.push_back({"gain_floor", "input power above amplifier output power"});
    g = 1.0;
  }

  k().amplify(s.signal.data(), s.noise.data(), ase.data(), g, s.signal.size());
  return {std::move(s), linear_to_db(g)};
}

ChannelState apply_wb(ChannelState s, const WavelengthBlockerParams& wb, Warnings& warnings) {
  const std::size_t n = s.signal.size();
  const double il = db_to_linear(-wb.insertion_loss_db);
  const double floor = db_to_linear(-wb.max_attenuation_db);

  for (int slot : wb.blocked) {
    const std::size_t i = static_cast<std::size_t>(slot - 1);
    if (i >= n) continue;
    // Leakage of a blocked slot is crosstalk on whatever is added there later.
    const double leak = wb.isolation_db ? db_to_linear(-*wb.isolation_db) : 0.0;
    s.noise[i] = (s.signal[i] + s.noise[i]) * leak;
    s.signal[i] = 0.0;
    s.active[i] = 0;
    s.origin[i] = -1;
  }

  double weakest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (s.active[i]) weakest = std::min(weakest, s.signal[i]);
  }
  // Attenuation-only device: never raise a slot above its input level.
  double level = weakest;
  if (wb.target_dbm) {
    level = to_watts(Dbm{*wb.target_dbm}).value / il;
  }

  std::vector<double> factor(n, il);
  int capped = 0;
  int short_of_setpoint = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.active[i]) continue;
    double ratio = level / s.signal[i];
    if (ratio > 1.0) {
      ratio = 1.0;
      ++short_of_setpoint;
    }
    if (ratio < floor) {
      ratio = floor;
      ++capped;
    }
    factor[i] = il * ratio;
  }
  if (capped > 0) {
    warnings.push_back({"eq_cap", std::to_string(capped) +
                                      " slot(s) need more than the equalization range of " +
                                      fmt_db(wb.max_attenuation_db) + " dB"});
  }
  if (short_of_setpoint > 0) {
    warnings.push_back({"eq_setpoint",
                        std::to_string(short_of_setpoint) + " slot(s) below equalization set point"});
  }
  k().scale_each(s.signal.data(), s.noise.data(), factor.data(), n);
  return s;
}

namespace {

// Transmitters through a lossy combiner onto `s`, adding their broadband ASE
// to every slot. `coupling` is the linear power fraction reaching the line.
void inject(ChannelState& s, const std::vector<AddSpec>& adds, double coupling, int node_id) {
  double broadband = 0.0;
  for (const auto& a : adds) {
    const std::size_t i = static_cast<std::size_t>(a.slot - 1);
    if (s.active[i]) {
      throw TopologyError({{node_id, a.slot,
                            "wavelength collision at node " + std::to_string(node_id) + " slot " +
                                std::to_string(a.slot)}});
    }
    const double p_tx = to_watts(Dbm{a.tx.p_tx_dbm}).value;
    s.signal[i] = p_tx * coupling;
    s.active[i] = 1;
    s.origin[i] = node_id;
    broadband += p_tx / db_to_linear(a.tx.osnr_tx_db) * coupling;
  }
  if (broadband > 0.0) k().add_constant(s.noise.data(), broadband, s.noise.size());
}

}  // namespace

ChannelState apply_add(ChannelState s, const NodeSpec& node, int node_id) {
  if (!node.add_coupler) {
    if (!node.adds.empty()) {
      throw std::invalid_argument("node " + std::to_string(node_id) + " adds without add coupler");
    }
    return s;
  }
  const CouplerParams& c = *node.add_coupler;
  const double through = c.through_fraction();
  k().scale_all(s.signal.data(), s.noise.data(), through, s.signal.size());

  const double combiner = db_to_linear(-SplitterParams{node.add_combiner_ways(),
                                                       node.add_combiner.excess_loss_db}
                                            .branch_loss_db());
  inject(s, node.adds, combiner * c.tap_fraction(), node_id);
  return s;
}

ChannelState launch(const NodeSpec& head, int n_slots) {
  ChannelState s(n_slots);
  const double coupling = db_to_linear(-SplitterParams{head.terminal_coupler_ways(),
                                                       head.terminal_coupler.excess_loss_db}
                                            .branch_loss_db());
  inject(s, head.adds, coupling, 0);
  return s;
}

DropOutcome apply_drop(ChannelState s, const std::optional<CouplerParams>& coupler,
                       const SplitterParams& splitter, double extra_loss_db) {
  ChannelState dropped = s;
  if (coupler) {
    k().scale_all(dropped.signal.data(), dropped.noise.data(), coupler->tap_fraction(),
                  dropped.signal.size());
    k().scale_all(s.signal.data(), s.noise.data(), coupler->through_fraction(), s.signal.size());
  }
  dropped = apply_attenuation(std::move(dropped), splitter.branch_loss_db() + extra_loss_db);
  return {std::move(s), std::move(dropped)};
}

std::vector<RxVerdict> receiver_check(const ChannelState& s, const ReceiverParams& rx,
                                      std::span<const int> slots) {
  std::vector<RxVerdict> out;
  for (int slot : slots) {
    RxVerdict v;
    v.slot = slot;
    v.check = "per_channel_min";
    if (slot < 1 || slot > s.size() || !s.is_active(slot)) {
      v.message = "slot inactive";
    } else {
      const double p = to_dbm(Watts{s.signal[slot - 1]}).value;
      v.power_dbm = p;
      v.margin_db = p - rx.p_min_dbm;
      v.pass = *v.margin_db >= 0.0;
      v.message = v.pass ? "above sensitivity" : "below receiver sensitivity";
    }
    out.push_back(std::move(v));
  }

  RxVerdict total;
  total.check = "total_max";
  const double t = s.total_power();
  if (t > 0.0) {
    total.power_dbm = to_dbm(Watts{t}).value;
    total.margin_db = rx.p_max_dbm - *total.power_dbm;
    total.pass = *total.margin_db >= 0.0;
  } else {
    total.pass = true;
  }
  total.message = total.pass ? "total power within receiver limit" : "receiver overload";
  out.push_back(std::move(total));
  return out;
}

std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Transmit:
      return "transmit";
    case PointKind::Amplifier:
      return "amplifier";
    case PointKind::Span:
      return "span";
    case PointKind::Drop:
      return "drop";
    case PointKind::Blocker:
      return "blocker";
    case PointKind::Add:
      return "add";
    case PointKind::Receiver:
      return "receiver";
  }
  return "?";
}

const MeasurementPoint* PropagationTrace::find(std::string_view label) const {
  for (const auto& p : points) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

std::vector<const MeasurementPoint*> PropagationTrace::receiver_points() const {
  std::vector<const MeasurementPoint*> out;
  for (const auto& p : points) {
    if (p.kind == PointKind::Drop || p.kind == PointKind::Receiver) out.push_back(&p);
  }
  return out;
}

bool PropagationTrace::gain_clamped_before(std::size_t index) const {
  for (std::size_t i = 0; i <= index && i < points.size(); ++i) {
    for (const auto& w : points[i].warnings) {
      if (w.code == "gain_clamp") return true;
    }
  }
  return false;
}

namespace {

class Folder {
 public:
  Folder(const Topology& t, const EngineOptions& opt)
      : t_(t), opt_(opt), sp_{t.plan, opt.constants} {}

  PropagationTrace run() {
    state_ = launch(t_.head, t_.plan.n_slots);
    record("head/tx", PointKind::Transmit, 0);

    if (t_.head.amplifier) amplify(t_.head, 0, "booster", opt_.booster_noise_in_tx_osnr);

    if (t_.spans.empty()) {
      terminal(t_.node_count() - 1);
      return std::move(trace_);
    }
    for (std::size_t i = 0; i < t_.spans.size(); ++i) {
      const int next = static_cast<int>(i) + 1;
      state_ = apply_attenuation(std::move(state_), t_.spans[i].loss_db());
      record("span" + std::to_string(next), PointKind::Span, next);
      if (next == t_.node_count() - 1) {
        terminal(next);
      } else {
        add_drop(next);
      }
    }
    return std::move(trace_);
  }

 private:
  std::string prefix(int id) const {
    const NodeSpec& n = t_.node(id);
    return n.name.empty() ? "node" + std::to_string(id) : n.name;
  }

  MeasurementPoint& record(std::string label, PointKind kind, int id) {
    MeasurementPoint p;
    p.label = std::move(label);
    p.kind = kind;
    p.node = id;
    p.position_km = t_.position_km(id);
    p.state = state_;
    trace_.points.push_back(std::move(p));
    return trace_.points.back();
  }

  void amplify(const NodeSpec& n, int id, const char* what, bool noiseless) {
    Warnings w;
    auto out = apply_edfa(std::move(state_), *n.amplifier, sp_, w, noiseless);
    state_ = std::move(out.state);
    auto& p = record(prefix(id) + "/" + what, PointKind::Amplifier, id);
    p.gain_db = out.gain_db;
    p.warnings = std::move(w);
  }

  void receivers(ChannelState dropped, PointKind kind, int id, std::vector<int> slots,
                 const char* what) {
    ChannelState keep = std::move(state_);
    state_ = std::move(dropped);
    auto& p = record(prefix(id) + "/" + what, kind, id);
    p.observed = std::move(slots);
    p.rx = receiver_check(p.state, t_.rx, p.observed);
    state_ = std::move(keep);
  }

  void add_drop(int id) {
    const NodeSpec& n = t_.node(id);
    if (n.amplifier) amplify(n, id, "amp", false);

    if (n.drop_coupler) {
      auto d = apply_drop(std::move(state_), n.drop_coupler, n.drop_splitter,
                          t_.drop_path_extra_loss_db);
      state_ = std::move(d.through);
      receivers(std::move(d.dropped), PointKind::Drop, id, observed_slots(n), "drop");
    }
    if (n.wb) {
      Warnings w;
      state_ = apply_wb(std::move(state_), *n.wb, w);
      record(prefix(id) + "/wb", PointKind::Blocker, id).warnings = std::move(w);
    }
    if (n.add_coupler) {
      state_ = apply_add(std::move(state_), n, id);
      record(prefix(id) + "/add", PointKind::Add, id);
    }
  }

  void terminal(int id) {
    const NodeSpec& n = t_.node(id);
    if (n.amplifier) amplify(n, id, "amp", false);
    auto d = apply_drop(std::move(state_), n.drop_coupler, n.drop_splitter,
                        t_.drop_path_extra_loss_db);
    state_ = std::move(d.through);
    std::vector<int> slots = observed_slots(n);
    if (slots.empty()) {
      for (int s = 1; s <= d.dropped.size(); ++s) {
        if (d.dropped.is_active(s)) slots.push_back(s);
      }
    }
    receivers(std::move(d.dropped), PointKind::Receiver, id, std::move(slots), "rx");
  }

  const Topology& t_;
  const EngineOptions& opt_;
  Spectrum sp_;
  ChannelState state_;
  PropagationTrace trace_;
};

}  // namespace

PropagationTrace propagate(const Topology& t, const EngineOptions& opt) {
  require_valid(t);
  return Folder(t, opt).run();
}

}  // namespace wbnet::prop
