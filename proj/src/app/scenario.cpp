#include "wbnet/app/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "wbnet/ber.hpp"

namespace wbnet::app {

std::string Observation::verdict() const {
  if (failures.empty()) return "ok";
  std::string out = "fail:";
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i) out += '+';
    out += failures[i];
  }
  return out;
}

bool SimulationResult::all_pass() const {
  return std::all_of(observations.begin(), observations.end(),
                     [](const Observation& o) { return o.pass(); });
}

SimulationResult simulate(const ScenarioConfig& cfg) {
  SimulationResult res;
  res.trace = prop::propagate(cfg.topology, cfg.engine);

  const auto& pts = res.trace.points;
  for (std::size_t idx = 0; idx < pts.size(); ++idx) {
    const auto& p = pts[idx];
    if (p.kind != prop::PointKind::Drop && p.kind != prop::PointKind::Receiver) continue;
    const bool clamped = res.trace.gain_clamped_before(idx);

    const prop::RxVerdict* total = nullptr;
    for (const auto& v : p.rx) {
      if (v.check == "total_max") total = &v;
    }

    for (int slot : p.observed) {
      if (!cfg.sim.observe.empty() &&
          std::find(cfg.sim.observe.begin(), cfg.sim.observe.end(), slot) == cfg.sim.observe.end()) {
        continue;
      }
      Observation o;
      o.point = p.label;
      o.node = p.node;
      o.distance_km = p.position_km;
      o.slot = slot;

      const auto& st = p.state;
      if (!st.is_active(slot)) {
        o.failures.push_back("inactive");
      } else {
        o.signal_dbm = to_dbm(Watts{st.signal[slot - 1]}).value;
        const double osnr = *st.osnr(slot);
        if (std::isfinite(osnr)) o.osnr_db = linear_to_db(osnr);
        if (const auto* tx = transmitter_for(cfg.topology, st.origin[slot - 1], slot)) {
          o.format = tx->format;
          const double snr = std::isfinite(osnr)
                                 ? ber::snr_from_osnr(OsnrLinear{osnr}, tx->symbol_rate_baud,
                                                      cfg.engine.constants.reference_bandwidth_hz)
                                 : std::numeric_limits<double>::infinity();
          o.ber = std::isfinite(snr) ? ber::ber_estimate(snr, tx->format, cfg.sim.ber_penalty_db) : 0.0;
          const auto fec = ber::fec_verdict(*o.ber, cfg.sim.fec);
          o.fec_margin_db = fec.margin_db;
          if (!fec.pass) o.failures.push_back("fec");
        }
        for (const auto& v : p.rx) {
          if (v.slot == slot && !v.pass) o.failures.push_back("rx_min");
        }
      }
      if (total && !total->pass) o.failures.push_back("rx_max");
      if (clamped) o.failures.push_back("gain_clamp");
      res.observations.push_back(std::move(o));
    }
  }
  return res;
}

namespace {

using Setter = void (*)(ScenarioConfig&, double);

struct Axis {
  const char* name;
  Setter set;
};

void for_each_amp(ScenarioConfig& c, auto f) {
  for (int id = 0; id < c.topology.node_count(); ++id) {
    auto& n = c.topology.node(id);
    if (n.amplifier) f(*n.amplifier);
  }
}

const Axis kAxes[] = {
    {"head.osnr_tx_db",
     [](ScenarioConfig& c, double v) {
       for (auto& a : c.topology.head.adds) a.tx.osnr_tx_db = v;
     }},
    {"head.coupled_osnr_db",
     [](ScenarioConfig& c, double v) {
       // N identical unfiltered transmitters: each must be 10 log10(N) better.
       const double n = static_cast<double>(std::max<std::size_t>(1, c.topology.head.adds.size()));
       for (auto& a : c.topology.head.adds) a.tx.osnr_tx_db = v + 10.0 * std::log10(n);
     }},
    {"head.p_tx_dbm",
     [](ScenarioConfig& c, double v) {
       for (auto& a : c.topology.head.adds) a.tx.p_tx_dbm = v;
     }},
    {"nodes.osnr_tx_db",
     [](ScenarioConfig& c, double v) {
       for (auto& n : c.topology.nodes)
         for (auto& a : n.adds) a.tx.osnr_tx_db = v;
     }},
    {"spans.length_km",
     [](ScenarioConfig& c, double v) {
       for (auto& s : c.topology.spans) s.length_km = v;
       if (c.design) c.design->span_km = v;
     }},
    {"nodes.r_drop",
     [](ScenarioConfig& c, double v) {
       for (auto& n : c.topology.nodes)
         if (n.drop_coupler) n.drop_coupler->ratio = v;
     }},
    {"nodes.r_add",
     [](ScenarioConfig& c, double v) {
       for (auto& n : c.topology.nodes)
         if (n.add_coupler) n.add_coupler->ratio = v;
     }},
    {"nodes.wb_insertion_loss_db",
     [](ScenarioConfig& c, double v) {
       for (auto& n : c.topology.nodes)
         if (n.wb) n.wb->insertion_loss_db = v;
     }},
    {"amplifiers.noise_figure_db",
     [](ScenarioConfig& c, double v) { for_each_amp(c, [v](EdfaParams& a) { a.noise_figure_db = v; }); }},
    {"amplifiers.nf_tilt_db_per_thz",
     [](ScenarioConfig& c, double v) {
       for_each_amp(c, [v](EdfaParams& a) { a.nf_tilt_db_per_thz = v; });
     }},
    {"amplifiers.p_out_max_dbm",
     [](ScenarioConfig& c, double v) { for_each_amp(c, [v](EdfaParams& a) { a.p_out_max_dbm = v; }); }},
};

}  // namespace

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& a : kAxes) v.emplace_back(a.name);
    return v;
  }();
  return names;
}

ScenarioConfig apply_axis(const ScenarioConfig& cfg, const std::string& axis, double value) {
  for (const auto& a : kAxes) {
    if (axis == a.name) {
      ScenarioConfig out = cfg;
      a.set(out, value);
      return out;
    }
  }
  std::string known;
  for (const auto& n : sweep_axes()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown sweep axis '" + axis + "' (known: " + known + ")");
}

std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep: values must not be empty");
  std::vector<ScenarioConfig> variants;
  variants.reserve(spec.values.size());
  for (double v : spec.values) variants.push_back(apply_axis(cfg, spec.axis, v));

  std::vector<std::future<SimulationResult>> jobs;
  jobs.reserve(variants.size());
  for (const auto& v : variants) {
    jobs.push_back(std::async(std::launch::async, [&v] { return simulate(v); }));
  }
  std::vector<SweepPoint> out;
  out.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) out.push_back({spec.values[i], jobs[i].get()});
  return out;
}

}  // namespace wbnet::app
