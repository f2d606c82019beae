#include "wbnet/app/report.hpp"

#include <fmt/format.h>

#include <cmath>

namespace wbnet::app {

namespace {

using json = nlohmann::ordered_json;

json opt(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

std::string opt_num(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

std::string dbm_or_dark(double w) {
  return w > 0.0 ? format_number(to_dbm(Watts{w}).value) : "-inf";
}

}  // namespace

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // no "-0"
  return fmt::format("{:.6g}", x);
}

json design_json(const design::DesignReport& r) {
  json j;
  j["n_channels"] = r.n_channels;
  j["k_add_drop"] = r.k_add_drop;
  j["r_drop_min"] = r.r_drop_min;
  j["r_drop_max"] = r.r_drop_max;
  j["feasible"] = r.feasible;
  j["r_add"] = opt(r.r_add);
  j["node_loss_db"] = opt(r.node_loss_db);
  j["max_span_km"] = opt(r.max_span_km);
  j["operating_points"] = json::array();
  for (const auto& p : r.operating_points) {
    j["operating_points"].push_back({{"label", p.label},
                                     {"r_drop", p.r_drop},
                                     {"r_add", p.r_add},
                                     {"node_loss_db", p.node_loss_db},
                                     {"max_span_km", p.max_span_km}});
  }
  j["verdicts"] = json::array();
  for (const auto& v : r.verdicts) {
    j["verdicts"].push_back({{"constraint", v.constraint},
                             {"pass", v.pass},
                             {"margin", std::isfinite(v.margin) ? json(v.margin) : json(nullptr)},
                             {"unit", v.unit},
                             {"message", v.message}});
  }
  j["pass"] = r.all_pass();
  return j;
}

std::string design_table(const design::DesignReport& r) {
  std::string out;
  out += fmt::format("channels N = {}, add/drop K = {}\n", r.n_channels, r.k_add_drop);
  out += fmt::format("drop ratio window: {:.2f} % .. {:.2f} %{}\n", 100 * r.r_drop_min,
                     100 * r.r_drop_max, r.feasible ? "" : "  (infeasible)");
  if (!r.operating_points.empty()) {
    out += fmt::format("{:<12} {:>9} {:>9} {:>13} {:>13}\n", "point", "r_drop %", "r_add %",
                       "node loss dB", "max span km");
    for (const auto& p : r.operating_points) {
      out += fmt::format("{:<12} {:>9.2f} {:>9.2f} {:>13.2f} {:>13.1f}\n", p.label,
                         100 * p.r_drop, 100 * p.r_add, p.node_loss_db, p.max_span_km);
    }
  }
  for (const auto& v : r.verdicts) {
    out += fmt::format("[{}] {:<20} margin {:>8.2f} {:<3} {}\n", v.pass ? "PASS" : "FAIL",
                       v.constraint, v.margin, v.unit, v.message);
  }
  return out;
}

json trace_json(const std::string& scenario, const Topology& t, const SimulationResult& r) {
  json j;
  j["scenario"] = scenario;
  j["points"] = json::array();
  for (const auto& p : r.trace.points) {
    json jp;
    jp["label"] = p.label;
    jp["kind"] = std::string(prop::to_string(p.kind));
    jp["node"] = p.node;
    jp["position_km"] = p.position_km;
    jp["gain_db"] = opt(p.gain_db);
    const double total = p.state.total_power();
    jp["total_power_dbm"] = total > 0.0 ? json(to_dbm(Watts{total}).value) : json(nullptr);
    jp["warnings"] = json::array();
    for (const auto& w : p.warnings) jp["warnings"].push_back({{"code", w.code}, {"message", w.message}});
    if (!p.rx.empty()) {
      jp["observed"] = p.observed;
      jp["rx"] = json::array();
      for (const auto& v : p.rx) {
        jp["rx"].push_back({{"slot", v.slot},
                            {"check", v.check},
                            {"pass", v.pass},
                            {"power_dbm", opt(v.power_dbm)},
                            {"margin_db", opt(v.margin_db)},
                            {"message", v.message}});
      }
    }
    jp["slots"] = json::array();
    for (int s = 1; s <= p.state.size(); ++s) {
      jp["slots"].push_back({{"slot", s},
                             {"frequency_hz", t.plan.frequency_hz(s)},
                             {"signal_w", p.state.signal[s - 1]},
                             {"noise_w", p.state.noise[s - 1]},
                             {"active", p.state.is_active(s)},
                             {"origin", p.state.origin[s - 1]}});
    }
    j["points"].push_back(std::move(jp));
  }
  j["observations"] = json::array();
  for (const auto& o : r.observations) {
    j["observations"].push_back(
        {{"point", o.point},
         {"distance_km", o.distance_km},
         {"slot", o.slot},
         {"format", o.format ? json(std::string(to_string(*o.format))) : json(nullptr)},
         {"signal_dbm", opt(o.signal_dbm)},
         {"osnr_db", opt(o.osnr_db)},
         {"ber", opt(o.ber)},
         {"fec_margin_db", opt(o.fec_margin_db)},
         {"verdict", o.verdict()}});
  }
  j["pass"] = r.all_pass();
  return j;
}

std::string trace_csv(const Topology& t, const prop::PropagationTrace& trace) {
  std::string out = "label,slot,frequency_hz,signal_dbm,noise_dbm,osnr_db,active,origin\n";
  for (const auto& p : trace.points) {
    const auto& st = p.state;
    const std::vector<double> osnr = st.osnr_all();
    for (int s = 1; s <= st.size(); ++s) {
      const std::size_t i = static_cast<std::size_t>(s - 1);
      const std::string o =
          st.is_active(s) ? (st.noise[i] > 0.0 ? format_number(linear_to_db(osnr[i])) : "inf") : "";
      out += fmt::format("{},{},{},{},{},{},{},{}\n", p.label, s,
                         format_number(t.plan.frequency_hz(s)), dbm_or_dark(st.signal[i]),
                         dbm_or_dark(st.noise[i]), o, st.is_active(s) ? 1 : 0, st.origin[i]);
    }
  }
  return out;
}

std::string observation_table(const SimulationResult& r) {
  std::string out = fmt::format("{:<16} {:>8} {:>5} {:>9} {:>10} {:>9} {:>10} {:>9}  {}\n", "point",
                                "dist km", "slot", "format", "Rx dBm", "OSNR dB", "BER",
                                "Q2 mrg dB", "verdict");
  for (const auto& o : r.observations) {
    out += fmt::format("{:<16} {:>8.1f} {:>5} {:>9} {:>10} {:>9} {:>10} {:>9}  {}\n", o.point,
                       o.distance_km, o.slot, o.format ? std::string(to_string(*o.format)) : "-",
                       o.signal_dbm ? fmt::format("{:.2f}", *o.signal_dbm) : "-",
                       o.osnr_db ? fmt::format("{:.2f}", *o.osnr_db) : "-",
                       o.ber ? fmt::format("{:.3e}", *o.ber) : "-",
                       o.fec_margin_db ? fmt::format("{:.2f}", *o.fec_margin_db) : "-",
                       o.verdict());
  }
  for (const auto& p : r.trace.points) {
    for (const auto& w : p.warnings) out += fmt::format("warning at {}: {}\n", p.label, w.message);
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "sweep_value,distance_km,slot,osnr_db,ber,verdict\n";
  for (const auto& sp : points) {
    auto obs = sp.result.observations;
    std::stable_sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) {
      return a.distance_km < b.distance_km;
    });
    for (const auto& o : obs) {
      out += fmt::format("{},{},{},{},{},{}\n", format_number(sp.value), format_number(o.distance_km),
                         o.slot, opt_num(o.osnr_db), opt_num(o.ber), o.verdict());
    }
  }
  return out;
}

}  // namespace wbnet::app
