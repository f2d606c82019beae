#include "wbnet/design_rules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wbnet/units.hpp"

namespace wbnet::design {

namespace {

void check_counts(const DesignInputs& in) {
  if (in.n_channels < 1) throw std::invalid_argument("N must be >= 1");
  if (in.k_add_drop < 1 || in.k_add_drop > in.n_channels) {
    throw std::invalid_argument("K must satisfy 1 <= K <= N");
  }
  if (!(in.fibre_loss_db_per_km > 0.0)) {
    throw std::invalid_argument("fibre loss must be > 0 dB/km");
  }
}

std::string pct(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f %%", 100.0 * r);
  return buf;
}

}  // namespace

DropBounds raw_drop_ratio_bounds(const DesignInputs& in) {
  check_counts(in);
  const double p_amp = to_watts(Dbm{in.amp.p_out_max_dbm}).value;
  const double p_min = to_watts(Dbm{in.rx.p_min_dbm}).value;
  const double p_max = to_watts(Dbm{in.rx.p_max_dbm}).value;
  // Linear drop-path loss: the 1xK split plus whatever else sits before the Rx.
  const double path = static_cast<double>(in.k_add_drop) * db_to_linear(in.drop_path_extra_loss_db);
  const double n = static_cast<double>(in.n_channels);
  return DropBounds{p_min * path * n / p_amp, p_max * path / p_amp};
}

DropBounds drop_ratio_bounds(const DesignInputs& in) {
  const DropBounds raw = raw_drop_ratio_bounds(in);
  if (raw.r_min >= 1.0) {
    throw InfeasibleDesign("receiver_sensitivity",
                           "minimum drop ratio " + pct(raw.r_min) + " is not below 100 %");
  }
  if (raw.r_min > raw.r_max) {
    throw InfeasibleDesign("receiver_window", "minimum drop ratio " + pct(raw.r_min) +
                                                  " exceeds maximum " + pct(raw.r_max));
  }
  return DropBounds{raw.r_min, std::min(raw.r_max, 1.0)};
}

double add_ratio(const DesignInputs& in, double r_drop) {
  check_counts(in);
  if (!(r_drop > 0.0 && r_drop < 1.0)) throw std::invalid_argument("r_drop must be in (0, 1)");
  const double p_amp = to_watts(Dbm{in.amp.p_out_max_dbm}).value;
  const double p_tx = to_watts(Dbm{in.tx.p_tx_dbm}).value;
  const double a_wb = db_to_linear(in.wb.insertion_loss_db);
  const double express = p_amp * (1.0 - r_drop);
  const double added = p_tx / in.k_add_drop * a_wb * in.n_channels;
  return express / (added + express);
}

double node_through_loss(double r_drop, const WavelengthBlockerParams& wb, double r_add) {
  if (!(r_drop >= 0.0 && r_drop < 1.0) || !(r_add >= 0.0 && r_add < 1.0)) {
    throw std::invalid_argument("coupler ratios must be in [0, 1)");
  }
  return -10.0 * std::log10(1.0 - r_drop) + wb.insertion_loss_db + -10.0 * std::log10(1.0 - r_add);
}

double max_span_length(const EdfaParams& amp, double node_loss_db, double fibre_loss_db_per_km) {
  if (!(fibre_loss_db_per_km > 0.0)) throw std::invalid_argument("fibre loss must be > 0 dB/km");
  return std::max(0.0, (amp.gain_max_db - node_loss_db) / fibre_loss_db_per_km);
}

bool DesignReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

DesignReport evaluate_design(const DesignInputs& in) {
  DesignReport rep;
  rep.n_channels = in.n_channels;
  rep.k_add_drop = in.k_add_drop;

  const DropBounds raw = raw_drop_ratio_bounds(in);
  rep.r_drop_min = raw.r_min;
  rep.r_drop_max = std::min(raw.r_max, 1.0);
  rep.feasible = raw.r_min < 1.0 && raw.r_min <= raw.r_max;

  {
    Verdict v{"receiver_window", rep.feasible, 0.0, "dB", ""};
    v.margin = 10.0 * std::log10(raw.r_max / raw.r_min);
    try {
      drop_ratio_bounds(in);
      v.message = "drop ratio window " + pct(rep.r_drop_min) + " .. " + pct(rep.r_drop_max);
    } catch (const InfeasibleDesign& e) {
      v.constraint = e.constraint();
      v.message = e.what();
    }
    rep.verdicts.push_back(std::move(v));
  }

  auto point = [&](std::string label, double r_drop) {
    OperatingPoint p{std::move(label), r_drop, 0.0, 0.0, 0.0};
    p.r_add = add_ratio(in, r_drop);
    p.node_loss_db = node_through_loss(r_drop, in.wb, p.r_add);
    p.max_span_km = max_span_length(in.amp, p.node_loss_db, in.fibre_loss_db_per_km);
    return p;
  };

  if (rep.feasible && rep.r_drop_min > 0.0 && rep.r_drop_max < 1.0) {
    rep.operating_points.push_back(point("min_drop", rep.r_drop_min));
    rep.operating_points.push_back(point("max_drop", rep.r_drop_max));
  }

  if (in.r_drop) {
    const double r = *in.r_drop;
    rep.operating_points.push_back(point("configured", r));

    const double lo = (r - raw.r_min) * 100.0;
    rep.verdicts.push_back({"r_drop_min", lo >= 0.0, lo, "pp",
                            lo >= 0.0 ? "r_drop " + pct(r) + " at or above minimum " + pct(raw.r_min)
                                      : "r_drop below minimum " + pct(raw.r_min)});
    const double hi = (raw.r_max - r) * 100.0;
    rep.verdicts.push_back({"r_drop_max", hi >= 0.0, hi, "pp",
                            hi >= 0.0 ? "r_drop " + pct(r) + " at or below maximum " + pct(raw.r_max)
                                      : "r_drop above maximum " + pct(raw.r_max)});
  }

  if (!rep.operating_points.empty()) {
    // Configured point when given, otherwise the lossier max-drop point.
    const OperatingPoint& p = rep.operating_points.back();
    rep.r_add = p.r_add;
    rep.node_loss_db = p.node_loss_db;
    rep.max_span_km = p.max_span_km;

    if (in.span_km) {
      const double m = p.max_span_km - *in.span_km;
      char buf[96];
      std::snprintf(buf, sizeof buf, "span %.1f km against maximum %.1f km", *in.span_km,
                    p.max_span_km);
      rep.verdicts.push_back({"span_length", m >= 0.0, m, "km", buf});
    }
  }
  return rep;
}

}  // namespace wbnet::design
