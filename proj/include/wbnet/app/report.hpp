#pragma once

// Serialization of reports: JSON via nlohmann::json, CSV with fixed column
// order and %.6g number formatting so identical inputs give identical bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "wbnet/app/scenario.hpp"
#include "wbnet/design_rules.hpp"
#include "wbnet/propagation.hpp"

namespace wbnet::app {

/// Six significant digits; "inf"/"-inf" for infinities.
std::string format_number(double x);

nlohmann::ordered_json design_json(const design::DesignReport& r);
std::string design_table(const design::DesignReport& r);

nlohmann::ordered_json trace_json(const std::string& scenario, const Topology& t,
                                  const SimulationResult& r);

/// Columns: label,slot,frequency_hz,signal_dbm,noise_dbm,osnr_db,active,origin
std::string trace_csv(const Topology& t, const prop::PropagationTrace& trace);

std::string observation_table(const SimulationResult& r);

/// Columns: sweep_value,distance_km,slot,osnr_db,ber,verdict
std::string sweep_csv(const std::vector<SweepPoint>& points);

}  // namespace wbnet::app
