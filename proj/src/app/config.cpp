#include "wbnet/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wbnet::app {

namespace {

// A YAML mapping with its document path, rejecting keys nobody asked about.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) fail("expected a mapping");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(path_.empty() ? msg : path_ + ": " + msg);
  }

  bool has(const char* key) {
    seen_.insert(key);
    return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }

  YAML::Node raw(const char* key) {
    seen_.insert(key);
    return node_ && node_.IsMap() ? node_[key] : YAML::Node{};
  }

  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  Section sub(const char* key) { return Section(raw(key), child_path(key)); }

  template <class T>
  T get(const char* key) {
    if (!has(key)) fail("missing required key '" + std::string(key) + "'");
    return as<T>(node_[key], key);
  }

  template <class T>
  T get(const char* key, T fallback) {
    return has(key) ? as<T>(node_[key], key) : fallback;
  }

  template <class T>
  std::optional<T> opt(const char* key) {
    if (!has(key)) return std::nullopt;
    return as<T>(node_[key], key);
  }

  void done() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto k = kv.first.as<std::string>();
      if (!seen_.count(k)) throw ConfigError(child_path(k) + ": unknown key");
    }
  }

 private:
  template <class T>
  T as(const YAML::Node& n, const char* key) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(child_path(key) + ": wrong type");
    }
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

int parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ConfigError("bad slot list '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<int> slots_of(const YAML::Node& n, const std::string& path) {
  std::vector<int> out;
  auto scalar = [&](const YAML::Node& x) {
    try {
      auto part = parse_slot_list(x.as<std::string>());
      out.insert(out.end(), part.begin(), part.end());
    } catch (const YAML::Exception&) {
      throw ConfigError(path + ": slots must be integers or ranges");
    }
  };
  if (!n || n.IsNull()) return out;
  if (n.IsSequence()) {
    for (const auto& x : n) scalar(x);
  } else if (n.IsScalar()) {
    scalar(n);
  } else {
    throw ConfigError(path + ": slots must be a list or range string");
  }
  return out;
}

struct Library {
  std::map<std::string, EdfaParams> amplifiers;
  std::map<std::string, TransmitterParams> transmitters;
};

AmplifierMode parse_mode(const std::string& s, const Section& where) {
  if (s == "target_power") return AmplifierMode::TargetPower;
  if (s == "fixed_gain") return AmplifierMode::FixedGain;
  where.fail("mode must be target_power or fixed_gain");
}

EdfaParams amplifier_fields(Section s) {
  EdfaParams a;
  a.p_out_max_dbm = s.get<double>("p_out_max_dbm");
  a.gain_max_db = s.get<double>("gain_max_db");
  a.noise_figure_db = s.get<double>("noise_figure_db");
  a.nf_tilt_db_per_thz = s.get<double>("nf_tilt_db_per_thz", 0.0);
  a.mode = parse_mode(s.get<std::string>("mode", "target_power"), s);
  a.gain_db = s.get<double>("gain_db", 0.0);
  if (a.mode == AmplifierMode::FixedGain && !s.has("gain_db")) s.fail("fixed_gain needs gain_db");
  s.done();
  return a;
}

TransmitterParams transmitter_fields(Section s) {
  TransmitterParams t;
  t.p_tx_dbm = s.get<double>("p_tx_dbm");
  t.osnr_tx_db = s.get<double>("osnr_db");
  const auto fmt = s.get<std::string>("format", "DP-QPSK");
  const auto parsed = parse_modulation_format(fmt);
  if (!parsed) s.fail("format must be DP-QPSK or DP-16QAM");
  t.format = *parsed;
  t.symbol_rate_baud = s.get<double>("symbol_rate_gbaud", 34.0) * 1e9;
  s.done();
  return t;
}

template <class T, class Fields>
T by_name_or_inline(Section& parent, const char* key, const std::map<std::string, T>& lib,
                    Fields fields) {
  YAML::Node n = parent.raw(key);
  const auto path = parent.child_path(key);
  if (n.IsScalar()) {
    const auto name = n.as<std::string>();
    auto it = lib.find(name);
    if (it == lib.end()) throw ConfigError(path + ": unknown template '" + name + "'");
    return it->second;
  }
  return fields(Section(n, path));
}

CouplerParams coupler_fields(Section s) {
  CouplerParams c;
  c.ratio = s.get<double>("ratio");
  c.excess_loss_db = s.get<double>("excess_loss_db", 0.0);
  s.done();
  return c;
}

SplitterParams splitter_fields(Section s, int default_ways) {
  SplitterParams p;
  p.ways = s.get<int>("ways", default_ways);
  p.excess_loss_db = s.get<double>("excess_loss_db", 0.0);
  s.done();
  return p;
}

WavelengthBlockerParams blocker_fields(Section s) {
  WavelengthBlockerParams w;
  w.insertion_loss_db = s.get<double>("insertion_loss_db");
  w.max_attenuation_db = s.get<double>("max_attenuation_db", 15.0);
  w.isolation_db = s.opt<double>("isolation_db");
  w.target_dbm = s.opt<double>("target_dbm");
  for (int slot : slots_of(s.raw("blocked"), s.child_path("blocked"))) w.blocked.insert(slot);
  s.done();
  return w;
}

NodeSpec node_fields(Section s, NodeKind kind, const Library& lib, const std::string& default_name) {
  NodeSpec n;
  n.kind = kind;
  n.name = s.get<std::string>("name", default_name);
  if (s.has("amplifier")) n.amplifier = by_name_or_inline(s, "amplifier", lib.amplifiers, amplifier_fields);
  if (s.has("coupler")) n.terminal_coupler = splitter_fields(s.sub("coupler"), 0);
  if (s.has("drop_coupler")) n.drop_coupler = coupler_fields(s.sub("drop_coupler"));
  if (s.has("drop_splitter")) n.drop_splitter = splitter_fields(s.sub("drop_splitter"), 1);
  if (s.has("blocker")) n.wb = blocker_fields(s.sub("blocker"));
  if (s.has("add_coupler")) n.add_coupler = coupler_fields(s.sub("add_coupler"));
  if (s.has("add_combiner")) n.add_combiner = splitter_fields(s.sub("add_combiner"), 0);

  const YAML::Node adds = s.raw("adds");
  const auto adds_path = s.child_path("adds");
  if (adds && !adds.IsNull()) {
    if (!adds.IsSequence()) throw ConfigError(adds_path + ": expected a list");
    for (std::size_t i = 0; i < adds.size(); ++i) {
      Section a(adds[i], adds_path + "[" + std::to_string(i) + "]");
      const auto slots = slots_of(a.raw("slots"), a.child_path("slots"));
      if (slots.empty()) a.fail("needs slots");
      if (!a.has("transmitter")) a.fail("needs a transmitter");
      const TransmitterParams tx =
          by_name_or_inline(a, "transmitter", lib.transmitters, transmitter_fields);
      a.done();
      for (int slot : slots) n.adds.push_back({slot, tx});
    }
  }
  n.drops = slots_of(s.raw("drops"), s.child_path("drops"));
  n.monitors = slots_of(s.raw("monitors"), s.child_path("monitors"));
  s.done();
  return n;
}

design::DesignInputs design_fields(Section s, const Library& lib, const ReceiverParams& rx) {
  design::DesignInputs d;
  d.n_channels = s.get<int>("channels");
  d.k_add_drop = s.get<int>("k");
  d.amp = by_name_or_inline(s, "amplifier", lib.amplifiers, amplifier_fields);
  d.tx = by_name_or_inline(s, "transmitter", lib.transmitters, transmitter_fields);
  d.rx = rx;
  if (s.has("receiver")) {
    Section r = s.sub("receiver");
    d.rx.p_min_dbm = r.get<double>("p_min_dbm");
    d.rx.p_max_dbm = r.get<double>("p_max_dbm");
    r.done();
  }
  d.wb = blocker_fields(s.sub("blocker"));
  d.fibre_loss_db_per_km = s.get<double>("fibre_loss_db_per_km");
  d.drop_path_extra_loss_db = s.get<double>("drop_path_extra_loss_db", 0.0);
  d.r_drop = s.opt<double>("r_drop");
  d.span_km = s.opt<double>("span_km");
  s.done();

  std::vector<Violation> v = violations(d.amp);
  for (auto&& x : violations(d.tx)) v.push_back(x);
  for (auto&& x : violations(d.rx)) v.push_back(x);
  if (!v.empty()) throw ConfigError("design: " + std::string(ValidationError(v).what()));
  if (d.n_channels < 1 || d.k_add_drop < 1 || d.k_add_drop > d.n_channels) {
    throw ConfigError("design: need 1 <= k <= channels");
  }
  if (!(d.fibre_loss_db_per_km > 0.0)) throw ConfigError("design: fibre loss must be > 0");
  if (d.r_drop && !(*d.r_drop > 0.0 && *d.r_drop < 1.0)) {
    throw ConfigError("design: r_drop must be in (0, 1)");
  }
  return d;
}

ScenarioConfig build(const YAML::Node& root) {
  Section top(root, "");
  if (!root || !root.IsMap()) throw ConfigError("config must be a YAML mapping");

  ScenarioConfig cfg;
  cfg.name = top.get<std::string>("name", "scenario");

  Library lib;
  if (top.has("amplifiers")) {
    const YAML::Node a = top.raw("amplifiers");
    if (!a.IsMap()) throw ConfigError("amplifiers: expected a mapping");
    for (const auto& kv : a) {
      const auto key = kv.first.as<std::string>();
      lib.amplifiers[key] = amplifier_fields(Section(kv.second, "amplifiers." + key));
    }
  }
  if (top.has("transmitters")) {
    const YAML::Node t = top.raw("transmitters");
    if (!t.IsMap()) throw ConfigError("transmitters: expected a mapping");
    for (const auto& kv : t) {
      const auto key = kv.first.as<std::string>();
      lib.transmitters[key] = transmitter_fields(Section(kv.second, "transmitters." + key));
    }
  }

  Topology& topo = cfg.topology;
  {
    Section p = top.sub("plan");
    topo.plan.n_slots = p.get<int>("slots");
    topo.plan.f_start_hz = p.get<double>("start_thz") * 1e12;
    topo.plan.spacing_hz = p.get<double>("spacing_ghz") * 1e9;
    p.done();
  }
  {
    Section c = top.sub("constants");
    cfg.engine.constants.reference_bandwidth_hz = c.get<double>("b_ref_ghz", 12.5) * 1e9;
    cfg.engine.constants.carrier_hz = c.get<double>("carrier_thz", 193.4) * 1e12;
    c.done();
    try {
      check_constants(cfg.engine.constants);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("constants: ") + e.what());
    }
  }
  {
    Section r = top.sub("receiver");
    topo.rx.p_min_dbm = r.get<double>("p_min_dbm");
    topo.rx.p_max_dbm = r.get<double>("p_max_dbm");
    r.done();
  }
  topo.drop_path_extra_loss_db = top.get<double>("drop_path_extra_loss_db", 0.0);

  topo.head = node_fields(top.sub("head"), NodeKind::Terminal, lib, "head");

  const YAML::Node spans = top.raw("spans");
  if (spans && !spans.IsNull()) {
    if (!spans.IsSequence()) throw ConfigError("spans: expected a list");
    for (std::size_t i = 0; i < spans.size(); ++i) {
      Section s(spans[i], "spans[" + std::to_string(i) + "]");
      SpanSpec span;
      span.length_km = s.get<double>("length_km");
      span.attenuation_db_per_km = s.get<double>("attenuation_db_per_km");
      span.extra_loss_db = s.get<double>("extra_loss_db", 0.0);
      const int repeat = s.get<int>("repeat", 1);
      if (repeat < 1) s.fail("repeat must be >= 1");
      s.done();
      topo.spans.insert(topo.spans.end(), static_cast<std::size_t>(repeat), span);
    }
  }

  const YAML::Node nodes = top.raw("nodes");
  if (nodes && !nodes.IsNull()) {
    if (!nodes.IsSequence()) throw ConfigError("nodes: expected a list");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      topo.nodes.push_back(node_fields(Section(nodes[i], "nodes[" + std::to_string(i) + "]"),
                                       NodeKind::AddDrop, lib, "node" + std::to_string(i + 1)));
    }
  }
  topo.tail = node_fields(top.sub("tail"), NodeKind::Terminal, lib, "tail");

  {
    Section s = top.sub("simulation");
    const auto booster = s.get<std::string>("booster_noise");
    if (booster == "in_tx_osnr") {
      cfg.engine.booster_noise_in_tx_osnr = true;
    } else if (booster == "amplifier") {
      cfg.engine.booster_noise_in_tx_osnr = false;
    } else {
      s.fail("booster_noise must be in_tx_osnr or amplifier");
    }
    cfg.sim.observe = slots_of(s.raw("observe"), s.child_path("observe"));
    cfg.sim.ber_penalty_db = s.get<double>("ber_penalty_db", 0.0);
    cfg.sim.fec.threshold_ber = s.get<double>("fec_threshold", 2e-2);
    if (!(cfg.sim.fec.threshold_ber > 0.0 && cfg.sim.fec.threshold_ber < 0.5)) {
      s.fail("fec_threshold must be in (0, 0.5)");
    }
    s.done();
  }

  if (top.has("design")) cfg.design = design_fields(top.sub("design"), lib, topo.rx);

  if (top.has("sweep")) {
    Section s = top.sub("sweep");
    SweepSpec sw;
    sw.axis = s.get<std::string>("axis");
    sw.values = s.get<std::vector<double>>("values");
    if (sw.values.empty()) s.fail("values must not be empty");
    s.done();
    cfg.sweep = std::move(sw);
  }

  top.done();
  return cfg;
}

}  // namespace

std::vector<int> parse_slot_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t dash = item.find('-', 1);
    if (dash == std::string_view::npos) {
      out.push_back(parse_int(item, text));
    } else {
      const int lo = parse_int(item.substr(0, dash), text);
      const int hi = parse_int(item.substr(dash + 1), text);
      if (hi < lo) throw ConfigError("bad slot range '" + std::string(item) + "'");
      for (int s = lo; s <= hi; ++s) out.push_back(s);
    }
    start = comma + 1;
  }
  return out;
}

ScenarioConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
  return build(root);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

design::DesignInputs design_inputs(const ScenarioConfig& cfg) {
  if (cfg.design) return *cfg.design;

  const Topology& t = cfg.topology;
  auto it = std::find_if(t.nodes.begin(), t.nodes.end(), [](const NodeSpec& n) {
    return n.amplifier && n.drop_coupler && n.wb;
  });
  if (it == t.nodes.end() || t.spans.empty()) {
    throw ConfigError("design: no design section and no add/drop node with amplifier, "
                      "drop coupler and blocker to derive it from");
  }
  design::DesignInputs d;
  d.n_channels = t.plan.n_slots;
  d.k_add_drop = it->drop_splitter.ways;
  d.amp = *it->amplifier;
  if (!it->adds.empty()) {
    d.tx = it->adds.front().tx;
  } else if (!t.head.adds.empty()) {
    d.tx = t.head.adds.front().tx;
  }
  d.rx = t.rx;
  d.wb = *it->wb;
  d.fibre_loss_db_per_km = t.spans.front().attenuation_db_per_km;
  d.drop_path_extra_loss_db = t.drop_path_extra_loss_db + it->drop_splitter.excess_loss_db;
  d.r_drop = it->drop_coupler->ratio;
  double longest = 0.0;
  for (const auto& s : t.spans) longest = std::max(longest, s.length_km);
  d.span_km = longest;
  return d;
}

}  // namespace wbnet::app
