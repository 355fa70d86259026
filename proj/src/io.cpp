#include "localcast/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace localcast::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

namespace {

template <class Int>
Int parse_int(const std::string& s) {
  Int v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
std::string opt_cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

json opt_json(const std::optional<Slot>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<Slot> opt_slot(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<Slot>();
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["phys"] = {{"alpha", s.phys().alpha()},
               {"beta", s.phys().beta()},
               {"noise", s.phys().noise()},
               {"phi", s.phys().phi()}};
  if (s.model().kind == InterferenceModel::Kind::Sinr)
    j["model"] = "sinr";
  else
    j["model"] = {{"protocol", {{"r_t", s.model().r_t}, {"r_i", s.model().r_i}}}};
  j["n_bound"] = s.n_bound();
  j["consts"] = {{"delta", s.consts().delta}, {"gamma", s.consts().gamma}};
  json nodes = json::array();
  for (const auto& n : s.nodes()) {
    json node = {{"id", n.id}, {"x", n.pos.x}, {"y", n.pos.y}, {"wake", n.wake}};
    node["shutdown"] = n.shutdown == kNever ? json(nullptr) : json(n.shutdown);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  if (s.generator)
    j["generator"] = {{"kind", s.generator->kind}, {"seed", s.generator->seed}};
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
  try {
    const auto& ph = j.at("phys");
    PhysParams phys(ph.at("alpha").get<double>(), ph.at("beta").get<double>(),
                    ph.at("noise").get<double>(), ph.at("phi").get<double>());
    InterferenceModel model;
    const auto& m = j.at("model");
    if (m.is_string()) {
      if (m.get<std::string>() != "sinr")
        throw std::invalid_argument("model must be \"sinr\" or {\"protocol\": ...}");
    } else {
      const auto& p = m.at("protocol");
      model = InterferenceModel::protocol(p.at("r_t").get<double>(), p.at("r_i").get<double>());
    }
    std::vector<NodeSpec> nodes;
    for (const auto& n : j.at("nodes")) {
      NodeSpec spec;
      spec.id = n.at("id").get<NodeId>();
      spec.pos = {n.at("x").get<double>(), n.at("y").get<double>()};
      spec.wake = n.value("wake", Slot{0});
      const auto sd = n.find("shutdown");
      spec.shutdown = (sd == n.end() || sd->is_null()) ? kNever : sd->get<Slot>();
      nodes.push_back(spec);
    }
    const auto& c = j.at("consts");
    Scenario s(std::move(nodes), phys, model, j.at("n_bound").get<std::uint64_t>(),
               c.at("delta").get<int>(), c.at("gamma").get<double>());
    if (auto g = j.find("generator"); g != j.end())
      s.generator = GeneratorInfo{g->at("kind").get<std::string>(), g->at("seed").get<std::uint64_t>()};
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
}

Scenario read_scenario(const std::string& path) { return scenario_from_json(read_file(path)); }

void write_scenario(const std::string& path, const Scenario& s) {
  write_file(path, scenario_to_json(s));
}

void write_trace_jsonl(std::ostream& os, const Scenario& s, const Trace& trace) {
  for (const auto& o : trace.outcomes) {
    json rec;
    rec["t"] = o.slot;
    json tx = json::array();
    for (NodeIndex i : o.transmitters) tx.push_back(s.node(i).id);
    rec["tx"] = std::move(tx);
    json dec = json::object();
    for (const auto& [rx, from] : o.decodes) dec[std::to_string(s.node(rx).id)] = s.node(from).id;
    rec["decodes"] = std::move(dec);
    json lp = json::array();
    for (NodeIndex i : o.low_power) lp.push_back(s.node(i).id);
    rec["lp"] = std::move(lp);
    os << rec.dump() << '\n';
  }
  for (const auto& n : trace.nodes) {
    json rec = {{"id", n.id},
                {"first_success", opt_json(n.first_success)},
                {"halt_slot", opt_json(n.halt_slot)},
                {"halt_reason", std::string(to_string(n.reason))},
                {"fallbacks", n.fallbacks},
                {"N_x", n.n_x},
                {"wake", n.wake},
                {"transmissions", n.transmissions}};
    os << rec.dump() << '\n';
  }
}

Trace read_trace_jsonl(std::istream& is, const Scenario& s) {
  Trace trace;
  std::string line;
  auto sorted_ids = [&](const json& arr) {
    std::vector<NodeIndex> out;
    for (const auto& id : arr) out.push_back(s.index_of(id.get<NodeId>()));
    std::sort(out.begin(), out.end());
    return out;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    if (rec.contains("t")) {
      SlotOutcome o;
      o.slot = rec.at("t").get<Slot>();
      o.transmitters = sorted_ids(rec.at("tx"));
      o.low_power = sorted_ids(rec.at("lp"));
      for (const auto& [rx, from] : rec.at("decodes").items())
        o.decodes.emplace_back(s.index_of(static_cast<NodeId>(std::stoul(rx))),
                               s.index_of(from.get<NodeId>()));
      std::sort(o.decodes.begin(), o.decodes.end());
      trace.outcomes.push_back(std::move(o));
    } else {
      NodeRecord n;
      n.id = rec.at("id").get<NodeId>();
      n.first_success = opt_slot(rec.at("first_success"));
      n.halt_slot = opt_slot(rec.at("halt_slot"));
      n.reason = parse_halt_reason(rec.at("halt_reason").get<std::string>());
      n.fallbacks = rec.at("fallbacks").get<int>();
      n.n_x = rec.at("N_x").get<std::size_t>();
      n.wake = rec.value("wake", Slot{0});
      n.transmissions = rec.value("transmissions", std::int64_t{0});
      trace.nodes.push_back(n);
    }
  }
  trace.slots_run = static_cast<Slot>(trace.outcomes.size());
  return trace;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "node_id,n,N_x,wake,halt,first_success,reason,fallbacks,seed,variant,transmissions\n";
  for (const auto& r : rows) {
    os << r.node_id << ',' << r.n << ',' << r.n_x << ',' << r.wake << ',' << opt_cell(r.halt)
       << ',' << opt_cell(r.first_success) << ',' << to_string(r.reason) << ',' << r.fallbacks
       << ',' << r.seed << ',' << to_string(r.variant) << ',' << r.transmissions << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& is) {
  std::vector<SummaryRow> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() < 8) throw std::invalid_argument("summary CSV row has too few columns");
    SummaryRow r;
    r.node_id = parse_int<NodeId>(c[0]);
    r.n = parse_int<std::uint64_t>(c[1]);
    r.n_x = parse_int<std::size_t>(c[2]);
    r.wake = parse_int<Slot>(c[3]);
    if (!c[4].empty()) r.halt = parse_int<Slot>(c[4]);
    if (!c[5].empty()) r.first_success = parse_int<Slot>(c[5]);
    r.reason = parse_halt_reason(c[6]);
    r.fallbacks = parse_int<int>(c[7]);
    if (c.size() > 8 && !c[8].empty()) r.seed = parse_int<std::uint64_t>(c[8]);
    if (c.size() > 9 && !c[9].empty()) r.variant = parse_variant(c[9]);
    if (c.size() > 10 && !c[10].empty()) r.transmissions = parse_int<std::int64_t>(c[10]);
    rows.push_back(r);
  }
  return rows;
}

void write_bound_csv(std::ostream& os, const std::vector<lowerbound::BoundRow>& rows) {
  os << "t,p_t,range_i,exact_cond_prob,bound,holds,cumulative_exact,cumulative_bound\n";
  for (const auto& r : rows) {
    os << r.t << ',' << format_double(r.p_t) << ',' << r.range_i << ','
       << format_double(r.exact_cond_prob) << ',' << format_double(r.bound) << ','
       << (r.holds ? 1 : 0) << ',' << format_double(r.cumulative_exact) << ','
       << format_double(r.cumulative_bound) << '\n';
  }
}

std::vector<lowerbound::BoundRow> read_bound_csv(std::istream& is) {
  std::vector<lowerbound::BoundRow> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 8) throw std::invalid_argument("bound CSV row must have 8 columns");
    lowerbound::BoundRow r;
    r.t = parse_int<Slot>(c[0]);
    r.p_t = parse_double(c[1]);
    r.range_i = parse_int<int>(c[2]);
    r.exact_cond_prob = parse_double(c[3]);
    r.bound = parse_double(c[4]);
    r.holds = parse_int<int>(c[5]) != 0;
    r.cumulative_exact = parse_double(c[6]);
    r.cumulative_bound = parse_double(c[7]);
    rows.push_back(r);
  }
  return rows;
}

std::string fit_to_json(const FitResult& fit) {
  json cells = json::array();
  for (const auto& c : fit.cells)
    cells.push_back({{"n", c.n}, {"N_x", c.n_x}, {"median", c.median}, {"count", c.count}});
  json j = {{"form", std::string(to_string(fit.form))},
            {"a", fit.a},
            {"b", fit.b},
            {"residual", fit.residual},
            {"cells", std::move(cells)}};
  return j.dump(2) + "\n";
}

FitResult fit_from_json(const std::string& text) {
  const json j = json::parse(text);
  FitResult fit;
  fit.form = parse_fit_form(j.at("form").get<std::string>());
  fit.a = j.at("a").get<double>();
  fit.b = j.at("b").get<double>();
  fit.residual = j.at("residual").get<double>();
  for (const auto& c : j.at("cells"))
    fit.cells.push_back({c.at("n").get<std::uint64_t>(), c.at("N_x").get<std::size_t>(),
                         c.at("median").get<double>(), c.at("count").get<std::size_t>()});
  return fit;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace localcast::io
