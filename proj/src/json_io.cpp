#include "pconway/json_io.hpp"

#include "pconway/errors.hpp"

namespace pconway {

using nlohmann::json;

namespace {

const char* direction_name(Direction d) { return d == Direction::rightward ? "R" : "L"; }

Direction parse_direction(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "R") return Direction::rightward;
    if (s == "L") return Direction::leftward;
  }
  throw ValidationError("direction must be \"R\" or \"L\", got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

void check_schema(const json& j) {
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw ValidationError("unsupported schema version " + j.at("schema").dump());
}

json counts_to_json(const OutcomeCounts& c) {
  return {{"pass", c.pass},
          {"fail", c.fail},
          {"not_applicable", c.not_applicable},
          {"skipped", c.skipped}};
}

}  // namespace

json diagram_to_json(const LinkDiagram& d) {
  json crossings = json::array();
  for (const auto& c : d.crossings()) crossings.push_back({{"pd", c.pd}, {"sign", c.sign}});
  return {{"crossings", crossings}, {"free_loops", d.free_loops()}, {"pd", render_pd(d)}};
}

json pattern_to_json(const QuotientPattern& q) {
  json dirs = json::array();
  for (auto d : q.boundary) dirs.push_back(direction_name(d));
  json events = json::array();
  for (const auto& e : q.events) {
    if (const auto* c = std::get_if<CrossEvent>(&e)) {
      events.push_back({{"type", "cross"}, {"pos", c->pos}, {"sign", c->sign}});
    } else if (const auto* u = std::get_if<CupEvent>(&e)) {
      events.push_back({{"type", "cup"}, {"pos", u->pos}, {"upper", direction_name(u->upper)}});
    } else {
      events.push_back({{"type", "cap"}, {"pos", std::get<CapEvent>(e).pos}});
    }
  }
  return {{"boundary_width", q.boundary.size()}, {"boundary_directions", dirs}, {"events", events}};
}

QuotientPattern pattern_from_json(const json& j) {
  check_schema(j);
  QuotientPattern q;
  const json& dirs = field(j, "boundary_directions");
  if (!dirs.is_array()) throw ValidationError("'boundary_directions' must be an array");
  for (const auto& d : dirs) q.boundary.push_back(parse_direction(d));
  if (j.contains("boundary_width") &&
      j.at("boundary_width") != static_cast<int>(q.boundary.size()))
    throw ValidationError("'boundary_width' disagrees with 'boundary_directions'");
  const json& events = field(j, "events");
  if (!events.is_array()) throw ValidationError("'events' must be an array");
  for (const auto& e : events) {
    const json& type = field(e, "type");
    const int pos = int_field(e, "pos");
    if (type == "cross") {
      const int sign = int_field(e, "sign");
      if (sign != 1 && sign != -1) throw ValidationError("cross sign must be +1 or -1");
      q.events.emplace_back(CrossEvent{pos, sign});
    } else if (type == "cup") {
      const Direction upper = e.contains("upper") ? parse_direction(e.at("upper")) : Direction::rightward;
      q.events.emplace_back(CupEvent{pos, upper});
    } else if (type == "cap") {
      q.events.emplace_back(CapEvent{pos});
    } else {
      throw ValidationError("unknown event type " + type.dump());
    }
  }
  return q;
}

json lift_to_json(const Lift& l, int p) {
  json origin = json::array();
  for (auto [copy, event] : l.crossing_origin) origin.push_back({{"copy", copy}, {"event", event}});
  const auto& o = l.orbits;
  return {{"schema", kSchemaVersion},
          {"p", p},
          {"diagram", diagram_to_json(l.diagram)},
          {"components", o.orbit_of.size()},
          {"orbit_of", o.orbit_of},
          {"position_of", o.position_of},
          {"rotation", o.rotation},
          {"orbit_sizes", o.orbit_sizes},
          {"crossing_origin", origin}};
}

json report_to_json(const VerificationReport& r, bool include_timing) {
  json inputs = {{"p", r.p}};
  if (r.pattern) inputs["pattern"] = pattern_to_json(*r.pattern);
  if (r.crossing) inputs["crossing"] = *r.crossing;
  json witness = json::object();
  json order = json::array();
  for (const auto& [k, v] : r.witness) {
    witness[k] = v;
    order.push_back(k);
  }
  json j = {{"schema", kSchemaVersion},
            {"statement", r.statement},
            {"inputs", inputs},
            {"outcome", to_string(r.outcome)},
            {"detail", r.detail},
            {"witness", witness},
            {"witness_order", order}};
  if (include_timing) j["elapsed_ms"] = r.elapsed.count();
  return j;
}

VerificationReport report_from_json(const json& j) {
  check_schema(j);
  VerificationReport r;
  r.statement = field(j, "statement").get<std::string>();
  const json& inputs = field(j, "inputs");
  r.p = int_field(inputs, "p");
  if (inputs.contains("pattern")) r.pattern = pattern_from_json(inputs.at("pattern"));
  if (inputs.contains("crossing")) r.crossing = inputs.at("crossing").get<std::size_t>();
  if (j.contains("outcome")) r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  if (j.contains("detail")) r.detail = j.at("detail").get<std::string>();
  if (j.contains("witness")) {
    const json& w = j.at("witness");
    if (j.contains("witness_order")) {
      for (const auto& k : j.at("witness_order"))
        r.witness.emplace_back(k.get<std::string>(), w.at(k.get<std::string>()).get<std::string>());
    } else {
      for (const auto& [k, v] : w.items()) r.witness.emplace_back(k, v.get<std::string>());
    }
  }
  if (j.contains("elapsed_ms")) r.elapsed = std::chrono::milliseconds(j.at("elapsed_ms").get<long>());
  return r;
}

json suite_to_json(const SuiteReport& s, bool include_timing) {
  const auto& c = s.config;
  json caps = json::object();
  for (auto [p, cap] : c.max_quotient_crossings) caps[std::to_string(p)] = cap;
  json config = {{"suites", c.suites},
                 {"primes", c.primes},
                 {"count", c.count},
                 {"seed", c.seed},
                 {"max_quotient_crossings", caps},
                 {"max_crossings", c.max_crossings},
                 {"time_limit_ms", c.time_limit.count()},
                 {"use_cache", c.use_cache}};
  json summary = json::object();
  for (const auto& [name, counts] : s.summary()) summary[name] = counts_to_json(counts);
  json reports = json::array();
  for (const auto& r : s.reports) reports.push_back(report_to_json(r, include_timing));
  return {{"schema", kSchemaVersion},
          {"config", config},
          {"summary", summary},
          {"totals", counts_to_json(s.totals())},
          {"reports", reports}};
}

json cache_to_json(const MemoCache& cache) {
  json entries = json::object();
  for (const auto& [key, poly] : cache.entries()) entries[key] = to_string(poly);
  return {{"schema", kSchemaVersion}, {"entries", entries}};
}

void cache_from_json(const json& j, MemoCache& cache) {
  check_schema(j);
  for (const auto& [key, value] : field(j, "entries").items())
    cache.put(key, parse_polynomial(value.get<std::string>()));
}

}  // namespace pconway
