// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/grid/io.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "ucr/core/error.hpp"
#include "ucr/core/text.hpp"

namespace ucr::grid {
namespace {

using nlohmann::json;

std::string line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  const auto lines = std::count(text.begin(), text.begin() + end, '\n');
  return fmt::format("line {}", lines + 1);
}

// Typed field access that reports the JSON pointer of the offending field.
class Fields {
 public:
  Fields(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ParseError(path_, "expected an object");
  }

  const json& required(const char* key) const {
    const auto it = node_.find(key);
    if (it == node_.end()) {
      throw ParseError(path_ + "/" + key, "missing required field");
    }
    return *it;
  }

  double number(const char* key) const {
    const json& v = required(key);
    if (!v.is_number()) throw ParseError(path_ + "/" + key, "expected a number");
    return v.get<double>();
  }

  double number_or(const char* key, double fallback) const {
    return node_.contains(key) ? number(key) : fallback;
  }

  int integer(const char* key) const {
    const json& v = required(key);
    if (!v.is_number_integer()) {
      throw ParseError(path_ + "/" + key, "expected an integer");
    }
    return v.get<int>();
  }

  int integer_or(const char* key, int fallback) const {
    return node_.contains(key) ? integer(key) : fallback;
  }

  std::string string_or(const char* key, std::string fallback) const {
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ParseError(path_ + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
};

const json& array_field(const json& root, const char* key, bool required) {
  static const json kEmpty = json::array();
  const auto it = root.find(key);
  if (it == root.end()) {
    if (required) throw ParseError(std::string("/") + key, "missing section");
    return kEmpty;
  }
  if (!it->is_array()) throw ParseError(std::string("/") + key, "expected an array");
  return *it;
}

Matrix parse_output(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty()) {
    throw ParseError(path, "expected a non-empty array of per-period rows");
  }
  const std::size_t cols = node.front().is_array() ? node.front().size() : 0;
  Matrix out(node.size(), cols);
  for (std::size_t t = 0; t < node.size(); ++t) {
    const json& row = node[t];
    const std::string row_path = fmt::format("{}/{}", path, t);
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(row_path, fmt::format("expected {} scenario values", cols));
    }
    for (std::size_t s = 0; s < cols; ++s) {
      if (!row[s].is_number()) {
        throw ParseError(fmt::format("{}/{}", row_path, s), "expected a number");
      }
      out(t, s) = row[s].get<double>();
    }
  }
  return out;
}

}  // namespace

PowerSystem parse_system(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of(text, e.byte), e.what());
  }
  if (!root.is_object()) throw ParseError("line 1", "expected a JSON object");

  SystemData data;
  if (root.contains("meta")) {
    const Fields meta(root.at("meta"), "/meta");
    data.name = meta.string_or("name", "");
    data.horizon = meta.integer_or("horizon", data.horizon);
    data.reference_bus = meta.integer_or("reference_bus", -1);
    data.base_mva = meta.number_or("base_mva", data.base_mva);
    if (root.at("meta").contains("scenario_probabilities")) {
      const json& probs = root.at("meta").at("scenario_probabilities");
      if (!probs.is_array()) {
        throw ParseError("/meta/scenario_probabilities", "expected an array");
      }
      data.scenario_probabilities.clear();
      for (std::size_t s = 0; s < probs.size(); ++s) {
        if (!probs[s].is_number()) {
          throw ParseError(fmt::format("/meta/scenario_probabilities/{}", s),
                           "expected a number");
        }
        data.scenario_probabilities.push_back(probs[s].get<double>());
      }
    }
  }

  const json& buses = array_field(root, "buses", true);
  for (std::size_t i = 0; i < buses.size(); ++i) {
    const Fields f(buses[i], fmt::format("/buses/{}", i));
    data.buses.push_back({f.integer("id"), f.string_or("name", "")});
  }

  const json& gens = array_field(root, "generators", true);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Fields f(gens[i], fmt::format("/generators/{}", i));
    Generator g;
    g.id = f.integer("id");
    g.name = f.string_or("name", "");
    g.bus = f.integer("bus");
    g.p_min = f.number("p_min");
    g.p_max = f.number("p_max");
    g.cost_linear = f.number("cost_linear");
    g.cost_no_load = f.number("cost_no_load");
    g.cost_startup = f.number("cost_startup");
    g.ramp_hourly = f.number("ramp_hourly");
    g.ramp_startup = f.number("ramp_startup");
    g.ramp_shutdown = f.number("ramp_shutdown");
    g.ramp_10min = f.number("ramp_10min");
    g.min_up = f.integer("min_up");
    g.min_down = f.integer("min_down");
    data.generators.push_back(std::move(g));
  }

  const json& lines = array_field(root, "lines", false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Fields f(lines[i], fmt::format("/lines/{}", i));
    data.lines.push_back({f.integer("id"), f.integer("from_bus"),
                          f.integer("to_bus"), f.number("susceptance"),
                          f.number("flow_limit")});
  }

  const json& res = array_field(root, "renewables", false);
  for (std::size_t i = 0; i < res.size(); ++i) {
    const Fields f(res[i], fmt::format("/renewables/{}", i));
    RenewableUnit unit;
    unit.id = f.integer("id");
    unit.bus = f.integer("bus");
    unit.output = parse_output(f.required("output"), f.path() + "/output");
    data.renewables.push_back(std::move(unit));
  }

  return PowerSystem(std::move(data));
}

PowerSystem load_system(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw IoError("system file not found: " + path.string());
  }
  return parse_system(read_file(path));
}

std::string serialize_system(const PowerSystem& system) {
  const SystemData& d = system.data();
  json root;
  root["meta"] = {{"name", d.name},
                  {"horizon", d.horizon},
                  {"reference_bus", d.reference_bus},
                  {"base_mva", d.base_mva},
                  {"scenario_probabilities", d.scenario_probabilities}};
  root["buses"] = json::array();
  for (const Bus& b : d.buses) root["buses"].push_back({{"id", b.id}, {"name", b.name}});
  root["generators"] = json::array();
  for (const Generator& g : d.generators) {
    root["generators"].push_back({{"id", g.id},
                                  {"name", g.name},
                                  {"bus", g.bus},
                                  {"p_min", g.p_min},
                                  {"p_max", g.p_max},
                                  {"cost_linear", g.cost_linear},
                                  {"cost_no_load", g.cost_no_load},
                                  {"cost_startup", g.cost_startup},
                                  {"ramp_hourly", g.ramp_hourly},
                                  {"ramp_startup", g.ramp_startup},
                                  {"ramp_shutdown", g.ramp_shutdown},
                                  {"ramp_10min", g.ramp_10min},
                                  {"min_up", g.min_up},
                                  {"min_down", g.min_down}});
  }
  root["lines"] = json::array();
  for (const Line& l : d.lines) {
    root["lines"].push_back({{"id", l.id},
                             {"from_bus", l.from_bus},
                             {"to_bus", l.to_bus},
                             {"susceptance", l.susceptance},
                             {"flow_limit", l.flow_limit}});
  }
  root["renewables"] = json::array();
  for (const RenewableUnit& w : d.renewables) {
    json rows = json::array();
    for (std::size_t t = 0; t < w.output.rows(); ++t) {
      rows.push_back(std::vector<double>(w.output.row(t).begin(),
                                         w.output.row(t).end()));
    }
    root["renewables"].push_back({{"id", w.id}, {"bus", w.bus}, {"output", rows}});
  }
  return root.dump(2) + "\n";
}

void save_system(const PowerSystem& system, const std::filesystem::path& path) {
  write_file(path, serialize_system(system));
}

LoadProfile parse_profile(const std::string& text, const PowerSystem& system) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto where = [&] { return fmt::format("line {}", line_no); };

  const int nt = system.horizon();
  const int nb = system.bus_count();
  if (!std::getline(in, line)) throw ParseError("line 1", "empty load profile");
  ++line_no;
  const auto header = split(trim(line), ',');
  if (header.empty() || trim(header[0]) != "bus") {
    throw ParseError(where(), "header must start with 'bus'");
  }
  if (static_cast<int>(header.size()) - 1 != nt) {
    throw DimensionError(fmt::format(
        "load profile has {} periods, system horizon is {}", header.size() - 1, nt));
  }

  LoadProfile profile;
  profile.demand = Matrix(nb, nt);
  std::vector<bool> seen(nb, false);
  int rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (static_cast<int>(cells.size()) != nt + 1) {
      throw ParseError(where(), fmt::format("expected {} fields, found {}", nt + 1,
                                            cells.size()));
    }
    const int id = static_cast<int>(parse_long(cells[0], where()));
    int n = 0;
    try {
      n = system.bus_index(id);
    } catch (const ValidationError&) {
      throw ParseError(where(), fmt::format("unknown bus id {}", id));
    }
    if (seen[n]) throw ParseError(where(), fmt::format("duplicate bus {}", id));
    seen[n] = true;
    for (int t = 0; t < nt; ++t) {
      profile.demand(n, t) = parse_double(cells[t + 1], where());
    }
    ++rows;
  }
  if (rows != nb) {
    throw DimensionError(fmt::format(
        "load profile has {} bus rows, system has {} buses", rows, nb));
  }
  validate_profile(system, profile);
  return profile;
}

LoadProfile load_profile(const std::filesystem::path& path,
                         const PowerSystem& system) {
  if (!std::filesystem::exists(path)) {
    throw IoError("load profile not found: " + path.string());
  }
  return parse_profile(read_file(path), system);
}

std::string serialize_profile(const LoadProfile& profile,
                              const PowerSystem& system) {
  std::string out = "bus";
  for (int t = 0; t < system.horizon(); ++t) out += fmt::format(",t{}", t + 1);
  out += '\n';
  for (int n = 0; n < system.bus_count(); ++n) {
    out += std::to_string(system.bus(n).id);
    for (int t = 0; t < system.horizon(); ++t) {
      out += ',';
      out += format_double(profile.demand(n, t));
    }
    out += '\n';
  }
  return out;
}

void save_profile(const LoadProfile& profile, const PowerSystem& system,
                  const std::filesystem::path& path) {
  write_file(path, serialize_profile(profile, system));
}

}  // namespace ucr::grid
