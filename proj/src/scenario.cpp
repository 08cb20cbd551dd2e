#include "rbk/scenario.hpp"

#include <set>
#include <utility>

#include "json.hpp"
#include "rbk/error.hpp"

namespace rbk {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw SemanticError("schema error at " + (path.empty() ? "/" : path) + ": " + what);
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path + "/" + key, "missing required field");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) schema_fail(path, "expected a number");
  return v.get<double>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) schema_fail(path, "expected a string");
  return v.get<std::string>();
}

geo::Vec2 point_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) schema_fail(path, "expected a point [x, y]");
  return {number_at(v[0], path + "/0"), number_at(v[1], path + "/1")};
}

std::vector<geo::Vec2> points_at(const json& v, const std::string& path) {
  if (!v.is_array()) schema_fail(path, "expected an array of points");
  std::vector<geo::Vec2> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(point_at(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

geo::Polyline polyline_at(const json& v, const std::string& path, const std::string& label) {
  auto pts = points_at(v, path);
  if (pts.size() < 2) schema_fail(path, "a polyline needs at least 2 points");
  geo::Polyline line(std::move(pts));
  if (line.self_intersects()) {
    throw SemanticError(label + " polyline self-intersects (" + path + ")");
  }
  return line;
}

BoundaryKind boundary_kind_at(const json& v, const std::string& path) {
  const std::string s = string_at(v, path);
  if (s == "dashed") return BoundaryKind::dashed;
  if (s == "solid") return BoundaryKind::solid;
  if (s == "double_solid") return BoundaryKind::double_solid;
  schema_fail(path, "expected one of dashed, solid, double_solid");
}

FootprintSpec footprint_at(const json& v, const std::string& path) {
  FootprintSpec fp;
  fp.length = number_at(field(v, path, "length"), path + "/length");
  fp.width = number_at(field(v, path, "width"), path + "/width");
  if (fp.length <= 0.0 || fp.width <= 0.0) schema_fail(path, "extents must be positive");
  return fp;
}

Trajectory trajectory_at(const json& v, const std::string& path) {
  Trajectory traj;
  traj.id = string_at(field(v, path, "id"), path + "/id");
  const json& samples = field(v, path, "samples");
  if (!samples.is_array()) schema_fail(path + "/samples", "expected an array");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string spath = path + "/samples/" + std::to_string(i);
    const json& s = samples[i];
    if (!s.is_array() || s.size() != 5) {
      schema_fail(spath, "expected a sample [t, x, y, heading, speed]");
    }
    traj.samples.push_back({number_at(s[0], spath + "/0"), number_at(s[1], spath + "/1"),
                            number_at(s[2], spath + "/2"), number_at(s[3], spath + "/3"),
                            number_at(s[4], spath + "/4")});
  }
  traj.validate();
  return traj;
}

geo::OrientedBox obstacle_at(const json& v, const std::string& path) {
  geo::OrientedBox box;
  box.center = point_at(field(v, path, "center"), path + "/center");
  box.half_length = number_at(field(v, path, "length"), path + "/length") / 2.0;
  box.half_width = number_at(field(v, path, "width"), path + "/width") / 2.0;
  if (box.half_length <= 0.0 || box.half_width <= 0.0) {
    schema_fail(path, "extents must be positive");
  }
  if (auto it = v.find("heading"); it != v.end()) {
    box.heading = number_at(*it, path + "/heading");
  }
  return box;
}

Lane lane_at(const json& v, const std::string& path) {
  Lane lane;
  lane.id = string_at(field(v, path, "id"), path + "/id");
  lane.centerline = polyline_at(field(v, path, "centerline"), path + "/centerline",
                                "lane '" + lane.id + "' centerline");
  lane.left = polyline_at(field(v, path, "left"), path + "/left",
                          "lane '" + lane.id + "' left boundary");
  lane.right = polyline_at(field(v, path, "right"), path + "/right",
                           "lane '" + lane.id + "' right boundary");
  lane.left_kind = boundary_kind_at(field(v, path, "left_kind"), path + "/left_kind");
  lane.right_kind = boundary_kind_at(field(v, path, "right_kind"), path + "/right_kind");
  return lane;
}

Agent agent_at(const json& v, const std::string& path) {
  Agent agent;
  const std::string cls = string_at(field(v, path, "class"), path + "/class");
  if (cls == "vehicle") {
    agent.cls = AgentClass::vehicle;
  } else if (cls == "human") {
    agent.cls = AgentClass::human;
  } else {
    schema_fail(path + "/class", "expected vehicle or human");
  }
  agent.footprint = footprint_at(field(v, path, "footprint"), path + "/footprint");
  agent.trajectory = trajectory_at(field(v, path, "trajectory"), path + "/trajectory");
  return agent;
}

}  // namespace

CandidateSet ScenarioDoc::candidate_set() const {
  CandidateSet cs;
  for (const auto& traj : candidates) {
    cs.realizations.push_back({traj, ego_footprint, world});
  }
  return cs;
}

ScenarioDoc parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, "invalid JSON");
  }

  const std::string format = string_at(field(root, "", "format"), "/format");
  if (format != "rbk-scenario/1") {
    schema_fail("/format", "unsupported format '" + format + "' (expected rbk-scenario/1)");
  }

  ScenarioDoc doc;
  if (auto it = root.find("params"); it != root.end()) {
    const json& p = *it;
    if (!p.is_object()) schema_fail("/params", "expected an object");
    auto opt = [&](const char* key, double& slot) {
      if (auto f = p.find(key); f != p.end()) {
        slot = number_at(*f, std::string("/params/") + key);
      }
    };
    opt("c0", doc.params.c0);
    opt("d_lc", doc.params.d_lc);
    opt("a_max", doc.params.a_max);
    opt("speed_limit", doc.params.speed_limit);
    opt("c_tau", doc.params.c_tau);
    opt("collision_step", doc.params.collision_step);
    opt("ego_mass", doc.params.ego_mass);
    for (const auto& [key, value] : p.items()) {
      static const std::set<std::string> known = {"c0",    "d_lc",           "a_max",
                                                  "speed_limit", "c_tau",
                                                  "collision_step", "ego_mass"};
      (void)value;
      if (!known.count(key)) schema_fail("/params/" + key, "unknown parameter");
    }
  }
  doc.params.validate();

  doc.ego_footprint = footprint_at(field(root, "", "ego_footprint"), "/ego_footprint");

  auto world = std::make_shared<World>();
  const json& w = field(root, "", "world");
  if (!w.is_object()) schema_fail("/world", "expected an object");
  if (auto it = w.find("lanes"); it != w.end()) {
    if (!it->is_array()) schema_fail("/world/lanes", "expected an array");
    std::set<std::string> lane_ids;
    for (std::size_t i = 0; i < it->size(); ++i) {
      Lane lane = lane_at((*it)[i], "/world/lanes/" + std::to_string(i));
      if (!lane_ids.insert(lane.id).second) {
        throw SemanticError("duplicate lane id '" + lane.id + "'");
      }
      world->lanes.push_back(std::move(lane));
    }
  }
  if (auto it = w.find("intersections"); it != w.end()) {
    if (!it->is_array()) schema_fail("/world/intersections", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "/world/intersections/" + std::to_string(i);
      auto pts = points_at((*it)[i], path);
      if (pts.size() < 3) schema_fail(path, "a region needs at least 3 points");
      world->intersections.push_back(geo::Polygon{std::move(pts)});
    }
  }
  if (auto it = w.find("obstacles"); it != w.end()) {
    if (!it->is_array()) schema_fail("/world/obstacles", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      world->obstacles.push_back(obstacle_at((*it)[i], "/world/obstacles/" + std::to_string(i)));
    }
  }
  if (auto it = w.find("agents"); it != w.end()) {
    if (!it->is_array()) schema_fail("/world/agents", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      world->agents.push_back(agent_at((*it)[i], "/world/agents/" + std::to_string(i)));
    }
  }
  doc.world = world;

  const json& cands = field(root, "", "candidates");
  if (!cands.is_array() || cands.empty()) {
    schema_fail("/candidates", "expected a non-empty array");
  }
  std::set<std::string> cand_ids;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    Trajectory traj = trajectory_at(cands[i], "/candidates/" + std::to_string(i));
    if (!cand_ids.insert(traj.id).second) {
      throw SemanticError("duplicate candidate id '" + traj.id + "'");
    }
    doc.candidates.push_back(std::move(traj));
  }
  return doc;
}

}  // namespace rbk
