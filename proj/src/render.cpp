#include "rbk/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "json.hpp"

namespace rbk {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

char verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::less_than: return '<';
    case Verdict::greater_than: return '>';
    case Verdict::equivalent: return '=';
    case Verdict::incomparable: return '#';
  }
  return '?';
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string render_text(const RankingReport& report) {
  const std::size_t n = report.ids.size();
  std::string out = "candidates: " + join(report.ids, " ") + "\n";

  // violation table: one row per rule, one column per candidate
  std::vector<std::string> rule_ids;
  for (const auto& [rule, value] : report.profiles.front().values()) {
    (void)value;
    rule_ids.push_back(rule);
  }
  std::size_t rule_width = 4;
  for (const auto& r : rule_ids) rule_width = std::max(rule_width, r.size());
  std::vector<std::size_t> col_width(n);
  for (std::size_t j = 0; j < n; ++j) {
    col_width[j] = report.ids[j].size();
    for (const auto& r : rule_ids) {
      col_width[j] = std::max(col_width[j], fmt(report.profiles[j].value(r)).size());
    }
  }
  out += pad_right("rule", rule_width);
  for (std::size_t j = 0; j < n; ++j) out += " | " + pad_left(report.ids[j], col_width[j]);
  out += "\n";
  for (const auto& r : rule_ids) {
    out += pad_right(r, rule_width);
    for (std::size_t j = 0; j < n; ++j) {
      out += " | " + pad_left(fmt(report.profiles[j].value(r)), col_width[j]);
    }
    out += "\n";
  }

  out += "verdicts (row vs column, '<' row preferred, '#' incomparable):\n";
  std::size_t id_width = 1;
  for (const auto& id : report.ids) id_width = std::max(id_width, id.size());
  out += std::string(id_width, ' ');
  for (const auto& id : report.ids) out += " " + pad_left(id, id_width);
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += pad_right(report.ids[i], id_width);
    for (std::size_t j = 0; j < n; ++j) {
      out += " " + pad_left(std::string(1, verdict_symbol(report.verdicts[i][j])), id_width);
    }
    out += "\n";
  }

  out += "minimal: " + join(report.minimal, " ") + "\n";
  if (report.minimal_all != report.minimal) {
    out += "minimal with ties: " + join(report.minimal_all, " ") + "\n";
  }
  if (report.total_order) {
    out += "total order: " + join(*report.total_order, " < ") + "\n";
  } else {
    out += "order: partial\n";
  }
  if (!report.hasse_edges.empty()) {
    std::vector<std::string> edges;
    for (const auto& [lower, higher] : report.hasse_edges) edges.push_back(lower + " < " + higher);
    out += "hasse: " + join(edges, ", ") + "\n";
  }
  out += "selected: " + report.minimal.front() + "\n";
  return out;
}

std::string render_csv(const RankingReport& report) {
  std::string out = "candidate,rule,value\n";
  for (std::size_t i = 0; i < report.ids.size(); ++i) {
    for (const auto& [rule, value] : report.profiles[i].values()) {
      out += report.ids[i] + "," + rule + "," + fmt(value) + "\n";
    }
  }
  return out;
}

std::string render_json_report(const RankingReport& report) {
  nlohmann::json doc;
  doc["candidates"] = report.ids;
  nlohmann::json profiles = nlohmann::json::object();
  for (std::size_t i = 0; i < report.ids.size(); ++i) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto& [rule, value] : report.profiles[i].values()) row[rule] = value;
    profiles[report.ids[i]] = std::move(row);
  }
  doc["profiles"] = std::move(profiles);
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& row : report.verdicts) {
    nlohmann::json line = nlohmann::json::array();
    for (Verdict v : row) line.push_back(to_string(v));
    verdicts.push_back(std::move(line));
  }
  doc["verdicts"] = std::move(verdicts);
  doc["minimal"] = report.minimal;
  doc["minimal_all"] = report.minimal_all;
  if (report.total_order) doc["total_order"] = *report.total_order;
  nlohmann::json hasse = nlohmann::json::array();
  for (const auto& [lower, higher] : report.hasse_edges) {
    hasse.push_back(nlohmann::json::array({lower, higher}));
  }
  doc["hasse"] = std::move(hasse);
  doc["selected"] = report.minimal.front();
  return doc.dump(1) + "\n";
}

namespace {

constexpr double kScale = 20.0;  // px per meter
constexpr double kMargin = 2.0;  // meters around the content

struct Frame {
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;

  void add(geo::Vec2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  void add(const std::vector<geo::Vec2>& pts) {
    for (auto p : pts) add(p);
  }
  double px(double x) const { return (x - min_x + kMargin) * kScale; }
  double py(double y) const { return (max_y + kMargin - y) * kScale; }  // y up -> y down
  double width() const { return (max_x - min_x + 2 * kMargin) * kScale; }
  double height() const { return (max_y - min_y + 2 * kMargin) * kScale; }
};

std::string fmt_px(double v) {
  return fmt(std::round(v * 100.0) / 100.0);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string point_list(const Frame& frame, const std::vector<geo::Vec2>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) out += " ";
    out += fmt_px(frame.px(pts[i].x)) + "," + fmt_px(frame.py(pts[i].y));
  }
  return out;
}

std::string boundary_style(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::dashed: return " stroke-dasharray=\"8 6\"";
    case BoundaryKind::solid: return "";
    case BoundaryKind::double_solid: return " stroke-width=\"3\"";
  }
  return "";
}

}  // namespace

std::string render_svg(const ScenarioDoc& scenario, const RankingReport& report) {
  const World& world = *scenario.world;
  Frame frame;
  for (const auto& lane : world.lanes) {
    frame.add(lane.left.points());
    frame.add(lane.right.points());
  }
  for (const auto& poly : world.intersections) frame.add(poly.points);
  for (const auto& box : world.obstacles) frame.add(box.corners());
  for (const auto& agent : world.agents) {
    frame.add(agent.box_at(agent.trajectory.start_time()).corners());
    for (const auto& s : agent.trajectory.samples) frame.add(geo::Vec2{s.x, s.y});
  }
  for (const auto& cand : scenario.candidates) {
    for (const auto& s : cand.samples) frame.add(geo::Vec2{s.x, s.y});
  }

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_px(frame.width()) +
         "\" height=\"" + fmt_px(frame.height()) + "\" viewBox=\"0 0 " + fmt_px(frame.width()) +
         " " + fmt_px(frame.height()) + "\">\n";

  svg += "<g class=\"lanes\">\n";
  for (const auto& lane : world.lanes) {
    svg += "<polygon points=\"" + point_list(frame, lane.polygon().points) +
           "\" fill=\"#f2f2f2\" stroke=\"none\"/>\n";
  }
  for (const auto& lane : world.lanes) {
    svg += "<polyline points=\"" + point_list(frame, lane.centerline.points()) +
           "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\" stroke-dasharray=\"2 10\"/>\n";
    svg += "<polyline points=\"" + point_list(frame, lane.left.points()) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\"" +
           boundary_style(lane.left_kind) + "/>\n";
    svg += "<polyline points=\"" + point_list(frame, lane.right.points()) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\"" +
           boundary_style(lane.right_kind) + "/>\n";
  }
  svg += "</g>\n";

  if (!world.intersections.empty()) {
    svg += "<g class=\"intersections\">\n";
    for (const auto& poly : world.intersections) {
      svg += "<polygon points=\"" + point_list(frame, poly.points) +
             "\" fill=\"#dde6f0\" stroke=\"#8899aa\" stroke-width=\"1\"/>\n";
    }
    svg += "</g>\n";
  }

  if (!world.obstacles.empty()) {
    svg += "<g class=\"obstacles\">\n";
    for (const auto& box : world.obstacles) {
      svg += "<polygon points=\"" + point_list(frame, box.corners()) +
             "\" fill=\"#e8a33d\" stroke=\"#7a5210\" stroke-width=\"1\"/>\n";
    }
    svg += "</g>\n";
  }

  if (!world.agents.empty()) {
    svg += "<g class=\"agents\">\n";
    for (const auto& agent : world.agents) {
      std::vector<geo::Vec2> track;
      for (const auto& s : agent.trajectory.samples) track.push_back({s.x, s.y});
      svg += "<polyline points=\"" + point_list(frame, track) +
             "\" fill=\"none\" stroke=\"#5577bb\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n";
      svg += "<polygon points=\"" +
             point_list(frame, agent.box_at(agent.trajectory.start_time()).corners()) +
             "\" fill=\"#7d9bd1\" stroke=\"#33518a\" stroke-width=\"1\"/>\n";
    }
    svg += "</g>\n";
  }

  static const char* kPalette[] = {"#b3261e", "#2e7d32", "#1565c0",
                                   "#7b1fa2", "#ef6c00", "#00838f"};
  const std::string selected = report.minimal.front();
  svg += "<g class=\"candidates\">\n";
  for (std::size_t i = 0; i < scenario.candidates.size(); ++i) {
    const Trajectory& cand = scenario.candidates[i];
    std::string d;
    for (std::size_t k = 0; k < cand.samples.size(); ++k) {
      d += (k == 0 ? "M " : " L ");
      d += fmt_px(frame.px(cand.samples[k].x)) + " " + fmt_px(frame.py(cand.samples[k].y));
    }
    const bool is_selected = cand.id == selected;
    svg += "<path id=\"candidate-" + xml_escape(cand.id) + "\" class=\"candidate" +
           (is_selected ? std::string(" selected") : std::string()) + "\" d=\"" + d +
           "\" fill=\"none\" stroke=\"" + kPalette[i % 6] + "\" stroke-width=\"" +
           (is_selected ? "3.5" : "2") + "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace rbk
