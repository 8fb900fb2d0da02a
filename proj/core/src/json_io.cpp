#include "qtop/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qtop::io {

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("IOError", "cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("ParseError", path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw error("IOError", "cannot write " + path);
  out << content;
}

std::vector<int> json_to_indices(const ordered_json& arr) {
  if (!arr.is_array()) throw error("ParseError", "expected an array of indices");
  std::vector<int> out;
  for (const auto& v : arr) out.push_back(v.get<int>());
  return out;
}

namespace {

int default_truncation_depth() {
  if (const char* env = std::getenv("QTOP_DEPTH_DEFAULT")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 10;
}

}  // namespace

LoadedSpace parse_space_json(const ordered_json& j) {
  LoadedSpace out;
  if (j.contains("catalog")) {
    auto tag = topo::tag_from_name(j.at("catalog").get<std::string>());
    if (!tag.has_value())
      throw error("ParseError", "unknown catalog name " + j.at("catalog").dump());
    int depth = j.value("depth", default_truncation_depth());
    out.catalog = topo::make_catalog(*tag, depth);
    out.space = out.catalog->window;
    return out;
  }
  auto points = j.at("points");
  int n = (int)points.size();
  std::vector<std::string> names;
  for (const auto& p : points) names.push_back(p.get<std::string>());
  std::vector<topo::Mask> opens;
  for (const auto& o : j.at("opens")) {
    topo::Mask m = 0;
    for (const auto& v : o) {
      int idx = v.get<int>();
      if (idx < 0 || idx >= n) throw error("PointOutOfRange", "open mentions " + std::to_string(idx));
      m |= topo::bit(idx);
    }
    opens.push_back(m);
  }
  out.space = topo::space_from_opens(n, opens, std::move(names));
  return out;
}

LoadedSpace load_space_file(const std::string& path) {
  return parse_space_json(read_json_file(path));
}

qm::QMetric parse_metric_json(const ordered_json& j) {
  qm::QMetric d;
  for (const auto& p : j.at("points")) d.labels.push_back(p.get<std::string>());
  int n = (int)d.labels.size();
  const auto& table = j.at("table");
  if ((int)table.size() != n) throw error("ParseError", "table must be n x n");
  for (const auto& row : table) {
    if ((int)row.size() != n) throw error("ParseError", "table must be n x n");
    std::vector<Rat> r;
    for (const auto& cell : row) r.push_back(Rat::parse(cell.get<std::string>()));
    d.dist.push_back(std::move(r));
  }
  return d;
}

qm::QMetric load_metric_file(const std::string& path) {
  return parse_metric_json(read_json_file(path));
}

ordered_json metric_to_json(const qm::QMetric& d) {
  ordered_json j;
  j["points"] = d.labels;
  ordered_json table = ordered_json::array();
  for (const auto& row : d.dist) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row) r.push_back(cell.str());
    table.push_back(r);
  }
  j["table"] = table;
  return j;
}

dom::FinPoset load_poset_file(const std::string& path) {
  auto j = read_json_file(path);
  std::vector<std::string> names;
  for (const auto& e : j.at("elements")) names.push_back(e.get<std::string>());
  int n = (int)names.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  const auto& rows = j.at("le");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) le[x][y] = rows.at(x).at(y).get<bool>();
  return dom::poset_from_le(n, le, std::move(names));
}

dom::Pi02Presentation parse_presentation_json(const ordered_json& j) {
  dom::Pi02Presentation pres;
  pres.depth = j.at("depth").get<int>();
  for (const auto& pr : j.at("pairs")) {
    dom::Pi02Presentation::Pair pair;
    for (const auto& g : pr.at("U")) {
      topo::Mask m = 0;
      for (const auto& v : g) {
        int b = v.get<int>();
        if (b < 0 || b >= pres.depth)
          throw error("DepthExceeded", "generator element outside the window");
        m |= topo::bit(b);
      }
      pair.U_gens.push_back(m);
    }
    for (const auto& g : pr.at("V")) {
      topo::Mask m = 0;
      for (const auto& v : g) {
        int b = v.get<int>();
        if (b < 0 || b >= pres.depth)
          throw error("DepthExceeded", "generator element outside the window");
        m |= topo::bit(b);
      }
      pair.V_gens.push_back(m);
    }
    pres.pairs.push_back(std::move(pair));
  }
  return pres;
}

dom::Pi02Presentation load_presentation_file(const std::string& path) {
  return parse_presentation_json(read_json_file(path));
}

std::vector<qm::Pi2Pair> load_pi2_pairs_file(const std::string& path,
                                             const topo::FiniteSpace& sp) {
  auto j = read_json_file(path);
  std::vector<qm::Pi2Pair> out;
  for (const auto& pr : j.at("pairs")) {
    qm::Pi2Pair pair;
    for (int i : json_to_indices(pr.at("U"))) pair.U |= topo::bit(i);
    for (int i : json_to_indices(pr.at("A"))) pair.A |= topo::bit(i);
    (void)sp;
    out.push_back(pair);
  }
  return out;
}

repr::PrefixFun load_prefix_fun_file(const std::string& path) {
  auto j = read_json_file(path);
  int alphabet = j.at("alphabet").get<int>();
  int depth = j.at("depth").get<int>();
  if (j.contains("rule")) {
    std::string rule = j.at("rule").get<std::string>();
    if (rule == "delta") return repr::PrefixFun::delta(alphabet, depth);
    if (rule == "empty") return repr::PrefixFun::constant(alphabet, depth, 0);
    if (rule == "head-parity")
      return repr::PrefixFun::from_rule(alphabet, depth, [](const repr::Seq& s) {
        return s.empty() ? topo::Mask(0) : topo::bit(s[0] % 2);
      });
    throw error("ParseError", "unknown rule " + rule);
  }
  repr::PrefixFun f;
  f.alphabet = alphabet;
  f.depth = depth;
  for (const auto& [key, val] : j.at("table").items()) {
    repr::Seq s;
    for (char c : key) {
      if (c < '0' || c > '9') throw error("ParseError", "sequence keys are digit strings");
      s.push_back(c - '0');
    }
    topo::Mask m = 0;
    for (const auto& v : val) m |= topo::bit(v.get<int>());
    f.table[s] = m;
  }
  f.validate();
  return f;
}

namespace {

ordered_json mask_to_names(const topo::FiniteSpace& sp, topo::Mask m) {
  ordered_json arr = ordered_json::array();
  for (int i : topo::mask_to_indices(m)) arr.push_back(sp.name_of(i));
  return arr;
}

}  // namespace

ordered_json transcript_to_json(const topo::FiniteSpace& sp, const game::Transcript& t) {
  ordered_json rounds = ordered_json::array();
  for (const auto& r : t.rounds) {
    ordered_json jr;
    jr["x"] = sp.name_of(r.x);
    jr["U"] = mask_to_names(sp, r.U);
    jr["V"] = mask_to_names(sp, r.V);
    if (r.radius.has_value()) jr["radius"] = r.radius->str();
    rounds.push_back(jr);
  }
  ordered_json j;
  j["rounds"] = rounds;
  return j;
}

ordered_json verdict_to_json(const topo::FiniteSpace& sp, const game::Verdict& v) {
  ordered_json j;
  switch (v.status) {
    case game::VerdictStatus::WonByRefinement:
      j["status"] = "won-by-refinement";
      j["point"] = sp.name_of(v.point);
      j["round"] = v.round;
      break;
    case game::VerdictStatus::Undecided:
      j["status"] = "undecided";
      break;
    case game::VerdictStatus::MalformedRun:
      j["status"] = "malformed-run";
      j["round"] = v.round;
      break;
  }
  j["horizon"] = v.horizon;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

}  // namespace qtop::io
