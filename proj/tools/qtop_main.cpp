// qtop: exact-arithmetic workbench for finite topologies, quasi-metrics,
// symbolic set expressions, refinement games, domain embeddings and
// prefix-level representation machinery.
//
// Exit codes: 0 pass, 1 fail with witness, 2 undecided at depth, 3 usage/IO.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qtop/borel.hpp"
#include "qtop/catalog.hpp"
#include "qtop/domain.hpp"
#include "qtop/game.hpp"
#include "qtop/json_io.hpp"
#include "qtop/qmetric.hpp"
#include "qtop/repr.hpp"
#include "qtop/space.hpp"
#include "qtop/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qtop;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 3;

int default_depth() {
  if (const char* env = std::getenv("QTOP_DEPTH_DEFAULT")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 10;
}

void emit(const ordered_json& j, bool json_out) {
  if (json_out) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // Text view of the same payload.
  for (auto it = j.begin(); it != j.end(); ++it)
    std::cout << it.key() << ": " << it.value().dump() << "\n";
}

int cmd_space_check(const std::string& file, bool json_out) {
  auto loaded = io::load_space_file(file);
  const topo::FiniteSpace& sp = loaded.space;
  ordered_json j;
  j["points"] = sp.n;
  j["basic_opens"] = sp.basics.size();
  bool t0 = topo::is_T0(sp);
  j["T0"] = t0;
  j["T1"] = topo::is_T1(sp);
  j["TD"] = topo::is_TD(sp);
  if (loaded.is_catalog()) {
    j["catalog"] = topo::tag_name(loaded.catalog->tag);
    j["depth"] = loaded.catalog->depth;
    auto sober = topo::sober_bounded(*loaded.catalog);
    j["sober"] = sober.refuted ? "refuted" : "no-witness";
    j["sober_detail"] = sober.detail;
    auto tables = topo::spot_check_tables(*loaded.catalog);
    j["tables_consistent"] = tables.consistent;
    emit(j, json_out);
    return sober.refuted ? kExitPass : kExitUndecided;
  }
  if (t0) {
    auto sober = topo::is_sober(sp);
    j["sober"] = sober.sober;
  } else {
    j["sober"] = "requires-T0";
  }
  auto cb = topo::cb_rank(sp);
  j["cb_rank"] = cb.rank;
  j["scattered"] = cb.scattered;
  emit(j, json_out);
  return kExitPass;
}

int cmd_borel_classify(const std::string& space_file, const std::string& expr_text,
                       bool json_out) {
  auto loaded = io::load_space_file(space_file);
  auto e = borel::parse_sexpr(expr_text);
  ordered_json j;
  j["expr"] = borel::print_sexpr(e);
  j["level_bound"] = borel::level_of(e).str();
  ordered_json table = ordered_json::array();
  for (int x = 0; x < loaded.space.n; ++x) {
    ordered_json row;
    row["point"] = loaded.space.name_of(x);
    row["in"] = borel::eval(e, loaded.space, x);
    table.push_back(row);
  }
  j["truth_table"] = table;
  emit(j, json_out);
  return kExitPass;
}

int cmd_qm_check(const std::string& file, bool json_out) {
  auto d = io::load_metric_file(file);
  auto rep = qm::qm_axioms_check(d);
  ordered_json j;
  j["points"] = d.n();
  j["ok"] = rep.ok();
  ordered_json viol = ordered_json::array();
  for (const auto& v : rep.violations) {
    ordered_json jv;
    jv["kind"] = v.kind;
    jv["x"] = v.x;
    jv["y"] = v.y;
    if (v.z >= 0) jv["z"] = v.z;
    viol.push_back(jv);
  }
  j["violations"] = viol;
  emit(j, json_out);
  return rep.ok() ? kExitPass : kExitFail;
}

int cmd_qm_derive_pi2(const std::string& space_file, const std::string& pairs_file,
                      bool json_out) {
  auto loaded = io::load_space_file(space_file);
  auto pairs = io::load_pi2_pairs_file(pairs_file, loaded.space);
  auto d = qm::order_qm(loaded.space);
  auto sub = qm::pi2_subspace_qm(loaded.space, d, pairs);
  ordered_json j;
  ordered_json pts = ordered_json::array();
  for (int p : sub.points) pts.push_back(loaded.space.name_of(p));
  j["subspace_points"] = pts;
  j["metric"] = io::metric_to_json(sub.dprime);
  j["axioms_ok"] = qm::qm_axioms_check(sub.dprime).ok();
  j["topology_matches"] =
      qm::ball_topology_equals_subspace(loaded.space, sub.points, sub.dprime);
  emit(j, json_out);
  return (j["axioms_ok"].get<bool>() && j["topology_matches"].get<bool>())
             ? kExitPass
             : kExitFail;
}

game::Responder make_responder(const std::string& name, const io::LoadedSpace& loaded) {
  if (name == "qm-d1" && loaded.is_catalog())
    return game::qm_strategy(qm::catalog_qm(*loaded.catalog));
  if (name == "qm-d2" && loaded.is_catalog())
    return game::qm_strategy(qm::catalog_qm_d2(*loaded.catalog));
  if (name == "qm-order") return game::qm_strategy(qm::order_qm(loaded.space));
  if (name == "min-nbhd") return game::min_nbhd_strategy();
  if (name == "scattered") return game::scattered_strategy(loaded.space);
  throw error("Usage", "unknown responder " + name);
}

game::Challenger make_challenger(const std::string& name) {
  if (name == "chain") return game::chain_walker();
  if (name == "random") return game::random_legal();
  if (name == "sticker") return game::point_sticker();
  throw error("Usage", "unknown challenger " + name);
}

int verdict_exit(const game::Verdict& v) {
  switch (v.status) {
    case game::VerdictStatus::WonByRefinement: return kExitPass;
    case game::VerdictStatus::Undecided: return kExitUndecided;
    case game::VerdictStatus::MalformedRun: return kExitFail;
  }
  return kExitFail;
}

int cmd_game_play(const std::string& space_file, const std::string& p1,
                  const std::string& p2, int rounds, std::uint64_t seed,
                  bool json_out) {
  auto loaded = io::load_space_file(space_file);
  game::Arena arena = loaded.is_catalog() ? game::Arena::catalog(*loaded.catalog)
                                          : game::Arena::finite(loaded.space);
  auto run = game::play(arena, make_challenger(p1), make_responder(p2, loaded),
                        rounds, seed);
  ordered_json j;
  j["arena"] = arena.name;
  j["p1"] = p1;
  j["p2"] = p2;
  j["transcript"] = io::transcript_to_json(loaded.space, run.transcript);
  j["verdict"] = io::verdict_to_json(loaded.space, run.verdict);
  emit(j, json_out);
  return verdict_exit(run.verdict);
}

int cmd_game_tournament(const std::string& config_file, bool json_out) {
  auto cfg = io::read_json_file(config_file);
  int rounds = cfg.value("rounds", 10);
  std::uint64_t seed = cfg.value("seed", 1);
  // Space paths resolve relative to the config file.
  std::string base;
  if (auto slash = config_file.find_last_of('/'); slash != std::string::npos)
    base = config_file.substr(0, slash + 1);
  ordered_json table = ordered_json::array();
  int exit = kExitPass;
  for (const auto& sf : cfg.at("spaces")) {
    std::string path = sf.get<std::string>();
    if (!path.empty() && path[0] != '/') path = base + path;
    auto loaded = io::load_space_file(path);
    game::Arena arena = loaded.is_catalog() ? game::Arena::catalog(*loaded.catalog)
                                            : game::Arena::finite(loaded.space);
    for (const auto& p1 : cfg.at("p1"))
      for (const auto& p2 : cfg.at("p2")) {
        auto run = game::play(arena, make_challenger(p1.get<std::string>()),
                              make_responder(p2.get<std::string>(), loaded), rounds,
                              seed);
        ordered_json row;
        row["space"] = sf.get<std::string>();
        row["p1"] = p1;
        row["p2"] = p2;
        row["verdict"] = io::verdict_to_json(loaded.space, run.verdict);
        table.push_back(row);
        exit = std::max(exit, verdict_exit(run.verdict));
      }
  }
  ordered_json j;
  j["rounds"] = rounds;
  j["results"] = table;
  emit(j, json_out);
  return exit;
}

int cmd_domain_embed(const std::string& pres_file, int max_n, bool json_out) {
  auto pres = io::load_presentation_file(pres_file);
  auto universe = dom::fxomega_universe(pres, max_n);
  ordered_json j;
  j["depth"] = pres.depth;
  j["pairs"] = pres.pairs.size();
  j["universe_size"] = universe.size();
  j["approximation"] =
      "membership in the generator-consistent family is decided inside the "
      "window only";
  ordered_json elems = ordered_json::array();
  for (size_t i = 0; i < universe.size() && i < 64; ++i) {
    ordered_json e;
    e["F"] = topo::mask_to_indices(universe[i].F);
    e["n"] = universe[i].n;
    elems.push_back(e);
  }
  j["elements"] = elems;
  // phi samples at the window's top point when it belongs to the space.
  Mask top = topo::full_mask(pres.depth);
  if (dom::member_X(pres, top)) {
    auto phi = dom::phi_map(pres, top, max_n);
    ordered_json s;
    s["size"] = phi.elems.size();
    s["lower_set"] = phi.lower_set;
    s["directed"] = phi.directed_witnesses_found;
    j["phi_at_window_top"] = s;
  }
  emit(j, json_out);
  return kExitPass;
}

int cmd_repr_translate(const std::string& table_file, int depth, bool json_out) {
  auto f = io::load_prefix_fun_file(table_file);
  auto rep = repr::check_factorization(f, f.alphabet, std::min(depth, f.depth));
  ordered_json j;
  j["alphabet"] = f.alphabet;
  j["depth"] = std::min(depth, f.depth);
  j["prefixes_checked"] = rep.prefixes_checked;
  j["factorization_ok"] = rep.ok;
  emit(j, json_out);
  return rep.ok ? kExitPass : kExitFail;
}

int cmd_repr_fcheck(const std::string& file, bool json_out) {
  auto doc = io::read_json_file(file);
  ordered_json j;
  bool all = true;
  if (doc.contains("seqs")) {
    // Explicit tables: {"seqs": [[..]], "images": [[pt..]], "F": [..]}.
    repr::ReprTables tables;
    for (const auto& s : doc.at("seqs"))
      tables.seqs.push_back(io::json_to_indices(s));
    for (const auto& img : doc.at("images"))
      tables.images.push_back(topo::indices_to_mask(io::json_to_indices(img)));
    auto F = io::json_to_indices(doc.at("F"));
    auto rep = repr::f_conditions_check(F, tables);
    j["conditions"] = rep.all_conditions();
    j["formulas_agree"] = rep.formulations_agree;
    if (rep.witness.has_value()) j["witness"] = {rep.witness->first, rep.witness->second};
    all = rep.all_conditions() && rep.formulations_agree;
  } else {
    // A space file: run the point filters of an extracted tree.
    auto loaded = io::parse_space_json(doc);
    game::Arena arena = game::Arena::finite(loaded.space);
    auto tree = game::extract_representation(arena, game::min_nbhd_strategy(), 3);
    repr::ReprTables tables;
    for (auto& node : tree.nodes) {
      tables.seqs.push_back(node.sigma);
      tables.images.push_back(node.open);
    }
    ordered_json rows = ordered_json::array();
    for (int x = 0; x < loaded.space.n; ++x) {
      std::vector<int> F;
      for (int i = 0; i < tables.count(); ++i)
        if (topo::has(tables.images[i], x)) F.push_back(i);
      auto rep = repr::f_conditions_check(F, tables);
      ordered_json row;
      row["point"] = loaded.space.name_of(x);
      row["conditions"] = rep.all_conditions();
      row["formulas_agree"] = rep.formulations_agree;
      rows.push_back(row);
      all = all && rep.all_conditions() && rep.formulations_agree;
    }
    j["per_point"] = rows;
  }
  j["ok"] = all;
  emit(j, json_out);
  return all ? kExitPass : kExitFail;
}

int cmd_domain_check(const std::string& poset_file, bool json_out) {
  auto p = io::load_poset_file(poset_file);
  ordered_json j;
  j["elements"] = p.n;
  bool wb_is_order = true;
  for (int x = 0; x < p.n; ++x)
    for (int y = 0; y < p.n; ++y)
      if (dom::way_below(p, x, y) != p.le(x, y)) wb_is_order = false;
  j["way_below_equals_order"] = wb_is_order;
  auto ic = dom::ideal_completion(p);
  j["ideals"] = ic.ideals.size();
  j["all_compact"] =
      std::all_of(ic.compact.begin(), ic.compact.end(), [](bool b) { return b; });
  j["completion_isomorphic"] = ic.isomorphic_to_input;
  auto model = dom::omega_ideal_model_check(p);
  j["ideal_model"] = model.ok;
  auto sp = dom::scott_space(p);
  j["scott_opens"] = topo::all_opens(sp).size();
  emit(j, json_out);
  return wb_is_order && model.ok ? kExitPass : kExitFail;
}

int cmd_verify(std::uint64_t seed, int horizon, bool json_out) {
  verify::Options opts;
  opts.seed = seed;
  opts.game_horizon = horizon;
  auto rep = verify::run_all(opts);
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = verify::status_name(c.status);
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
    if (!json_out)
      std::cout << "[" << verify::status_name(c.status) << "] " << c.name
                << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  }
  if (json_out) {
    ordered_json j;
    j["checks"] = checks;
    j["exit_code"] = rep.exit_code();
    std::cout << j.dump(2) << "\n";
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for countably based topology at desk scale"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "emit machine-readable JSON");

  std::string space_file, metric_file, pairs_file, expr_text, config_file, table_file;
  std::string p1 = "chain", p2 = "min-nbhd";
  int rounds = 10;
  int depth = default_depth();
  std::uint64_t seed = 1;
  int horizon = 0;

  auto* space = app.add_subcommand("space", "finite and catalog spaces");
  auto* space_check = space->add_subcommand("check", "validate and report properties");
  space_check->add_option("file", space_file)->required();

  auto* borel_cmd = app.add_subcommand("borel", "symbolic set expressions");
  auto* classify = borel_cmd->add_subcommand("classify", "level bound and truth table");
  classify->add_option("space", space_file)->required();
  classify->add_option("expr", expr_text)->required();

  auto* qm_cmd = app.add_subcommand("qm", "quasi-metric engines");
  auto* qm_check = qm_cmd->add_subcommand("check", "axiom sweep on a table");
  qm_check->add_option("file", metric_file)->required();
  auto* qm_derive = qm_cmd->add_subcommand("derive", "derived distances");
  auto* qm_pi2 = qm_derive->add_subcommand("pi2", "re-metrize a pair subspace");
  qm_pi2->add_option("space", space_file)->required();
  qm_pi2->add_option("pairs", pairs_file)->required();

  auto* game_cmd = app.add_subcommand("game", "refinement game runs");
  auto* game_play = game_cmd->add_subcommand("play", "single run");
  game_play->add_option("space", space_file)->required();
  game_play->add_option("--p1", p1, "challenger: chain|random|sticker");
  game_play->add_option("--p2", p2, "responder: qm-d1|qm-d2|qm-order|min-nbhd|scattered");
  game_play->add_option("--rounds", rounds);
  game_play->add_option("--seed", seed);
  auto* game_tour = game_cmd->add_subcommand("tournament", "verdict table");
  game_tour->add_option("config", config_file)->required();

  auto* domain_cmd = app.add_subcommand("domain", "poset and embedding machinery");
  auto* domain_embed = domain_cmd->add_subcommand("embed", "truncated pair embedding");
  domain_embed->add_option("presentation", table_file)->required();
  domain_embed->add_option("--depth", depth);
  std::string poset_file;
  auto* domain_check = domain_cmd->add_subcommand("check", "poset facts");
  domain_check->add_option("poset", poset_file)->required();

  auto* repr_cmd = app.add_subcommand("repr", "prefix-level representations");
  auto* repr_translate = repr_cmd->add_subcommand("translate", "factor through the enumeration map");
  repr_translate->add_option("table", table_file)->required();
  repr_translate->add_option("--depth", depth);
  auto* repr_fcheck = repr_cmd->add_subcommand("fcheck", "filter conditions per point");
  repr_fcheck->add_option("space", space_file)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--horizon", horizon, "override the game horizons");

  // Let --json written after a subcommand reach the global flag.
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* sub : a->get_subcommands({})) allow_fallthrough(sub);
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (space_check->parsed()) return cmd_space_check(space_file, json_out);
    if (classify->parsed()) return cmd_borel_classify(space_file, expr_text, json_out);
    if (qm_check->parsed()) return cmd_qm_check(metric_file, json_out);
    if (qm_pi2->parsed()) return cmd_qm_derive_pi2(space_file, pairs_file, json_out);
    if (game_play->parsed())
      return cmd_game_play(space_file, p1, p2, rounds, seed, json_out);
    if (game_tour->parsed()) return cmd_game_tournament(config_file, json_out);
    if (domain_embed->parsed()) return cmd_domain_embed(table_file, depth, json_out);
    if (domain_check->parsed()) return cmd_domain_check(poset_file, json_out);
    if (repr_translate->parsed()) return cmd_repr_translate(table_file, depth, json_out);
    if (repr_fcheck->parsed()) return cmd_repr_fcheck(space_file, json_out);
    if (verify_cmd->parsed()) return cmd_verify(seed, horizon, json_out);
  } catch (const qtop::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.code() == "IOError" || e.code() == "ParseError" || e.code() == "Usage")
               ? kExitUsage
               : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "error: no subcommand\n";
  return kExitUsage;
}
