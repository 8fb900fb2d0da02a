#include "qtop/game.hpp"

#include <algorithm>
#include <set>

namespace qtop::game {

namespace {

// Any immediate strict successor inside the window.
std::optional<int> window_successor(const FiniteSpace& sp, int x) {
  for (int y = 0; y < sp.n; ++y) {
    if (y == x || !sp.le(x, y)) continue;
    bool immediate = true;
    for (int z = 0; z < sp.n; ++z)
      if (z != x && z != y && sp.le(x, z) && sp.le(z, y)) { immediate = false; break; }
    if (immediate) return y;
  }
  return std::nullopt;
}

}  // namespace

Arena Arena::finite(FiniteSpace sp, std::string name) {
  Arena a;
  a.space = std::move(sp);
  a.name = std::move(name);
  FiniteSpace* raw = &a.space;
  a.chain = [raw](int x) {
    auto s = window_successor(*raw, x);
    return s.has_value() ? ChainStep::to(*s) : ChainStep::top();
  };
  return a;
}

Arena Arena::catalog(const topo::CatalogSpace& c) {
  using topo::CatalogTag;
  Arena a;
  a.space = c.window;
  a.artifact.assign(c.truncation_artifact.begin(), c.truncation_artifact.end());
  a.name = topo::tag_name(c.tag) + "@" + std::to_string(c.depth);
  int depth = c.depth;
  switch (c.tag) {
    case CatalogTag::OmegaPlusOneScott:
    case CatalogTag::OmegaPlusOneAlexandroff:
      // Window layout: 0..depth-1 then omega. The true walk never reaches
      // omega; it leaves the window after the last natural.
      a.chain = [depth](int x) {
        if (x == depth) return ChainStep::top();  // omega
        if (x + 1 < depth) return ChainStep::to(x + 1);
        return ChainStep::escaped();
      };
      break;
    case CatalogTag::OmegaScott:
      a.chain = [depth](int x) {
        if (x + 1 < depth) return ChainStep::to(x + 1);
        return ChainStep::escaped();
      };
      break;
    case CatalogTag::TwoBottomLadder:
      // Layout: bot1, bot2, then naturals descending in the order (the walk
      // up from a natural k goes to k-1, index-wise one to the left). The
      // bottoms have no first step upward: every natural has unseen points
      // below it in the walk, so the walk cannot honestly start there.
      a.chain = [](int x) {
        if (x <= 1) return ChainStep::escaped();
        if (x == 2) return ChainStep::top();  // natural 0 tops the chain
        return ChainStep::to(x - 1);
      };
      break;
    case CatalogTag::PowersetTrunc: {
      int k = 0;
      while ((1 << k) < c.window.n) ++k;
      a.chain = [k](int x) {
        for (int i = 0; i < k; ++i)
          if (!((x >> i) & 1)) return ChainStep::to(x | (1 << i));
        return ChainStep::escaped();  // the window's top keeps growing beyond
      };
      break;
    }
    case CatalogTag::Sierpinski:
      a.chain = [](int x) { return x == 0 ? ChainStep::to(1) : ChainStep::top(); };
      break;
  }
  return a;
}

bool nesting_ok(const Transcript& t) {
  for (size_t n = 0; n < t.rounds.size(); ++n) {
    const Round& r = t.rounds[n];
    if (r.U == 0 || r.V == 0) return false;
    if (!has(r.U, r.x) || !has(r.V, r.x)) return false;
    if (!subset(r.V, r.U)) return false;
    if (n > 0 && !subset(r.U, t.rounds[n - 1].V)) return false;
  }
  return true;
}

bool closed_ball_containment_ok(const Arena&, const qm::QMetric& d,
                                const Transcript& t) {
  for (const Round& r : t.rounds) {
    if (!r.radius.has_value()) continue;
    if (!subset(qm::closed_ball(d, r.x, *r.radius), r.U)) return false;
  }
  return true;
}

namespace {

Verdict certify(const Arena& arena, const Transcript& t, int horizon) {
  Verdict v;
  v.horizon = horizon;
  if (t.rounds.empty()) {
    v.status = VerdictStatus::Undecided;
    v.reason = "no rounds played";
    return v;
  }
  const FiniteSpace& sp = arena.space;
  Mask in_all = sp.full();
  for (const Round& r : t.rounds) in_all &= r.V;

  std::vector<int> candidates;
  for (int x = 0; x < sp.n; ++x) {
    if (!has(in_all, x)) continue;
    bool served = true;
    for (Mask b : sp.basics) {
      if (b == 0 || !has(b, x)) continue;
      bool some = false;
      for (const Round& r : t.rounds)
        if (has(r.V, x) && subset(r.V, b)) { some = true; break; }
      if (!some) { served = false; break; }
    }
    if (served) candidates.push_back(x);
  }
  // Truncation artifacts cannot be certified: the true space keeps
  // separating below them past the window.
  candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                  [&](int x) { return arena.is_artifact(x); }),
                   candidates.end());
  if (candidates.empty()) {
    v.status = VerdictStatus::Undecided;
    v.reason = "no certified point at this horizon";
    return v;
  }
  // Specialization-largest candidate, lowest index on ties.
  int best = candidates[0];
  for (int c : candidates)
    if (c != best && sp.le(best, c)) best = c;
  v.status = VerdictStatus::WonByRefinement;
  v.point = best;
  // First round whose prefix serves every basic around the point.
  int k = 0;
  for (Mask b : sp.basics) {
    if (b == 0 || !has(b, best)) continue;
    int first = -1;
    for (int i = 0; i < (int)t.rounds.size(); ++i)
      if (has(t.rounds[i].V, best) && subset(t.rounds[i].V, b)) { first = i; break; }
    k = std::max(k, first);
  }
  v.round = k;
  return v;
}

}  // namespace

RunResult play(const Arena& arena, const Challenger& ch, const Responder& re,
               int rounds, std::uint64_t seed) {
  RunResult out;
  std::mt19937_64 rng(seed);
  const FiniteSpace& sp = arena.space;
  for (int n = 0; n < rounds; ++n) {
    auto mv = ch.move(arena, out.transcript, rng);
    if (!mv.has_value()) {
      out.verdict = certify(arena, out.transcript, n);
      if (out.verdict.status == VerdictStatus::WonByRefinement) return out;
      out.verdict.status = VerdictStatus::Undecided;
      out.verdict.reason = "challenger exhausted the window at round " + std::to_string(n);
      return out;
    }
    Mask prevV = n == 0 ? sp.full() : out.transcript.rounds.back().V;
    if (mv->U == 0 || !sp.is_open(mv->U) || !subset(mv->U, prevV) || !has(mv->U, mv->x)) {
      out.verdict.status = VerdictStatus::MalformedRun;
      out.verdict.round = n;
      out.verdict.horizon = n;
      out.verdict.reason = "illegal challenge";
      return out;
    }
    auto rv = re.move(arena, out.transcript, mv->x, mv->U);
    if (!rv.has_value()) {
      out.verdict.status = VerdictStatus::MalformedRun;
      out.verdict.round = n;
      out.verdict.horizon = n;
      out.verdict.reason = "NoAdmissibleRadius";
      return out;
    }
    if (rv->V == 0 || !sp.is_open(rv->V) || !subset(rv->V, mv->U) || !has(rv->V, mv->x)) {
      out.verdict.status = VerdictStatus::MalformedRun;
      out.verdict.round = n;
      out.verdict.horizon = n;
      out.verdict.reason = "illegal response";
      return out;
    }
    Round r;
    r.x = mv->x;
    r.U = mv->U;
    r.V = rv->V;
    r.radius = rv->radius;
    r.note = rv->note;
    out.transcript.rounds.push_back(r);
  }
  out.verdict = certify(arena, out.transcript, rounds);
  return out;
}

Responder qm_strategy(qm::QMetric d) {
  Responder re;
  re.name = "qm";
  auto dp = std::make_shared<qm::QMetric>(std::move(d));
  re.move = [dp](const Arena& arena, const Transcript& t, int x,
                 Mask U) -> std::optional<ResponderMove> {
    int n = (int)t.rounds.size();
    Rat eps = Rat(1, n + 1);
    const Rat floor_eps = Rat::pow2_neg(32);
    while (true) {
      Mask open_ball = qm::ball(*dp, x, eps);
      Mask cball = qm::closed_ball(*dp, x, eps);
      if (subset(cball, U) && arena.space.is_open(open_ball) && open_ball != 0 &&
          subset(open_ball, U)) {
        ResponderMove mv;
        mv.V = open_ball;
        mv.radius = eps;
        return mv;
      }
      eps = eps.half();
      if (eps < floor_eps) return std::nullopt;  // NoAdmissibleRadius
    }
  };
  return re;
}

Responder min_nbhd_strategy() {
  Responder re;
  re.name = "min-nbhd";
  re.move = [](const Arena& arena, const Transcript&, int x,
               Mask U) -> std::optional<ResponderMove> {
    ResponderMove mv;
    mv.V = arena.space.up[x] & U;
    return mv;
  };
  return re;
}

Responder scattered_strategy(const FiniteSpace& sp) {
  auto cb = topo::cb_rank(sp);
  if (!cb.scattered) throw error("NotScattered", "strategy needs a scattered space");
  auto stages = std::make_shared<std::vector<Mask>>(cb.derived);
  Responder re;
  re.name = "scattered";
  re.move = [stages](const Arena& arena, const Transcript& t, int x,
                     Mask U) -> std::optional<ResponderMove> {
    // Least stage whose successor already lost x.
    int alpha = 0;
    while (alpha + 1 < (int)stages->size() && has((*stages)[alpha + 1], x)) ++alpha;
    // The minimal open both isolates x inside stage alpha and refines every
    // basic around x, so it satisfies the strategy obligations.
    ResponderMove mv;
    mv.V = arena.space.up[x] & U;
    mv.note = alpha;
    (void)t;
    return mv;
  };
  return re;
}

FiniteSpace extend_topology(const FiniteSpace& sp, Mask B) {
  // Refined specialization order: keep x <= y only when membership of B is
  // monotone across the pair.
  std::vector<Mask> ups(sp.n);
  for (int x = 0; x < sp.n; ++x) {
    Mask u = 0;
    for (int y = 0; y < sp.n; ++y)
      if (sp.le(x, y) && (!has(B, x) || has(B, y))) u |= bit(y);
    ups[x] = u;
  }
  // The new order may lose transitivity only if B were not monotone over
  // old chains; close transitively to stay well-formed.
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < sp.n; ++x)
      for (int y = 0; y < sp.n; ++y)
        if (x != y && has(ups[x], y))
          for (int z = 0; z < sp.n; ++z)
            if (has(ups[y], z) && !has(ups[x], z)) {
              // Transitivity repair must never be needed for a genuine
              // topology refinement; keep the closure anyway.
              ups[x] |= bit(z);
              changed = true;
            }
  }
  FiniteSpace out = topo::space_from_up_sets(std::move(ups), sp.point_names);
  std::set<Mask> bs(sp.basics.begin(), sp.basics.end());
  bs.insert(B);
  for (Mask b : sp.basics) bs.insert(b & B);
  out.basics.assign(bs.begin(), bs.end());
  std::sort(out.basics.begin(), out.basics.end(), [](Mask a, Mask b2) {
    return std::pair(popcount(a), a) < std::pair(popcount(b2), b2);
  });
  return out;
}

Responder delta2_extension_strategy(Responder base, const FiniteSpace& base_space,
                                    Mask B, const std::vector<Mask>& decomposition) {
  for (Mask a : decomposition)
    if (!base_space.is_open(a))
      throw error("NotOpen", "decomposition member is not open in the base topology");
  Mask complement = base_space.full() & ~B;
  if (borel::diff_hier_eval((int)decomposition.size(), decomposition) != complement)
    throw error("DecompositionMismatch",
                "difference chain does not evaluate to the complement of B");
  auto basep = std::make_shared<Responder>(std::move(base));
  auto bsp = std::make_shared<FiniteSpace>(base_space);
  auto decomp = std::make_shared<std::vector<Mask>>(decomposition);
  Responder re;
  re.name = "delta2-ext(" + basep->name + ")";
  re.move = [basep, bsp, B, decomp](const Arena& arena, const Transcript& t, int x,
                                    Mask U) -> std::optional<ResponderMove> {
    if (has(B, x)) {
      // Inside branch: cut the challenge to B, then refine minimally within
      // the refined topology.
      ResponderMove mv;
      mv.V = arena.space.up[x] & U & B;
      if (mv.V == 0) mv.V = arena.space.up[x] & U;
      return mv;
    }
    // Outside branch: find the least stage of the chain containing x with
    // the contributing parity, shrink the challenge into it (a base-open
    // set), and delegate.
    int alpha = (int)decomp->size();
    int beta = -1;
    Mask before = 0;
    for (int i = 0; i < alpha; ++i) {
      if (has((*decomp)[i], x) && !has(before, x) && (i % 2) != (alpha % 2)) {
        beta = i;
        break;
      }
      before |= (*decomp)[i];
    }
    if (beta < 0) return std::nullopt;
    Mask U_base = bsp->interior(U) & (*decomp)[beta] & bsp->up[x];
    if (U_base == 0 || !has(U_base, x)) return std::nullopt;
    auto sub = basep->move(Arena::finite(*bsp), t, x, U_base);
    if (!sub.has_value()) return std::nullopt;
    ResponderMove mv = *sub;
    mv.V = mv.V & U_base;
    return mv;
  };
  return re;
}

Challenger chain_walker() {
  Challenger ch;
  ch.name = "chain";
  ch.move = [](const Arena& arena, const Transcript& t,
               std::mt19937_64&) -> std::optional<ChallengerMove> {
    const FiniteSpace& sp = arena.space;
    if (t.rounds.empty()) {
      // Start at a minimal point the true walk can actually leave from.
      for (int x = 0; x < sp.n; ++x) {
        bool minimal = true;
        for (int y = 0; y < sp.n; ++y)
          if (y != x && sp.le(y, x)) { minimal = false; break; }
        if (minimal) return ChallengerMove{x, sp.full()};
      }
      return ChallengerMove{0, sp.full()};
    }
    const Round& prev = t.rounds.back();
    ChainStep step = arena.chain(prev.x);
    switch (step.kind) {
      case ChainStep::Kind::Next:
        if (has(prev.V, step.next)) return ChallengerMove{step.next, prev.V};
        // The response cut the walk off; stay put.
        return ChallengerMove{prev.x, prev.V};
      case ChainStep::Kind::Top:
        return ChallengerMove{prev.x, prev.V};
      case ChainStep::Kind::Escaped:
        // The true walk continues outside the window.
        return std::nullopt;
    }
    return std::nullopt;
  };
  return ch;
}

Challenger random_legal(std::uint64_t salt) {
  Challenger ch;
  ch.name = "random";
  ch.move = [salt](const Arena& arena, const Transcript& t,
                   std::mt19937_64& rng) -> std::optional<ChallengerMove> {
    (void)salt;
    const FiniteSpace& sp = arena.space;
    Mask prevV = t.rounds.empty() ? sp.full() : t.rounds.back().V;
    auto pts = mask_to_indices(prevV);
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    int x = pts[pick(rng)];
    // Random open between up[x] and prevV: union the minimal open with a
    // random selection of basics that fit.
    Mask U = sp.up[x];
    for (Mask b : sp.basics)
      if (subset(b, prevV) && (rng() & 1)) U |= b;
    if (!subset(U, prevV)) U = sp.up[x];
    return ChallengerMove{x, U};
  };
  return ch;
}

Challenger point_sticker() {
  Challenger ch;
  ch.name = "sticker";
  ch.move = [](const Arena& arena, const Transcript& t,
               std::mt19937_64& rng) -> std::optional<ChallengerMove> {
    const FiniteSpace& sp = arena.space;
    if (t.rounds.empty()) {
      std::uniform_int_distribution<int> pick(0, sp.n - 1);
      return ChallengerMove{pick(rng), sp.full()};
    }
    const Round& prev = t.rounds.back();
    return ChallengerMove{prev.x, prev.V};
  };
  return ch;
}

namespace {

// Wraps a responder so it always plays a basic open: the largest basic
// around x inside the intended response.
std::optional<ResponderMove> basic_restricted(const Arena& arena, const Responder& re,
                                              const Transcript& t, int x, Mask U) {
  auto mv = re.move(arena, t, x, U);
  if (!mv.has_value()) return std::nullopt;
  Mask best = 0;
  for (Mask b : arena.space.basics)
    if (has(b, x) && subset(b, mv->V) && popcount(b) > popcount(best)) best = b;
  if (best == 0) return std::nullopt;
  mv->V = best;
  return mv;
}

}  // namespace

PrefixTree extract_representation(const Arena& arena, const Responder& re, int depth) {
  const FiniteSpace& sp = arena.space;
  PrefixTree tree;
  tree.nodes.push_back({{}, sp.full(), {}});

  struct Item {
    int node;
    std::vector<Transcript> runs;  // all challenge histories reaching it
  };
  std::vector<Item> frontier{{0, {Transcript{}}}};

  for (int level = 0; level < depth; ++level) {
    std::vector<Item> next;
    for (auto& item : frontier) {
      Mask f_sigma = tree.nodes[item.node].open;
      // All distinct responses over every reaching run and every challenge
      // point inside this node's open.
      std::vector<Mask> responses;
      std::vector<std::vector<Transcript>> runs_of;
      for (const auto& run : item.runs)
        for (int x : mask_to_indices(f_sigma)) {
          auto mv = basic_restricted(arena, re, run, x, f_sigma);
          if (!mv.has_value())
            throw error("NonBasisMove", "responder could not be basis-restricted");
          Transcript extended = run;
          extended.rounds.push_back({x, f_sigma, mv->V, mv->radius, mv->note});
          auto it = std::find(responses.begin(), responses.end(), mv->V);
          if (it == responses.end()) {
            responses.push_back(mv->V);
            runs_of.push_back({extended});
          } else {
            runs_of[it - responses.begin()].push_back(extended);
          }
        }
      for (size_t i = 0; i < responses.size(); ++i) {
        PrefixTreeNode node;
        node.sigma = tree.nodes[item.node].sigma;
        node.sigma.push_back((int)i);
        node.open = responses[i];
        int id = (int)tree.nodes.size();
        tree.nodes.push_back(node);
        tree.nodes[item.node].children.push_back(id);
        next.push_back({id, runs_of[i]});
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

bool prefix_tree_monotone(const PrefixTree& t) {
  for (const auto& node : t.nodes)
    for (int c : node.children)
      if (!subset(t.nodes[c].open, node.open)) return false;
  return true;
}

bool prefix_tree_image_equality(const Arena& arena, const Responder& re,
                                const PrefixTree& t, int horizon) {
  // Every x in a node's open must be pinned by the continuation where the
  // challenger keeps playing x from that node onward.
  const FiniteSpace& sp = arena.space;
  for (const auto& node : t.nodes) {
    for (int x : mask_to_indices(node.open)) {
      if (arena.is_artifact(x)) continue;
      Transcript run;
      Mask cur = node.open;
      bool pinned = false;
      for (int n = 0; n < horizon; ++n) {
        auto mv = basic_restricted(arena, re, run, x, cur);
        if (!mv.has_value()) return false;
        run.rounds.push_back({x, cur, mv->V, mv->radius, mv->note});
        cur = mv->V;
        if (cur == (sp.up[x] & node.open) || cur == sp.up[x]) {
          pinned = true;
          break;
        }
      }
      if (!pinned) return false;
    }
  }
  return true;
}

}  // namespace qtop::game
