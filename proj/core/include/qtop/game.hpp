#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qtop/borel.hpp"
#include "qtop/catalog.hpp"
#include "qtop/qmetric.hpp"
#include "qtop/space.hpp"

namespace qtop::game {

using topo::FiniteSpace;
using topo::Mask;

// One step of the canonical strictly-ascending walk through a space.
struct ChainStep {
  enum class Kind { Next, Top, Escaped };
  Kind kind = Kind::Top;
  int next = -1;  // for Kind::Next

  static ChainStep to(int p) { return {Kind::Next, p}; }
  static ChainStep top() { return {Kind::Top, -1}; }
  static ChainStep escaped() { return {Kind::Escaped, -1}; }
};

// The arena: a finite space, or a catalog window where some points are
// truncation artifacts (a continued run in the true space walks past them,
// so a window certificate for them is not robust).
struct Arena {
  FiniteSpace space;
  std::vector<bool> artifact;  // empty = no artifacts (plain finite space)
  std::string name;
  // The true space's ascending walk; Escaped means the next point falls
  // outside the window.
  std::function<ChainStep(int)> chain;

  static Arena finite(FiniteSpace sp, std::string name = "finite");
  static Arena catalog(const topo::CatalogSpace& c);
  bool is_artifact(int x) const {
    return !artifact.empty() && artifact[x];
  }
};

struct Round {
  int x = -1;     // the point challenged this round
  Mask U = 0;     // challenger's open
  Mask V = 0;     // responder's open
  std::optional<Rat> radius;  // set by ball-playing strategies
  std::optional<int> note;    // strategy bookkeeping (e.g. derivative stage)
};

struct Transcript {
  std::vector<Round> rounds;
};

struct ChallengerMove {
  int x;
  Mask U;
};

// The challenger: produces (x, U); empty means the strategy wants a point
// outside the window and the run cannot honestly continue.
struct Challenger {
  std::string name;
  std::function<std::optional<ChallengerMove>(const Arena&, const Transcript&,
                                              std::mt19937_64&)>
      move;
};

// The responder: produces V with x in V, V inside U; empty aborts the run.
struct ResponderMove {
  Mask V;
  std::optional<Rat> radius;
  std::optional<int> note;
};

struct Responder {
  std::string name;
  std::function<std::optional<ResponderMove>(const Arena&, const Transcript&, int x,
                                             Mask U)>
      move;
};

enum class VerdictStatus { WonByRefinement, Undecided, MalformedRun };

struct Verdict {
  VerdictStatus status = VerdictStatus::Undecided;
  int point = -1;   // certified point for WonByRefinement
  int round = -1;   // first round whose prefix already serves the certificate
  int horizon = 0;
  std::string reason;
};

struct RunResult {
  Transcript transcript;
  Verdict verdict;
};

// Plays at most `rounds` rounds, enforcing the nesting and membership rules
// each move, then certifies: a point x is certified when x lies in every
// played V and every basic open around x contains some played V around x.
// Certified truncation artifacts are discarded (the true space could still
// separate below them); ties go to the specialization-largest point.
RunResult play(const Arena& arena, const Challenger& ch, const Responder& re,
               int rounds, std::uint64_t seed = 0);

// True when the transcript satisfies U0 >= V0 >= U1 >= ... with the played
// points inside their opens.
bool nesting_ok(const Transcript& t);

// Re-checks, for ball-playing responders, that each round's closed ball sat
// inside the challenged open.
bool closed_ball_containment_ok(const Arena& arena, const qm::QMetric& d,
                                const Transcript& t);

// Responders -----------------------------------------------------------------

// Plays V = B_d(x, eps) with 0 < eps <= 1/(n+1) and the closed ball inside
// U, halving from 1/(n+1) down to the resolution floor 2^-32.
Responder qm_strategy(qm::QMetric d);

// Plays the minimal open around x cut to U; always legal on finite spaces.
Responder min_nbhd_strategy();

// Isolates x inside the derivative stage it belongs to while refining the
// first n basics around x. Error NotScattered at construction.
Responder scattered_strategy(const FiniteSpace& sp);

// Extension of a winning strategy across a topology refined by one new open
// B: inside B the responder cuts to B and refines minimally; outside it
// shrinks the challenge into the decomposition stage of x and delegates.
// The arena passed to play() must be the refined space; `base_space` is the
// unrefined one. Error DecompositionMismatch when the chain does not
// evaluate to the complement of B.
Responder delta2_extension_strategy(Responder base, const FiniteSpace& base_space,
                                    Mask B, const std::vector<Mask>& decomposition);

// The refined space: opens generated by the old ones plus B.
FiniteSpace extend_topology(const FiniteSpace& sp, Mask B);

// Challengers ----------------------------------------------------------------

Challenger chain_walker();   // climbs the specialization order, flags the window edge
Challenger random_legal(std::uint64_t salt = 0);
Challenger point_sticker();  // picks a starting point and never moves

// Strategy extraction --------------------------------------------------------

struct PrefixTreeNode {
  std::vector<int> sigma;   // path in the run tree
  Mask open = 0;            // the open assigned to this node
  std::vector<int> children;  // node indices
};

struct PrefixTree {
  std::vector<PrefixTreeNode> nodes;  // node 0 is the root (the full space)
};

// Builds the run tree of a responder against every possible challenge
// sequence to the given depth. The responder is wrapped to play basic opens
// only. On finite spaces the image equality "node open = points reachable
// through it" is verified; error NonBasisMove if the wrapper fails.
PrefixTree extract_representation(const Arena& arena, const Responder& re, int depth);

// Checks f(sigma.i) lies inside f(sigma) everywhere in the tree.
bool prefix_tree_monotone(const PrefixTree& t);

// Every point of node's open is pinned by some continuation of the run.
bool prefix_tree_image_equality(const Arena& arena, const Responder& re,
                                const PrefixTree& t, int horizon);

}  // namespace qtop::game
