#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtop/space.hpp"

namespace qtop::topo {

// Countable spaces presented symbolically and inspected through a finite
// window. Point codes are int64: naturals are themselves, OMEGA is the top
// of omega+1, BOT1/BOT2 the two minimal points of the ladder.
inline constexpr std::int64_t OMEGA = INT64_MAX;
inline constexpr std::int64_t BOT1 = -1;
inline constexpr std::int64_t BOT2 = -2;

enum class CatalogTag {
  Sierpinski,
  PowersetTrunc,
  OmegaPlusOneScott,
  OmegaPlusOneAlexandroff,
  OmegaScott,
  TwoBottomLadder,
};

std::string tag_name(CatalogTag t);
std::optional<CatalogTag> tag_from_name(const std::string& s);

// A catalog space materialized to a truncation depth. Every verdict derived
// from one of these is only "verified to depth": the window carries, per
// point, whether the true space has strictly larger points missing from it
// (truncation artifacts).
struct CatalogSpace {
  CatalogTag tag;
  int depth;                          // truncation parameter N
  std::vector<std::int64_t> codes;    // point codes in window order
  FiniteSpace window;                 // the truncated space
  // window point x has strict successors in the true space that fall
  // outside the window
  std::vector<bool> truncation_artifact;

  int index_of(std::int64_t code) const;  // -1 when absent
};

CatalogSpace make_catalog(CatalogTag tag, int depth);

// True order of the full space on two codes (x <= y).
bool catalog_le(CatalogTag tag, std::int64_t x, std::int64_t y);

// Membership of a window point in a basic open, both by index; matches the
// window's FiniteSpace basics.
bool catalog_member(const CatalogSpace& c, int point, int basic);

struct CatalogTableReport {
  bool consistent = true;
  std::string detail;
};

// Spot-checks the subset and intersection-witness tables implied by the
// window against the membership oracle.
CatalogTableReport spot_check_tables(const CatalogSpace& c);

struct BoundedSoberReport {
  bool refuted = false;   // a closed set with no generic point up to depth
  std::string detail;     // human-readable witness, labeled with the depth
};

// Bounded witness search for non-sobriety. Never claims "sober"; either a
// witness is produced or the search reports exhaustion at this depth.
BoundedSoberReport sober_bounded(const CatalogSpace& c);

}  // namespace qtop::topo
