#include "qtop/borel.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qtop::borel {

SetExpr SetExpr::Basic_(int i) {
  SetExpr e;
  e.kind = Kind::Basic;
  e.basic = i;
  return e;
}
SetExpr SetExpr::Union_(std::vector<SetExpr> es) {
  if (es.empty()) throw error("EmptyList", "union of nothing");
  SetExpr e;
  e.kind = Kind::Union;
  e.kids = std::move(es);
  return e;
}
SetExpr SetExpr::Intersect_(std::vector<SetExpr> es) {
  if (es.empty()) throw error("EmptyList", "intersection of nothing");
  SetExpr e;
  e.kind = Kind::Intersect;
  e.kids = std::move(es);
  return e;
}
SetExpr SetExpr::Diff_(SetExpr a, SetExpr b) {
  SetExpr e;
  e.kind = Kind::Diff;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}
SetExpr SetExpr::Complement_(SetExpr inner) {
  SetExpr e;
  e.kind = Kind::Complement;
  e.kids.push_back(std::move(inner));
  return e;
}
SetExpr SetExpr::DiffHier_(int alpha, std::vector<SetExpr> chain) {
  if (chain.empty()) throw error("EmptyList", "difference chain of nothing");
  if (alpha != (int)chain.size())
    throw error("BadAlpha", "chain length must equal alpha");
  SetExpr e;
  e.kind = Kind::DiffHier;
  e.alpha = alpha;
  e.kids = std::move(chain);
  return e;
}

std::string Level::str() const {
  const char* c = cls == Cls::Sigma ? "Sigma" : cls == Cls::Pi ? "Pi" : "Delta";
  return std::string(c) + "_" + std::to_string(index);
}

namespace {

struct RankPair {
  int s;  // least n with membership in Sigma_n guaranteed
  int p;  // least n with membership in Pi_n guaranteed
};

RankPair ranks(const SetExpr& e) {
  switch (e.kind) {
    case SetExpr::Kind::Basic:
      return {1, 2};
    case SetExpr::Kind::Union:
    case SetExpr::Kind::Intersect: {
      RankPair out{1, 1};
      for (const auto& k : e.kids) {
        RankPair r = ranks(k);
        out.s = std::max(out.s, r.s);
        out.p = std::max(out.p, r.p);
      }
      return out;
    }
    case SetExpr::Kind::Complement: {
      RankPair r = ranks(e.kids[0]);
      return {r.p, r.s};
    }
    case SetExpr::Kind::Diff: {
      // One level above the sigma ranks of both operands.
      int t = std::max(ranks(e.kids[0]).s, ranks(e.kids[1]).s) + 1;
      return {t, t + 1};
    }
    case SetExpr::Kind::DiffHier: {
      int t = 1;
      for (const auto& k : e.kids) t = std::max(t, ranks(k).s);
      return {t + 1, t + 1};
    }
  }
  throw error("BadExpr", "unknown node kind");
}

}  // namespace

int sigma_rank(const SetExpr& e) { return ranks(e).s; }
int pi_rank(const SetExpr& e) { return ranks(e).p; }

Level level_of(const SetExpr& e) {
  RankPair r = ranks(e);
  Level l;
  if (r.s < r.p) {
    l.cls = Level::Cls::Sigma;
    l.index = r.s;
  } else if (r.p < r.s) {
    l.cls = Level::Cls::Pi;
    l.index = r.p;
  } else {
    l.cls = Level::Cls::Delta;
    l.index = r.s;
  }
  return l;
}

bool eval(const SetExpr& e, const std::vector<Mask>& basics, int point) {
  switch (e.kind) {
    case SetExpr::Kind::Basic:
      if (e.basic < 0 || e.basic >= (int)basics.size())
        throw error("IndexOutOfRange", "basic index " + std::to_string(e.basic));
      return has(basics[e.basic], point);
    case SetExpr::Kind::Union:
      for (const auto& k : e.kids)
        if (eval(k, basics, point)) return true;
      return false;
    case SetExpr::Kind::Intersect:
      for (const auto& k : e.kids)
        if (!eval(k, basics, point)) return false;
      return true;
    case SetExpr::Kind::Diff:
      return eval(e.kids[0], basics, point) && !eval(e.kids[1], basics, point);
    case SetExpr::Kind::Complement:
      return !eval(e.kids[0], basics, point);
    case SetExpr::Kind::DiffHier: {
      // Monotonicity is a per-space property, so it is checked here at
      // evaluation time, over all points the masks mention.
      // Find the least index whose set contains the point.
      int first = -1;
      for (int i = 0; i < (int)e.kids.size(); ++i) {
        bool in = eval(e.kids[i], basics, point);
        if (in && first < 0) first = i;
        if (!in && first >= 0 && first < i)
          throw error("NonIncreasingDiffHier",
                      "chain member " + std::to_string(i) +
                          " drops a point already present");
      }
      if (first < 0) return false;
      return (first % 2) != (e.alpha % 2);
    }
  }
  throw error("BadExpr", "unknown node kind");
}

Mask eval_mask(const SetExpr& e, const std::vector<Mask>& basics, int n_points) {
  Mask m = 0;
  for (int x = 0; x < n_points; ++x)
    if (eval(e, basics, x)) m |= bit(x);
  return m;
}

bool eval(const SetExpr& e, const FiniteSpace& sp, int point) {
  return eval(e, sp.basics, point);
}
Mask eval_mask(const SetExpr& e, const FiniteSpace& sp) {
  return eval_mask(e, sp.basics, sp.n);
}

namespace {

// A member of the canonical sigma form: B \ B', with the subtrahend optional.
struct DiffTerm {
  SetExpr pos;
  std::optional<SetExpr> neg;
};

SetExpr join_neg(const std::optional<SetExpr>& a, const SetExpr& b) {
  if (!a.has_value()) return b;
  return SetExpr::Union_({*a, b});
}

// Expression as a union of differences of strictly lower-ranked parts.
std::vector<DiffTerm> to_sigma_form(const SetExpr& e);

std::vector<DiffTerm> complement_form(const SetExpr& inner) {
  // The complement of anything is full-minus-it; the full set is not
  // addressable without a basics list, so distribute instead:
  // ~union(Bi \ Bi') = intersect(~Bi | Bi'). Rather than expanding the
  // product, keep the complement node opaque as a single positive term.
  return {DiffTerm{SetExpr::Complement_(inner), std::nullopt}};
}

std::vector<DiffTerm> to_sigma_form(const SetExpr& e) {
  switch (e.kind) {
    case SetExpr::Kind::Basic:
      return {DiffTerm{e, std::nullopt}};
    case SetExpr::Kind::Union: {
      std::vector<DiffTerm> out;
      for (const auto& k : e.kids) {
        auto part = to_sigma_form(k);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case SetExpr::Kind::Intersect: {
      // Pairwise product: (X\X') & (Y\Y') = (X&Y) \ (X'|Y').
      std::vector<DiffTerm> acc = to_sigma_form(e.kids[0]);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        auto rhs = to_sigma_form(e.kids[i]);
        std::vector<DiffTerm> next;
        for (const auto& a : acc)
          for (const auto& b : rhs) {
            DiffTerm t;
            t.pos = SetExpr::Intersect_({a.pos, b.pos});
            if (a.neg && b.neg) t.neg = SetExpr::Union_({*a.neg, *b.neg});
            else if (a.neg) t.neg = a.neg;
            else if (b.neg) t.neg = b.neg;
            next.push_back(std::move(t));
          }
        acc = std::move(next);
      }
      return acc;
    }
    case SetExpr::Kind::Diff: {
      auto lhs = to_sigma_form(e.kids[0]);
      for (auto& t : lhs) t.neg = join_neg(t.neg, e.kids[1]);
      return lhs;
    }
    case SetExpr::Kind::Complement:
      return complement_form(e.kids[0]);
    case SetExpr::Kind::DiffHier: {
      std::vector<DiffTerm> out;
      for (int b = 0; b < (int)e.kids.size(); ++b) {
        if ((b % 2) == (e.alpha % 2)) continue;
        DiffTerm t;
        t.pos = e.kids[b];
        if (b > 0) {
          std::vector<SetExpr> prev(e.kids.begin(), e.kids.begin() + b);
          t.neg = prev.size() == 1 ? prev[0] : SetExpr::Union_(prev);
        }
        out.push_back(std::move(t));
      }
      if (out.empty()) {
        // The empty set: Basic(0) minus itself would need a basics contract;
        // use an always-false difference of the first chain member.
        DiffTerm t;
        t.pos = e.kids[0];
        t.neg = e.kids[0];
        out.push_back(std::move(t));
      }
      return out;
    }
  }
  throw error("BadExpr", "unknown node kind");
}

}  // namespace

SetExpr rewrite_sigma_as_pi_union(const SetExpr& e) {
  int a = sigma_rank(e);
  if (a <= 2) throw error("LevelTooLow", "need a Sigma level above 2");
  // e = union of D \ D'; each D unfolds once more, giving terms
  // G \ (G' | D') that are intersections of lower-Pi pieces.
  std::vector<SetExpr> members;
  for (const auto& top : to_sigma_form(e)) {
    auto inner = to_sigma_form(top.pos);
    for (const auto& g : inner) {
      std::optional<SetExpr> neg = top.neg;
      if (g.neg) neg = join_neg(neg, *g.neg);
      SetExpr member = neg.has_value()
                           ? SetExpr::Intersect_({g.pos, SetExpr::Complement_(*neg)})
                           : g.pos;
      members.push_back(std::move(member));
    }
  }
  SetExpr out = members.size() == 1 ? members[0] : SetExpr::Union_(std::move(members));
  return out;
}

DiagonalResult diagonal_expr(const FiniteSpace& sp) {
  if (!topo::is_T0(sp)) throw error("NotT0", "the diagonal formula needs a T0 space");
  DiagonalResult res{topo::product(sp, sp), SetExpr::Basic_(0)};
  const FiniteSpace& pr = res.prod;

  auto rect_index = [&](Mask left, Mask right) {
    Mask r = 0;
    for (int x = 0; x < sp.n; ++x)
      if (has(left, x))
        for (int y = 0; y < sp.n; ++y)
          if (has(right, y)) r |= bit(x * sp.n + y);
    auto it = std::find(pr.basics.begin(), pr.basics.end(), r);
    if (it == pr.basics.end()) throw error("IndexOutOfRange", "missing rectangle basic");
    return (int)(it - pr.basics.begin());
  };

  Mask full = sp.full();
  std::vector<SetExpr> offdiag;
  for (Mask b : sp.basics) {
    if (b == 0 || b == full) continue;
    int bxX = rect_index(b, full);
    int Xxb = rect_index(full, b);
    // B x (X\B) = (B x X) \ (X x B), and its mirror image.
    offdiag.push_back(SetExpr::Diff_(SetExpr::Basic_(bxX), SetExpr::Basic_(Xxb)));
    offdiag.push_back(SetExpr::Diff_(SetExpr::Basic_(Xxb), SetExpr::Basic_(bxX)));
  }
  if (offdiag.empty()) {
    // One-point-like space: the diagonal is everything.
    res.expr = SetExpr::Basic_(rect_index(full, full));
    return res;
  }
  res.expr = SetExpr::Complement_(SetExpr::Union_(std::move(offdiag)));
  return res;
}

EqualizerResult equalizer_expr(const std::vector<int>& f, const std::vector<int>& g,
                               const FiniteSpace& dom, const FiniteSpace& cod) {
  auto preimage = [&](const std::vector<int>& h, Mask b) {
    Mask m = 0;
    for (int x = 0; x < dom.n; ++x)
      if (has(b, h[x])) m |= bit(x);
    return m;
  };
  for (size_t i = 0; i < cod.basics.size(); ++i) {
    if (!dom.is_open(preimage(f, cod.basics[i])))
      throw error("NonContinuousMap",
                  "f-preimage of basic " + std::to_string(i) + " is not open");
    if (!dom.is_open(preimage(g, cod.basics[i])))
      throw error("NonContinuousMap",
                  "g-preimage of basic " + std::to_string(i) + " is not open");
  }
  EqualizerResult res;
  std::vector<SetExpr> terms;
  for (Mask b : cod.basics) {
    Mask fb = preimage(f, b);
    Mask gb = preimage(g, b);
    if (fb == gb) continue;
    auto idx = [&](Mask m) {
      auto it = std::find(res.basics.begin(), res.basics.end(), m);
      if (it != res.basics.end()) return (int)(it - res.basics.begin());
      res.basics.push_back(m);
      return (int)res.basics.size() - 1;
    };
    int fi = idx(fb), gi = idx(gb);
    terms.push_back(SetExpr::Diff_(SetExpr::Basic_(fi), SetExpr::Basic_(gi)));
    terms.push_back(SetExpr::Diff_(SetExpr::Basic_(gi), SetExpr::Basic_(fi)));
  }
  if (terms.empty()) {
    // f and g pull every basic back identically: the equalizer is the whole
    // space.
    res.basics.push_back(dom.full());
    res.expr = SetExpr::Basic_(0);
    return res;
  }
  res.expr = SetExpr::Complement_(SetExpr::Union_(std::move(terms)));
  return res;
}

Mask diff_hier_eval(int alpha, const std::vector<Mask>& sets) {
  if (alpha != (int)sets.size())
    throw error("BadAlpha", "alpha must equal the chain length");
  for (size_t i = 0; i + 1 < sets.size(); ++i)
    if (!subset(sets[i], sets[i + 1]))
      throw error("NonIncreasing", "chain member " + std::to_string(i + 1) +
                                       " does not contain its predecessor");
  Mask out = 0;
  Mask before = 0;
  for (int b = 0; b < alpha; ++b) {
    if ((b % 2) != (alpha % 2)) out |= sets[b] & ~before;
    before |= sets[b];
  }
  return out;
}

std::optional<HkWitness> hk_decompose(const FiniteSpace& sp, Mask target, int maxlen) {
  auto opens = topo::all_opens(sp);
  std::sort(opens.begin(), opens.end(), [](Mask a, Mask b) {
    return std::pair(popcount(a), a) < std::pair(popcount(b), b);
  });
  std::vector<Mask> chain;
  std::optional<HkWitness> found;

  auto dfs = [&](auto&& self, int alpha) -> bool {
    if ((int)chain.size() == alpha) {
      if (diff_hier_eval(alpha, chain) == target) {
        found = HkWitness{alpha, chain};
        return true;
      }
      return false;
    }
    for (Mask u : opens) {
      if (!chain.empty() && !subset(chain.back(), u)) continue;
      chain.push_back(u);
      if (self(self, alpha)) return true;
      chain.pop_back();
    }
    return false;
  };

  for (int alpha = 1; alpha <= maxlen; ++alpha) {
    chain.clear();
    if (dfs(dfs, alpha)) return found;
  }
  return std::nullopt;
}

MaxExprResult max_expr(const FiniteSpace& sp) {
  if (!topo::is_T0(sp)) throw error("NotT0", "maximal-point formula needs a T0 space");
  MaxExprResult res;
  auto idx = [&](Mask m) {
    auto it = std::find(res.basics.begin(), res.basics.end(), m);
    if (it != res.basics.end()) return (int)(it - res.basics.begin());
    res.basics.push_back(m);
    return (int)res.basics.size() - 1;
  };
  // x maximal iff for every y: x below y forces x = y. Per point y the
  // clause is (complement of the closure of y) union {y}, with the
  // singleton as up(y) minus the strict part of the closure.
  std::vector<SetExpr> clauses;
  for (int y = 0; y < sp.n; ++y) {
    Mask not_down = sp.full() & ~sp.down(y);  // open
    Mask up_y = sp.up[y];                     // open
    // {y} = up(y) & closure(y), with closure(y) the complement of not_down.
    SetExpr singleton = SetExpr::Intersect_(
        {SetExpr::Basic_(idx(up_y)),
         SetExpr::Complement_(SetExpr::Basic_(idx(not_down)))});
    clauses.push_back(SetExpr::Union_({SetExpr::Basic_(idx(not_down)), singleton}));
  }
  res.expr = clauses.size() == 1 ? clauses[0] : SetExpr::Intersect_(std::move(clauses));
  return res;
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  char peek() {
    skip();
    if (i >= s.size()) throw error("ParseError", "unexpected end of input");
    return s[i];
  }
  void expect(char c) {
    if (peek() != c)
      throw error("ParseError", std::string("expected '") + c + "' at offset " +
                                    std::to_string(i));
    ++i;
  }
  std::string word() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '-' || s[i] == '_'))
      ++i;
    if (start == i) throw error("ParseError", "expected a word at offset " + std::to_string(start));
    return s.substr(start, i - start);
  }
  int number() {
    std::string w = word();
    try {
      return std::stoi(w);
    } catch (...) {
      throw error("ParseError", "expected a number, got '" + w + "'");
    }
  }

  SetExpr expr() {
    expect('(');
    std::string head = word();
    SetExpr out;
    if (head == "basic") {
      out = SetExpr::Basic_(number());
    } else if (head == "union" || head == "intersect") {
      std::vector<SetExpr> kids;
      while (peek() != ')') kids.push_back(expr());
      out = head == "union" ? SetExpr::Union_(std::move(kids))
                            : SetExpr::Intersect_(std::move(kids));
    } else if (head == "diff") {
      SetExpr a = expr();
      SetExpr b = expr();
      out = SetExpr::Diff_(std::move(a), std::move(b));
    } else if (head == "complement") {
      out = SetExpr::Complement_(expr());
    } else if (head == "diffhier") {
      int alpha = number();
      std::vector<SetExpr> kids;
      while (peek() != ')') kids.push_back(expr());
      out = SetExpr::DiffHier_(alpha, std::move(kids));
    } else {
      throw error("ParseError", "unknown form '" + head + "'");
    }
    expect(')');
    return out;
  }
};

void print_rec(const SetExpr& e, std::ostringstream& os) {
  switch (e.kind) {
    case SetExpr::Kind::Basic:
      os << "(basic " << e.basic << ")";
      return;
    case SetExpr::Kind::Union:
    case SetExpr::Kind::Intersect:
      os << (e.kind == SetExpr::Kind::Union ? "(union" : "(intersect");
      for (const auto& k : e.kids) {
        os << " ";
        print_rec(k, os);
      }
      os << ")";
      return;
    case SetExpr::Kind::Diff:
      os << "(diff ";
      print_rec(e.kids[0], os);
      os << " ";
      print_rec(e.kids[1], os);
      os << ")";
      return;
    case SetExpr::Kind::Complement:
      os << "(complement ";
      print_rec(e.kids[0], os);
      os << ")";
      return;
    case SetExpr::Kind::DiffHier:
      os << "(diffhier " << e.alpha;
      for (const auto& k : e.kids) {
        os << " ";
        print_rec(k, os);
      }
      os << ")";
      return;
  }
}

}  // namespace

SetExpr parse_sexpr(const std::string& text) {
  Parser p{text};
  SetExpr e = p.expr();
  p.skip();
  if (p.i != text.size()) throw error("ParseError", "trailing input");
  return e;
}

std::string print_sexpr(const SetExpr& e) {
  std::ostringstream os;
  print_rec(e, os);
  return os.str();
}

}  // namespace qtop::borel
