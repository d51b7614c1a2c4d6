#include "linkforge/kauffman.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

namespace linkforge {

LaurentPoly2 LaurentPoly2::constant(Int c) { return monomial(0, 0, c); }

LaurentPoly2 LaurentPoly2::monomial(int a_pow, int x_pow, Int c) {
  LaurentPoly2 p;
  if (c != 0) p.terms[{a_pow, x_pow}] = c;
  return p;
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& o) {
  for (const auto& [key, c] : o.terms) {
    Int& slot = terms[key];
    slot += c;
    if (slot == 0) terms.erase(key);
  }
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& o) {
  for (const auto& [key, c] : o.terms) {
    Int& slot = terms[key];
    slot -= c;
    if (slot == 0) terms.erase(key);
  }
  return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 out;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      std::pair<int, int> key{ka.first + kb.first, ka.second + kb.second};
      Int& slot = out.terms[key];
      slot += ca * cb;
      if (slot == 0) out.terms.erase(key);
    }
  return out;
}

LaurentPoly2 LaurentPoly2::shifted(int da, int dx) const {
  LaurentPoly2 out;
  for (const auto& [key, c] : terms) out.terms[{key.first + da, key.second + dx}] = c;
  return out;
}

std::string LaurentPoly2::str() const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms) {
    if (!first) out << (c >= 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    first = false;
    Int ab = std::abs(c);
    bool coeff = ab != 1 || (key.first == 0 && key.second == 0);
    if (coeff) out << ab;
    if (key.first != 0) out << "a^" << key.first;
    if (key.second != 0) out << "x^" << key.second;
  }
  return out.str();
}

LaurentPoly2 kauffman_delta() {
  LaurentPoly2 d = LaurentPoly2::monomial(1, -1, 1);
  d += LaurentPoly2::monomial(-1, -1, 1);
  d -= LaurentPoly2::constant(1);
  return d;
}

// ---------------------------------------------------------------------------
// skein recursion

namespace {

struct GoldenRing {
  using Value = GoldenValue;
  static Value zero() { return {0, 0}; }
  static Value one() { return {1, 0}; }
  static Value mul_x(Value v) { return {v.v, v.u - v.v}; }
  static Value mul_delta(Value v) { return v * golden_sqrt5(); }
  static Value mul_a_pow(Value v, int) { return v; }
};

struct LaurentRing {
  using Value = LaurentPoly2;
  static Value zero() { return {}; }
  static Value one() { return LaurentPoly2::constant(1); }
  static Value mul_x(const Value& v) { return v.shifted(0, 1); }
  static Value mul_delta(const Value& v) { return v * kauffman_delta(); }
  static Value mul_a_pow(const Value& v, int e) { return v.shifted(e, 0); }
};

// positive when the under direction rotated a quarter turn ccw gives the over
int crossing_sign(int under_in, int over_in) {
  return over_in == (under_in + 1) % 4 ? 1 : -1;
}

// kink loop occupying slots (s, s+1)
int kink_sign(int s) { return s % 2 == 0 ? -1 : 1; }

struct TraversalInfo {
  int strand_components = 0;
  int first_bad = -1;               // crossing index, -1 when descending
  Int self_writhe = 0;              // meaningful when descending
};

// Walk every strand in a deterministic order; a crossing is bad when its
// first visit runs under. A diagram with no bad crossings is layered
// descending, hence regular-isotopic to a trivial link with curls.
TraversalInfo traverse(const Diagram& d, const DiagramIndex& idx) {
  TraversalInfo info;
  std::map<int, int> entry_slot_under, entry_slot_over;
  std::vector<int> visit_order;                 // crossing first-visit order
  std::map<int, int> first_entry;               // crossing -> slot of first visit
  std::set<int> walked_edges;

  for (int label : idx.edge_labels()) {
    if (walked_edges.count(label)) continue;
    ++info.strand_components;
    Dart start = idx.darts_of(label)[0];
    Dart cur = start;
    do {
      walked_edges.insert(idx.edge_at(cur));
      if (!first_entry.count(cur.crossing)) {
        first_entry[cur.crossing] = cur.slot;
        visit_order.push_back(cur.crossing);
      }
      if (cur.slot % 2 == 0) entry_slot_under[cur.crossing] = cur.slot;
      else entry_slot_over[cur.crossing] = cur.slot;
      Dart exit{cur.crossing, (cur.slot + 2) % 4};
      walked_edges.insert(idx.edge_at(exit));
      cur = idx.mate(exit);
    } while (!(cur == start));
  }

  for (int ci : visit_order)
    if (first_entry.at(ci) % 2 == 0) {  // first visit went under
      info.first_bad = ci;
      break;
    }

  if (info.first_bad < 0) {
    // self-writhe: signs of the crossings both of whose passages lie on one component
    std::map<int, int> comp_of_edge;
    {
      int comp = 0;
      std::set<int> seen;
      for (int label : idx.edge_labels()) {
        if (seen.count(label)) continue;
        Dart start = idx.darts_of(label)[0];
        Dart cur = start;
        do {
          seen.insert(idx.edge_at(cur));
          comp_of_edge[idx.edge_at(cur)] = comp;
          Dart exit{cur.crossing, (cur.slot + 2) % 4};
          seen.insert(idx.edge_at(exit));
          comp_of_edge[idx.edge_at(exit)] = comp;
          cur = idx.mate(exit);
        } while (!(cur == start));
        ++comp;
      }
    }
    for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
      const Crossing& c = d.crossings[ci];
      if (comp_of_edge.at(c.ends[0]) != comp_of_edge.at(c.ends[1])) continue;
      info.self_writhe += crossing_sign(entry_slot_under.at(ci), entry_slot_over.at(ci));
    }
  }
  return info;
}

template <typename Ring>
class SkeinEngine {
 public:
  explicit SkeinEngine(long budget) : budget_(budget) {}

  using Value = typename Ring::Value;

  Value eval(const Diagram& d) {
    if (++nodes_ > budget_)
      throw SkeinBudgetExceeded("skein recursion budget exceeded");
    if (d.crossings.empty()) {
      if (d.free_loops == 0)
        throw DiagramError("kauffman polynomial of the empty diagram is not defined");
      Value v = Ring::one();
      for (int i = 1; i < d.free_loops; ++i) v = Ring::mul_delta(v);
      return v;
    }
    if (d.free_loops > 0) {
      Diagram stripped = d;
      int f = stripped.free_loops;
      stripped.free_loops = 0;
      Value v = eval(stripped);
      for (int i = 0; i < f; ++i) v = Ring::mul_delta(v);
      return v;
    }

    std::string key = canonical_code(d);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    Value out = reduce(d);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  Value reduce(const Diagram& d) {
    // R1: positive or negative curl
    for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
      const auto& e = d.crossings[ci].ends;
      for (int s = 0; s < 4; ++s)
        if (e[s] == e[(s + 1) % 4]) {
          // the reduction pairs each loop end with its non-loop neighbour
          std::vector<std::pair<int, int>> glue;
          if (s == 0 || s == 2)
            glue = {{e[1], e[2]}, {e[3], e[0]}};
          else
            glue = {{e[0], e[1]}, {e[2], e[3]}};
          return Ring::mul_a_pow(eval(splice(d, {ci}, glue)), kink_sign(s));
        }
    }

    // R2: two crossings sharing an over-over edge and an under-under edge
    {
      DiagramIndex idx(d);
      for (int label : idx.edge_labels()) {
        const auto& ds = idx.darts_of(label);
        if (ds.size() != 2 || ds[0].crossing == ds[1].crossing) continue;
        if (ds[0].slot % 2 == 0 || ds[1].slot % 2 == 0) continue;  // need over at both
        int b1 = ds[0].crossing, b2 = ds[1].crossing;
        // a second shared edge that is under at both
        for (int s1 = 0; s1 < 4; s1 += 2) {
          int f = d.crossings[b1].ends[s1];
          const auto& fd = idx.darts_of(f);
          if (fd.size() != 2) continue;
          Dart other = fd[0].crossing == b1 && fd[0].slot == s1 ? fd[1] : fd[0];
          if (other.crossing != b2 || other.slot % 2 != 0) continue;
          // strand through `label` pulls off strand through `f`
          const auto& e1 = d.crossings[b1].ends;
          const auto& e2 = d.crossings[b2].ends;
          int u1 = e1[ds[0].slot == 1 ? 3 : 1];  // other over end at b1
          int u2 = e2[ds[1].slot == 1 ? 3 : 1];
          int v1 = e1[s1 == 0 ? 2 : 0];          // other under end at b1
          int v2 = e2[other.slot == 0 ? 2 : 0];
          std::vector<std::pair<int, int>> glue = {{u1, label}, {label, u2}, {v1, f}, {f, v2}};
          return eval(splice(d, {b1, b2}, glue));
        }
      }
    }

    DiagramIndex idx(d);
    TraversalInfo info = traverse(d, idx);
    if (info.first_bad < 0) {
      Value v = Ring::one();
      for (int i = 1; i < info.strand_components; ++i) v = Ring::mul_delta(v);
      return Ring::mul_a_pow(v, static_cast<int>(info.self_writhe));
    }

    const auto& e = d.crossings[info.first_bad].ends;
    Diagram s0 = splice(d, {info.first_bad}, {{e[0], e[1]}, {e[2], e[3]}});
    Diagram s1 = splice(d, {info.first_bad}, {{e[0], e[3]}, {e[1], e[2]}});
    Diagram sw = switch_crossing(d, info.first_bad);
    Value smoothed = eval(s0);
    smoothed = smoothed + eval(s1);
    return Ring::mul_x(smoothed) - eval(sw);
  }

  long budget_;
  long nodes_ = 0;
  std::map<std::string, Value> memo_;
};

}  // namespace

long skein_node_budget() {
  if (const char* env = std::getenv("LINKFORGE_NODE_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 5'000'000;
}

LaurentPoly2 kauffman_framed(const Diagram& d, long node_budget) {
  validate(d);
  SkeinEngine<LaurentRing> engine(node_budget);
  return engine.eval(d);
}

LaurentPoly2 kauffman_framed(const Diagram& d) { return kauffman_framed(d, skein_node_budget()); }

GoldenValue eval_phi5(const Diagram& d, long node_budget) {
  validate(d);
  SkeinEngine<GoldenRing> engine(node_budget);
  return engine.eval(d);
}

GoldenValue eval_phi5(const Diagram& d) { return eval_phi5(d, skein_node_budget()); }

GoldenValue golden_eval(const LaurentPoly2& p) {
  GoldenValue x{0, 1};
  GoldenValue x_inv{1, 1};  // x(x+1) = 1
  GoldenValue acc{0, 0};
  for (const auto& [key, c] : p.terms) {
    GoldenValue term{c, 0};  // a = 1
    GoldenValue base = key.second >= 0 ? x : x_inv;
    for (int i = 0; i < std::abs(key.second); ++i) term = term * base;
    acc = acc + term;
  }
  return acc;
}

PhiDecomposition decompose(const GoldenValue& g) {
  if (g.is_zero()) throw std::domain_error("decompose: zero is not a +-sqrt5 power");
  auto as_power_of_5 = [](Int c) -> std::optional<int> {
    int m = 0;
    Int a = std::abs(c);
    while (a % 5 == 0) {
      a /= 5;
      ++m;
    }
    if (a != 1) return std::nullopt;
    return m;
  };
  if (g.v == 0) {
    auto m = as_power_of_5(g.u);
    if (!m) throw std::domain_error("decompose: not a +-sqrt5 power");
    return {g.u > 0 ? 1 : -1, 2 * *m};
  }
  if (g.v == 2 * g.u && g.u != 0) {  // c * (2x + 1)
    auto m = as_power_of_5(g.u);
    if (!m) throw std::domain_error("decompose: not a +-sqrt5 power");
    return {g.u > 0 ? 1 : -1, 2 * *m + 1};
  }
  throw std::domain_error("decompose: not a +-sqrt5 power");
}

}  // namespace linkforge
