#include "linkforge/moves.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "linkforge/kauffman.hpp"

namespace linkforge {

namespace {

Dart resolve_dart(const DiagramIndex& idx, const StrandRef& r) {
  if (r.loop) throw MoveError("strand reference is a free loop, not an edge");
  if (!idx.has_edge(r.edge)) throw MoveError("site references an unknown arc");
  const auto& ds = idx.darts_of(r.edge);
  if (r.end < 0 || r.end >= static_cast<int>(ds.size()))
    throw MoveError("site references a missing arc end");
  return ds[r.end];
}

void check_loop_ref(const Diagram& d, const StrandRef& r) {
  if (r.edge < 0 || r.edge >= d.free_loops)
    throw MoveError("site references a missing free loop");
}

int fresh_label(const Diagram& d) { return std::max(max_edge_label(d), 0) + 1; }

// state of the left-to-right tangle assembly
struct BuildState {
  Diagram work;
  int next = 0;
  int ne = 0, se = 0, sw = 0;
  bool started = false;  // at least one horizontal twist laid down

  int fresh() { return next++; }

  void add_crossing(std::array<int, 4> ends) {
    Crossing c;
    c.id = static_cast<int>(work.crossings.size());
    c.ends = ends;
    work.crossings.push_back(c);
  }

  void htwist(int sign) {
    int t = fresh(), b = fresh();
    if (sign > 0)
      add_crossing({ne, se, b, t});  // under strand NW -> SE
    else
      add_crossing({se, b, t, ne});  // under strand SW -> NE
    ne = t;
    se = b;
    started = true;
  }

  void vtwist(int sign) {
    if (!started) throw MoveError("twist program starts with a vertical twist");
    int l = fresh(), r = fresh();
    if (sign > 0)
      add_crossing({sw, l, r, se});
    else
      add_crossing({l, r, se, sw});
    sw = l;
    se = r;
  }
};

// one twist per entry: ('A', +-1) horizontal, ('B', +-1) vertical
using TwistOps = std::vector<std::pair<char, int>>;

TwistOps to_ops(const TwistProgram& p) {
  TwistOps ops;
  for (size_t level = 0; level < p.levels.size(); ++level) {
    char axis = level % 2 == 0 ? 'A' : 'B';
    int a = p.levels[level];
    for (int i = 0; i < std::abs(a); ++i) ops.emplace_back(axis, a > 0 ? 1 : -1);
  }
  return ops;
}

struct CutStrand {
  int left = 0, right = 0;  // open label ends feeding the region
};

// Cut the referenced strands and return the working diagram plus stubs.
struct CutResult {
  Diagram work;
  CutStrand a, b;
  int next_label = 0;
};

CutResult cut_site(const Diagram& d, const StrandRef& ra, const StrandRef& rb,
                   bool require_common_face) {
  CutResult out;
  out.work = d;
  out.next_label = fresh_label(d);

  if (!ra.loop && !rb.loop) {
    if (ra.edge == rb.edge) throw MoveError("degenerate site: both strands on one arc");
    DiagramIndex idx(d);
    Dart da = resolve_dart(idx, ra), db = resolve_dart(idx, rb);
    if (require_common_face) {
      FaceStructure fs = faces(d);
      if (fs.face_of.at(da) != fs.face_of.at(db))
        throw MoveError("site strands do not bound a common face");
    }
    Dart ma = idx.mate(da), mb = idx.mate(db);
    int a1 = out.next_label++, a2 = out.next_label++;
    int b1 = out.next_label++, b2 = out.next_label++;
    out.work.crossings[da.crossing].ends[da.slot] = a1;
    out.work.crossings[ma.crossing].ends[ma.slot] = a2;
    out.work.crossings[db.crossing].ends[db.slot] = b1;
    out.work.crossings[mb.crossing].ends[mb.slot] = b2;
    // strand A walks in at the chosen dart, B walks out there
    out.a = {a1, a2};
    out.b = {b2, b1};
    return out;
  }

  if (ra.loop && rb.loop) {
    check_loop_ref(d, ra);
    check_loop_ref(d, rb);
    bool same = ra.edge == rb.edge;
    out.work.free_loops -= same ? 1 : 2;
    if (out.work.free_loops < 0) throw MoveError("site references a missing free loop");
    if (same) {
      // one circle cut twice: the outer arcs join left legs to left legs and
      // right legs to right legs
      int x = out.next_label++, y = out.next_label++;
      out.a = {x, y};
      out.b = {x, y};
      return out;
    }
    int x = out.next_label++, y = out.next_label++;
    out.a = {x, x};
    out.b = {y, y};
    return out;
  }

  // one loop, one edge
  const StrandRef& loop_ref = ra.loop ? ra : rb;
  const StrandRef& edge_ref = ra.loop ? rb : ra;
  check_loop_ref(d, loop_ref);
  DiagramIndex idx(d);
  Dart de = resolve_dart(idx, edge_ref);
  Dart me = idx.mate(de);
  out.work.free_loops -= 1;
  int e1 = out.next_label++, e2 = out.next_label++;
  int l = out.next_label++;
  out.work.crossings[de.crossing].ends[de.slot] = e1;
  out.work.crossings[me.crossing].ends[me.slot] = e2;
  CutStrand edge_strand{e1, e2};
  CutStrand loop_strand{l, l};
  if (ra.loop) {
    out.a = loop_strand;
    out.b = {edge_strand.right, edge_strand.left};
  } else {
    out.a = edge_strand;
    out.b = loop_strand;
  }
  return out;
}

Diagram assemble(const CutResult& cut, const TwistOps& ops) {
  BuildState st;
  st.work = cut.work;
  st.next = cut.next_label;
  // standalone stubs for the four region legs
  int nw = st.fresh(), sw0 = st.fresh();
  st.ne = nw;
  st.se = sw0;
  st.sw = sw0;

  for (auto [axis, sign] : ops) {
    if (axis == 'A')
      st.htwist(sign);
    else
      st.vtwist(sign);
  }

  std::vector<std::pair<int, int>> glue = {
      {nw, cut.a.left}, {st.ne, cut.a.right}, {st.sw, cut.b.left}, {st.se, cut.b.right}};
  return splice(st.work, {}, glue);
}

}  // namespace

TwistProgram TwistProgram::n_move(int n) { return TwistProgram{{n}}; }

TwistProgram TwistProgram::sq_move(int s, int q) {
  if (q == 0) return TwistProgram{{s}};
  int u = q > 0 ? 1 : -1;
  return TwistProgram{{u, q - u, s}};
}

TwistProgram TwistProgram::rational(int p, int q) {
  if (q == 0) throw MoveError("rational move needs q != 0");
  if (std::gcd(p, q) != 1 && !(p == 0 && std::abs(q) == 1))
    throw MoveError("rational move needs gcd(p, q) = 1");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  std::vector<int> outer_first;
  int a = p, b = q;
  while (b != 0) {
    int quot = a / b;
    int rem = a - quot * b;
    outer_first.push_back(quot);
    a = b;
    b = rem;
  }
  std::vector<int> levels(outer_first.rbegin(), outer_first.rend());  // innermost first
  while (levels.size() % 2 == 0) {
    if (levels[0] == 1) {
      levels.erase(levels.begin());
      levels[0] += 1;
    } else if (levels[0] == -1) {
      levels.erase(levels.begin());
      levels[0] -= 1;
    } else if (levels[0] > 0) {
      levels[0] -= 1;
      levels.insert(levels.begin(), 1);
    } else {
      levels[0] += 1;
      levels.insert(levels.begin(), -1);
    }
  }
  return TwistProgram{levels};
}

Diagram insert_tangle(const Diagram& d, const StrandRef& a, const StrandRef& b,
                      const TwistProgram& program) {
  CutResult cut = cut_site(d, a, b, true);
  return assemble(cut, to_ops(program));
}

Diagram insert_infinity(const Diagram& d, const StrandRef& a, const StrandRef& b) {
  CutResult cut = cut_site(d, a, b, true);
  std::vector<std::pair<int, int>> glue = {{cut.a.left, cut.b.left}, {cut.a.right, cut.b.right}};
  return splice(cut.work, {}, glue);
}

// ---------------------------------------------------------------------------
// Reidemeister moves

namespace {

Diagram apply_r1_plus(const Diagram& d, const StrandRef& r, int sign) {
  Diagram work = d;
  int next = fresh_label(d);
  int u, v;
  if (r.loop) {
    check_loop_ref(d, r);
    work.free_loops -= 1;
    u = v = next++;
  } else {
    DiagramIndex idx(d);
    Dart da = resolve_dart(idx, r);
    Dart ma = idx.mate(da);
    u = next++;
    v = next++;
    work.crossings[da.crossing].ends[da.slot] = u;
    work.crossings[ma.crossing].ends[ma.slot] = v;
  }
  int loop = next++;
  Crossing c;
  c.id = static_cast<int>(work.crossings.size());
  if (sign > 0)
    c.ends = {u, loop, loop, v};  // loop at slots 1,2
  else
    c.ends = {u, v, loop, loop};  // loop at slots 2,3
  work.crossings.push_back(c);
  Diagram out = normalize(std::move(work));
  validate(out);
  return out;
}

Diagram apply_r1_minus(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= static_cast<int>(d.crossings.size()))
    throw MoveError("R1-: no such crossing");
  const auto& e = d.crossings[crossing].ends;
  for (int s = 0; s < 4; ++s)
    if (e[s] == e[(s + 1) % 4]) {
      std::vector<std::pair<int, int>> glue;
      if (s == 0 || s == 2)
        glue = {{e[1], e[2]}, {e[3], e[0]}};
      else
        glue = {{e[0], e[1]}, {e[2], e[3]}};
      return splice(d, {crossing}, glue);
    }
  throw MoveError("R1-: crossing is not a kink");
}

struct R2Pattern {
  int over_label, under_label;
  int u1, u2, v1, v2;
};

std::optional<R2Pattern> find_r2_pattern(const Diagram& d, int b1, int b2) {
  if (b1 == b2) return std::nullopt;
  const auto& e1 = d.crossings[b1].ends;
  const auto& e2 = d.crossings[b2].ends;
  auto slot_of = [](const std::array<int, 4>& e, int label, int parity) {
    for (int s = parity; s < 4; s += 2)
      if (e[s] == label) return s;
    return -1;
  };
  for (int so1 = 1; so1 < 4; so1 += 2) {
    int over = e1[so1];
    int so2 = slot_of(e2, over, 1);
    if (so2 < 0) continue;
    for (int su1 = 0; su1 < 4; su1 += 2) {
      int under = e1[su1];
      if (under == over) continue;
      int su2 = slot_of(e2, under, 0);
      if (su2 < 0) continue;
      R2Pattern p;
      p.over_label = over;
      p.under_label = under;
      p.u1 = e1[so1 == 1 ? 3 : 1];
      p.u2 = e2[so2 == 1 ? 3 : 1];
      p.v1 = e1[su1 == 0 ? 2 : 0];
      p.v2 = e2[su2 == 0 ? 2 : 0];
      return p;
    }
  }
  return std::nullopt;
}

Diagram apply_r2_minus(const Diagram& d, int b1, int b2) {
  if (b1 < 0 || b2 < 0 || b1 >= static_cast<int>(d.crossings.size()) ||
      b2 >= static_cast<int>(d.crossings.size()))
    throw MoveError("R2-: no such crossing");
  auto p = find_r2_pattern(d, b1, b2);
  if (!p) throw MoveError("R2-: crossings do not form a reducible bigon");
  std::vector<std::pair<int, int>> glue = {{p->u1, p->over_label},
                                           {p->over_label, p->u2},
                                           {p->v1, p->under_label},
                                           {p->under_label, p->v2}};
  return splice(d, {b1, b2}, glue);
}

// R3: flip a triangle face across the opposite crossing.
Diagram apply_r3(const Diagram& d, std::vector<int> ids) {
  if (ids.size() != 3) throw MoveError("R3 needs three crossings");
  std::sort(ids.begin(), ids.end());
  for (int c : ids)
    if (c < 0 || c >= static_cast<int>(d.crossings.size())) throw MoveError("R3: no such crossing");

  FaceStructure fs = faces(d);
  const std::vector<Dart>* tri = nullptr;
  for (const auto& face : fs.faces) {
    if (face.size() != 3) continue;
    std::vector<int> cs = {face[0].crossing, face[1].crossing, face[2].crossing};
    std::sort(cs.begin(), cs.end());
    if (cs == ids) {
      tri = &face;
      break;
    }
  }
  if (!tri) throw MoveError("R3: crossings do not bound a triangle face");

  DiagramIndex idx(d);
  // triangle sides and the crossing pair each one joins
  struct Side {
    int label;
    int c1, s1, c2, s2;  // its two darts
  };
  std::vector<Side> sides;
  for (const Dart& dart : *tri) {
    int label = idx.edge_at(dart);
    const auto& ds = idx.darts_of(label);
    if (ds.size() != 2) throw MoveError("R3: degenerate triangle side");
    sides.push_back({label, ds[0].crossing, ds[0].slot, ds[1].crossing, ds[1].slot});
  }
  std::set<int> labels;
  for (const Side& s : sides) labels.insert(s.label);
  if (labels.size() != 3) throw MoveError("R3: degenerate triangle");
  for (const Side& s : sides) {
    bool in1 = std::find(ids.begin(), ids.end(), s.c1) != ids.end();
    bool in2 = std::find(ids.begin(), ids.end(), s.c2) != ids.end();
    if (!in1 || !in2 || s.c1 == s.c2) throw MoveError("R3: triangle sides leave the triangle");
  }

  // the strand over at both of its triangle crossings
  const Side* top = nullptr;
  for (const Side& s : sides)
    if (s.s1 % 2 == 1 && s.s2 % 2 == 1) top = &s;
  if (!top) throw MoveError("R3: cyclically woven triangle admits no slide");

  int P = top->c1, Q = top->c2;
  int R = -1;
  for (int c : ids)
    if (c != P && c != Q) R = c;

  auto side_between = [&](int ca, int cb) -> const Side* {
    for (const Side& s : sides) {
      if ((s.c1 == ca && s.c2 == cb) || (s.c1 == cb && s.c2 == ca)) return &s;
    }
    return nullptr;
  };
  const Side* sx = side_between(P, R);
  const Side* sy = side_between(Q, R);
  if (!sx || !sy) throw MoveError("R3: triangle sides unresolved");

  auto slot_at = [&](const Side* s, int c) { return s->c1 == c ? s->s1 : s->s2; };

  // orient the corner at R so the derived tuples apply
  if ((slot_at(sx, R) + 1) % 4 != slot_at(sy, R)) {
    std::swap(P, Q);
    std::swap(sx, sy);
    if ((slot_at(sx, R) + 1) % 4 != slot_at(sy, R))
      throw MoveError("R3: unexpected corner structure");
  }

  // the six outer endpoints of the region (slots of P, Q, R holding outer legs)
  Dart tin_slot{P, (slot_at(top, P) + 2) % 4};
  Dart tout_slot{Q, (slot_at(top, Q) + 2) % 4};
  Dart xout_slot{P, (slot_at(sx, P) + 2) % 4};
  Dart yout_slot{Q, (slot_at(sy, Q) + 2) % 4};
  Dart xfar_slot{R, (slot_at(sx, R) + 2) % 4};
  Dart yfar_slot{R, (slot_at(sy, R) + 2) % 4};

  // rebuild dart-wise: P and Q vanish, the slid crossings appear past R, and
  // every outer edge is re-attached through the endpoint correspondence
  int n_old = static_cast<int>(d.crossings.size());
  int Qn = n_old, Pn = n_old + 1;  // indices before compaction
  std::map<Dart, Dart> port;       // old outer endpoint -> new dart
  port[tin_slot] = Dart{Qn, 3};
  port[tout_slot] = Dart{Pn, 1};
  port[xout_slot] = Dart{R, slot_at(sx, R)};
  port[yout_slot] = Dart{R, slot_at(sy, R)};
  port[xfar_slot] = Dart{Pn, 2};
  port[yfar_slot] = Dart{Qn, 2};

  std::vector<Crossing> table = d.crossings;
  Crossing qNew, pNew;
  table.push_back(qNew);
  table.push_back(pNew);

  int next = fresh_label(d);
  // internal edges of the slid configuration
  int x1 = next++, y1 = next++, t_mid = next++;
  table[R].ends[(slot_at(sx, R) + 2) % 4] = x1;
  table[R].ends[(slot_at(sy, R) + 2) % 4] = y1;
  table[Qn].ends = {y1, t_mid, 0, 0};
  table[Pn].ends = {x1, 0, 0, t_mid};

  // outer edges, one fresh label per connection
  std::set<Dart> handled;
  for (const Dart& ep : {tin_slot, tout_slot, xout_slot, yout_slot, xfar_slot, yfar_slot}) {
    if (handled.count(ep)) continue;
    int label = d.crossings[ep.crossing].ends[ep.slot];
    const auto& ds = idx.darts_of(label);
    Dart other = ds[0] == ep ? ds[1] : ds[0];
    int fresh = next++;
    Dart a = port.at(ep);
    table[a.crossing].ends[a.slot] = fresh;
    handled.insert(ep);
    if (port.count(other)) {
      Dart b = port.at(other);
      table[b.crossing].ends[b.slot] = fresh;
      handled.insert(other);
    } else {
      table[other.crossing].ends[other.slot] = fresh;
    }
  }

  Diagram out;
  out.free_loops = d.free_loops;
  for (int ci = 0; ci < static_cast<int>(table.size()); ++ci)
    if (ci != P && ci != Q) out.crossings.push_back(table[ci]);
  out = normalize(std::move(out));
  validate(out);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// site enumeration

std::vector<MoveSite> insertion_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  DiagramIndex idx(d);
  FaceStructure fs = faces(d);
  auto ref_of = [&](Dart dart) {
    int e = idx.edge_at(dart);
    const auto& ds = idx.darts_of(e);
    int end = ds[0] == dart ? 0 : 1;
    return StrandRef{false, e, end};
  };
  for (const auto& face : fs.faces) {
    for (size_t i = 0; i < face.size(); ++i)
      for (size_t j = 0; j < face.size(); ++j) {
        if (i == j) continue;
        if (idx.edge_at(face[i]) == idx.edge_at(face[j])) continue;
        sites.push_back(MoveSite{ref_of(face[i]), ref_of(face[j]), {}});
      }
    // a free loop may float into any face
    for (int l = 0; l < d.free_loops; ++l)
      for (const Dart& dart : face) {
        sites.push_back(MoveSite{StrandRef{true, l, 0}, ref_of(dart), {}});
        sites.push_back(MoveSite{ref_of(dart), StrandRef{true, l, 0}, {}});
      }
  }
  for (int l = 0; l < d.free_loops; ++l) {
    sites.push_back(MoveSite{StrandRef{true, l, 0}, StrandRef{true, l, 0}, {}});
    for (int m = l + 1; m < d.free_loops; ++m)
      sites.push_back(MoveSite{StrandRef{true, l, 0}, StrandRef{true, m, 0}, {}});
  }
  return sites;
}

std::vector<MoveSite> r1_deletion_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
    const auto& e = d.crossings[ci].ends;
    for (int s = 0; s < 4; ++s)
      if (e[s] == e[(s + 1) % 4]) {
        sites.push_back(MoveSite{{}, {}, {ci}});
        break;
      }
  }
  return sites;
}

std::vector<MoveSite> r2_deletion_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  int n = static_cast<int>(d.crossings.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (find_r2_pattern(d, i, j)) sites.push_back(MoveSite{{}, {}, {i, j}});
  return sites;
}

std::vector<MoveSite> r3_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  FaceStructure fs = faces(d);
  for (const auto& face : fs.faces) {
    if (face.size() != 3) continue;
    std::vector<int> ids = {face[0].crossing, face[1].crossing, face[2].crossing};
    std::sort(ids.begin(), ids.end());
    if (ids[0] == ids[1] || ids[1] == ids[2]) continue;
    try {
      apply_r3(d, ids);
      sites.push_back(MoveSite{{}, {}, ids});
    } catch (const MoveError&) {
    }
  }
  return sites;
}

Diagram r_reduce(const Diagram& d) {
  Diagram cur = d;
  while (true) {
    auto r1 = r1_deletion_sites(cur);
    if (!r1.empty()) {
      cur = apply_r1_minus(cur, r1.front().crossings[0]);
      continue;
    }
    auto r2 = r2_deletion_sites(cur);
    if (!r2.empty()) {
      cur = apply_r2_minus(cur, r2.front().crossings[0], r2.front().crossings[1]);
      continue;
    }
    return cur;
  }
}

// ---------------------------------------------------------------------------
// twist deletions: accept when some insertion at the restored site rebuilds
// the original diagram

namespace {

Diagram delete_twists(const Diagram& d, const std::vector<int>& ids, const TwistProgram& program) {
  if (ids.empty()) throw MoveError("twist deletion needs the consumed crossings");
  std::set<int> removed(ids.begin(), ids.end());
  if (removed.size() != ids.size()) throw MoveError("twist deletion repeats a crossing");
  for (int c : ids)
    if (c < 0 || c >= static_cast<int>(d.crossings.size()))
      throw MoveError("twist deletion: no such crossing");

  int expected = 0;
  for (size_t i = 0; i < program.levels.size(); ++i) expected += std::abs(program.levels[i]);
  if (expected != static_cast<int>(ids.size()))
    throw MoveError("twist deletion: crossing count does not match the move");

  // stub labels: appearances split between removed and kept crossings; edges
  // fully among the removed crossings are either internal to the tangle or
  // arcs of the link passing outside the region, so both readings are tried
  std::map<int, int> in_removed, total;
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci)
    for (int e : d.crossings[ci].ends) {
      ++total[e];
      if (removed.count(ci)) ++in_removed[e];
    }
  std::vector<int> stubs, enclosed;
  for (const auto& [e, k] : in_removed) {
    if (total[e] - k == 1) stubs.push_back(e);
    if (total[e] == 2 && k == 2) enclosed.push_back(e);
  }

  std::string want = canonical_code(d);

  auto try_splice = [&](const std::vector<std::pair<int, int>>& glue) -> std::optional<Diagram> {
    Diagram candidate;
    try {
      candidate = splice(d, ids, glue);
    } catch (const DiagramError&) {
      return std::nullopt;
    }
    for (const MoveSite& site : insertion_sites(candidate)) {
      try {
        if (canonical_code(insert_tangle(candidate, site.a, site.b, program)) == want)
          return candidate;
      } catch (const DiagramError&) {
      }
    }
    return std::nullopt;
  };

  // pairings of four leg ends, with through-arcs contributing both of theirs
  auto pairings_of = [](const std::vector<int>& legs) {
    std::vector<std::vector<std::pair<int, int>>> out;
    out.push_back({{legs[0], legs[1]}, {legs[2], legs[3]}});
    out.push_back({{legs[0], legs[2]}, {legs[1], legs[3]}});
    out.push_back({{legs[0], legs[3]}, {legs[1], legs[2]}});
    return out;
  };

  if (static_cast<int>(enclosed.size()) > 16)
    throw MoveError("twist deletion: region too entangled");

  if (stubs.size() == 4) {
    for (const auto& glue : pairings_of(stubs))
      if (auto res = try_splice(glue)) return *res;
  } else if (stubs.size() == 2) {
    for (int through : enclosed) {
      std::vector<int> legs = {stubs[0], stubs[1], through, through};
      for (const auto& glue : pairings_of(legs))
        if (auto res = try_splice(glue)) return *res;
    }
  } else if (stubs.empty()) {
    for (size_t i = 0; i < enclosed.size(); ++i)
      for (size_t j = i + 1; j < enclosed.size(); ++j) {
        std::vector<int> legs = {enclosed[i], enclosed[i], enclosed[j], enclosed[j]};
        for (const auto& glue : pairings_of(legs))
          if (auto res = try_splice(glue)) return *res;
      }
  } else {
    throw MoveError("twist deletion: region does not detach with four ends");
  }
  throw MoveError("twist deletion: region is not the inserted tangle");
}

}  // namespace

// ---------------------------------------------------------------------------

Diagram apply(const Diagram& d, const Move& m) {
  switch (m.kind) {
    case MoveKind::R1Plus:
      return apply_r1_plus(d, m.site.a, m.sign);
    case MoveKind::R1Minus:
      if (m.site.crossings.size() != 1) throw MoveError("R1- consumes one crossing");
      return apply_r1_minus(d, m.site.crossings[0]);
    case MoveKind::R2Plus: {
      TwistOps ops = {{'A', m.sign >= 0 ? 1 : -1}, {'A', m.sign >= 0 ? -1 : 1}};
      CutResult cut = cut_site(d, m.site.a, m.site.b, true);
      return assemble(cut, ops);
    }
    case MoveKind::R2Minus:
      if (m.site.crossings.size() != 2) throw MoveError("R2- consumes two crossings");
      return apply_r2_minus(d, m.site.crossings[0], m.site.crossings[1]);
    case MoveKind::R3:
      return apply_r3(d, m.site.crossings);
    case MoveKind::NMove:
      if (m.remove) return delete_twists(d, m.site.crossings, TwistProgram::n_move(m.n));
      return insert_tangle(d, m.site.a, m.site.b, TwistProgram::n_move(m.n));
    case MoveKind::SQMove:
      if (m.remove) return delete_twists(d, m.site.crossings, TwistProgram::sq_move(m.s, m.q));
      return insert_tangle(d, m.site.a, m.site.b, TwistProgram::sq_move(m.s, m.q));
    case MoveKind::RationalMove:
      return insert_tangle(d, m.site.a, m.site.b, TwistProgram::rational(m.p, m.q));
  }
  throw MoveError("unknown move kind");
}

// ---------------------------------------------------------------------------
// certificates

namespace {

std::string kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::R1Plus: return "r1+";
    case MoveKind::R1Minus: return "r1-";
    case MoveKind::R2Plus: return "r2+";
    case MoveKind::R2Minus: return "r2-";
    case MoveKind::R3: return "r3";
    case MoveKind::NMove: return "n";
    case MoveKind::SQMove: return "sq";
    case MoveKind::RationalMove: return "rational";
  }
  return "?";
}

bool counts_as_22(const Move& m) {
  if (m.kind == MoveKind::SQMove) return std::abs(m.s) == 2 && std::abs(m.q) == 2;
  if (m.kind == MoveKind::RationalMove) return std::abs(m.p) == 5 && std::abs(m.q) == 2;
  return false;
}

}  // namespace

CertificateReport verify_certificate(const MoveCertificate& c) {
  CertificateReport rep;
  if (!c.start_diagram)
    throw MoveError("certificate start diagram unresolved (name: " + c.start_name + ")");
  Diagram cur = *c.start_diagram;
  validate(cur);
  for (int i = 0; i < static_cast<int>(c.steps.size()); ++i) {
    try {
      cur = apply(cur, c.steps[i]);
    } catch (const DiagramError& err) {
      rep.valid = false;
      rep.failed_step = i;
      rep.reason = err.what();
      rep.final_diagram = cur;
      return rep;
    }
    ++rep.move_counts[kind_name(c.steps[i].kind)];
    if (counts_as_22(c.steps[i])) ++rep.count_22;
  }
  rep.final_components = components(cur);
  rep.final_crossings = static_cast<int>(cur.crossings.size());
  rep.final_diagram = cur;
  if (rep.final_components != c.claim_components || rep.final_crossings != c.claim_crossings) {
    rep.valid = false;
    rep.reason = "final diagram does not match the claim";
    return rep;
  }
  rep.valid = true;
  return rep;
}

// ---------------------------------------------------------------------------
// rotors

bool is_n_rotor(const Tangle& t, int n) {
  if (static_cast<int>(t.boundary.size()) != 2 * n)
    throw MoveError("rotor arity mismatch");
  return canonical_code(t) == canonical_code(tangle_rotate(t, 2));
}

Diagram glue_tangles(const Tangle& stator, const Tangle& rotor) {
  if (stator.boundary.size() != rotor.boundary.size())
    throw MoveError("tangle arity mismatch");
  int m = static_cast<int>(stator.boundary.size());

  int offset = std::max(max_edge_label(stator.diagram),
                        *std::max_element(stator.boundary.begin(), stator.boundary.end())) +
               1;
  int rmin = 0;
  for (const Crossing& c : rotor.diagram.crossings)
    for (int e : c.ends) rmin = std::min(rmin, e);
  for (int e : rotor.boundary) rmin = std::min(rmin, e);
  offset -= std::min(rmin, 0);

  Diagram merged = stator.diagram;
  Diagram rd = relabeled(rotor.diagram, offset);
  for (Crossing c : rd.crossings) {
    c.id = static_cast<int>(merged.crossings.size());
    merged.crossings.push_back(c);
  }
  merged.free_loops += rotor.diagram.free_loops;

  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < m; ++i)
    glue.emplace_back(stator.boundary[i], rotor.boundary[(m - 1 - i) % m] + offset);
  return splice(merged, {}, glue);
}

GluedRotor glue_rotor(const Tangle& stator, const Tangle& rotor) {
  GluedRotor out;
  out.diagram = glue_tangles(stator, rotor);
  int n_stator = static_cast<int>(stator.diagram.crossings.size());
  int n_rotor = static_cast<int>(rotor.diagram.crossings.size());
  for (int i = 0; i < n_rotor; ++i) out.marker.crossings.push_back(n_stator + i);

  // read the merged frontier labels off the glued diagram: the rotor crossing
  // slots kept their order under the splice, as did the stator's
  int m = static_cast<int>(rotor.boundary.size());
  DiagramIndex rotor_idx(rotor.diagram);
  DiagramIndex stator_idx(stator.diagram);
  out.marker.boundary.resize(m);
  std::map<int, int> rotor_boundary_seen, stator_boundary_seen;
  for (int k = 0; k < m; ++k) {
    int rlabel = rotor.boundary[k];
    if (rotor_idx.has_edge(rlabel)) {
      int which = rotor_boundary_seen[rlabel]++;
      Dart dart = rotor_idx.darts_of(rlabel)[which];
      out.marker.boundary[k] = out.diagram.crossings[n_stator + dart.crossing].ends[dart.slot];
      continue;
    }
    int slabel = stator.boundary[(m - 1 - k) % m];
    if (stator_idx.has_edge(slabel)) {
      int which = stator_boundary_seen[slabel]++;
      Dart dart = stator_idx.darts_of(slabel)[which];
      out.marker.boundary[k] = out.diagram.crossings[dart.crossing].ends[dart.slot];
      continue;
    }
    throw MoveError("glue_rotor: frontier position lacks a crossing on either side");
  }
  return out;
}

Diagram rotor_flip(const Diagram& d, const RotorMarker& marker) {
  std::set<int> rotor_set(marker.crossings.begin(), marker.crossings.end());
  if (rotor_set.size() != marker.crossings.size()) throw MoveError("rotor crossings repeat");
  for (int c : marker.crossings)
    if (c < 0 || c >= static_cast<int>(d.crossings.size()))
      throw MoveError("rotor marker: no such crossing");
  int m = static_cast<int>(marker.boundary.size());
  if (m == 0 || m % 2 != 0) throw MoveError("rotor boundary must list 2n edges");

  DiagramIndex idx(d);

  // classify boundary edges and find each position's attachment
  struct Attach {
    bool through = false;
    int partner = -1;  // through: the matching position
    Dart dart;         // otherwise: the rotor-side dart
  };
  std::map<int, std::vector<int>> positions_of;
  for (int i = 0; i < m; ++i) positions_of[marker.boundary[i]].push_back(i);

  std::vector<Attach> rotor_attach(m), stator_attach(m);
  for (const auto& [label, pos] : positions_of) {
    const auto& ds = idx.darts_of(label);
    int inside = 0;
    for (const Dart& dart : ds)
      if (rotor_set.count(dart.crossing)) ++inside;
    if (pos.size() == 1) {
      if (ds.size() != 2 || inside != 1)
        throw MoveError("rotor boundary edge must cross the frontier once");
      Dart in = rotor_set.count(ds[0].crossing) ? ds[0] : ds[1];
      Dart out = rotor_set.count(ds[0].crossing) ? ds[1] : ds[0];
      rotor_attach[pos[0]] = {false, -1, in};
      stator_attach[pos[0]] = {false, -1, out};
    } else if (pos.size() == 2) {
      if (inside != 0)
        throw MoveError("rotor through-strand must avoid rotor crossings");
      if (ds.size() != 2) throw MoveError("rotor through-strand must reach two crossings");
      rotor_attach[pos[0]] = {true, pos[1], {}};
      rotor_attach[pos[1]] = {true, pos[0], {}};
      stator_attach[pos[0]] = {false, -1, ds[0]};
      stator_attach[pos[1]] = {false, -1, ds[1]};
    } else {
      throw MoveError("rotor boundary edge listed too often");
    }
  }

  // every non-boundary edge must live fully inside or fully outside
  for (int label : idx.edge_labels()) {
    if (positions_of.count(label)) continue;
    const auto& ds = idx.darts_of(label);
    int inside = 0;
    for (const Dart& dart : ds)
      if (rotor_set.count(dart.crossing)) ++inside;
    if (inside == 1) throw MoveError("edge crosses the rotor frontier outside the marker");
  }

  auto sigma = [m](int i) { return (m - 1 - i) % m; };

  Diagram work = d;
  // reflect the rotor crossings
  for (int c : marker.crossings) {
    auto& e = work.crossings[c].ends;
    e = {e[3], e[2], e[1], e[0]};
  }
  // the reflected crossing holds its old slot-s label at slot 3-s
  auto flipped_dart = [&](Dart dart) {
    return rotor_set.count(dart.crossing) ? Dart{dart.crossing, 3 - dart.slot} : dart;
  };

  int next = fresh_label(d);
  std::set<int> done;
  for (int i = 0; i < m; ++i) {
    if (done.count(i)) continue;
    const Attach& content = rotor_attach[sigma(i)];
    if (!content.through) {
      int fresh = next++;
      Dart rd = flipped_dart(content.dart);
      Dart sd = stator_attach[i].dart;
      work.crossings[rd.crossing].ends[rd.slot] = fresh;
      work.crossings[sd.crossing].ends[sd.slot] = fresh;
      done.insert(i);
    } else {
      // through strand joining old positions sigma(i) and j0 now joins i and sigma(j0)
      int other = sigma(content.partner);
      int fresh = next++;
      Dart sd1 = stator_attach[i].dart;
      Dart sd2 = stator_attach[other].dart;
      work.crossings[sd1.crossing].ends[sd1.slot] = fresh;
      work.crossings[sd2.crossing].ends[sd2.slot] = fresh;
      done.insert(i);
      done.insert(other);
    }
  }

  Diagram out = normalize(std::move(work));
  validate(out);
  return out;
}

// ---------------------------------------------------------------------------

Condition31Report verify_condition31(const Diagram& d, const StrandRef& a, const StrandRef& b) {
  Condition31Report rep;
  // the double positive horizontal twist pairs with the double negative
  // vertical one (and mirrored), each insertion negating the other
  GoldenValue h2 = eval_phi5(insert_tangle(d, a, b, TwistProgram{{2}}));
  GoldenValue v2m = eval_phi5(insert_tangle(d, a, b, TwistProgram::sq_move(0, -2)));
  rep.condition_ok = (h2 + v2m) == GoldenValue{0, 0};

  GoldenValue h2m = eval_phi5(insert_tangle(d, a, b, TwistProgram{{-2}}));
  GoldenValue v2 = eval_phi5(insert_tangle(d, a, b, TwistProgram::sq_move(0, 2)));
  rep.mirror_ok = (h2m + v2) == GoldenValue{0, 0};

  // inserting the pattern and deleting it again restores the diagram
  Diagram with_h = insert_tangle(d, a, b, TwistProgram{{2}});
  int base = static_cast<int>(d.crossings.size());
  std::vector<int> new_ids = {base, base + 1};
  try {
    Diagram restored = delete_twists(with_h, new_ids, TwistProgram{{2}});
    rep.involution_ok = canonical_code(restored) == canonical_code(d);
  } catch (const DiagramError&) {
    rep.involution_ok = false;
  }
  return rep;
}

}  // namespace linkforge
