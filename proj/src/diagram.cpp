#include "linkforge/diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace linkforge {

namespace {

// rotate a crossing tuple by two slots (the other admissible under-in entry)
std::array<int, 4> rotated2(const std::array<int, 4>& e) {
  return {e[2], e[3], e[0], e[1]};
}

Crossing normalized(const Crossing& c) {
  Crossing out = c;
  std::array<int, 4> alt = rotated2(c.ends);
  if (alt < out.ends) out.ends = alt;
  return out;
}

void renumber_ids(Diagram& d) {
  for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) d.crossings[i].id = i;
}

}  // namespace

Diagram normalize(Diagram d) {
  for (Crossing& c : d.crossings) c = normalized(c);
  renumber_ids(d);
  return d;
}

DiagramIndex::DiagramIndex(const Diagram& d) : d_(&d) {
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci)
    for (int s = 0; s < 4; ++s) {
      int e = d.crossings[ci].ends[s];
      auto [it, fresh] = ends_.try_emplace(e);
      if (fresh) labels_.push_back(e);
      if (it->second.size() >= 2)
        throw DiagramError("non-matching arc: label used more than twice");
      it->second.push_back(Dart{ci, s});
    }
  std::sort(labels_.begin(), labels_.end());
}

const std::vector<Dart>& DiagramIndex::darts_of(int edge) const {
  auto it = ends_.find(edge);
  if (it == ends_.end()) throw DiagramError("unknown arc label");
  return it->second;
}

int DiagramIndex::edge_at(Dart d) const { return d_->crossings[d.crossing].ends[d.slot]; }

Dart DiagramIndex::mate(Dart d) const {
  const std::vector<Dart>& ds = darts_of(edge_at(d));
  if (ds.size() != 2) throw DiagramError("open arc has no mate");
  return ds[0] == d ? ds[1] : ds[0];
}

// ---------------------------------------------------------------------------
// planarity of a rotation system (generalized vertices)

namespace {

// verts[v] = edge labels in counterclockwise rotation order; every label must
// occur exactly twice in total. Checks V - E + F = 2 on each connected piece.
void check_planar_rotation(const std::vector<std::vector<int>>& verts) {
  struct VDart {
    int v, k;
  };
  std::map<int, std::vector<int>> occurrences;  // label -> flat dart ids
  std::vector<VDart> darts;
  std::vector<int> vert_of_dart;
  for (int v = 0; v < static_cast<int>(verts.size()); ++v)
    for (int k = 0; k < static_cast<int>(verts[v].size()); ++k) {
      occurrences[verts[v][k]].push_back(static_cast<int>(darts.size()));
      darts.push_back({v, k});
      vert_of_dart.push_back(v);
    }

  std::vector<int> alpha(darts.size(), -1);
  for (const auto& [label, occ] : occurrences) {
    if (occ.size() != 2) throw DiagramError("non-matching arc: label count != 2");
    alpha[occ[0]] = occ[1];
    alpha[occ[1]] = occ[0];
  }

  // vertex components via shared labels
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [label, occ] : occurrences) {
    int a = find(vert_of_dart[occ[0]]), b = find(vert_of_dart[occ[1]]);
    if (a != b) parent[a] = b;
  }

  // next dart counterclockwise at a vertex
  auto sigma = [&](int di) {
    VDart d = darts[di];
    int deg = static_cast<int>(verts[d.v].size());
    int k2 = (d.k + 1) % deg;
    int base = 0;
    for (int v = 0; v < d.v; ++v) base += static_cast<int>(verts[v].size());
    return base + k2;
  };

  std::map<int, int> faces_per_comp, edges_per_comp, verts_per_comp;
  for (int v = 0; v < static_cast<int>(verts.size()); ++v)
    if (!verts[v].empty()) ++verts_per_comp[find(v)];
  for (const auto& [label, occ] : occurrences) ++edges_per_comp[find(vert_of_dart[occ[0]])];

  std::vector<bool> seen(darts.size(), false);
  for (int d0 = 0; d0 < static_cast<int>(darts.size()); ++d0) {
    if (seen[d0]) continue;
    int d = d0;
    do {
      seen[d] = true;
      d = sigma(alpha[d]);
    } while (d != d0);
    ++faces_per_comp[find(vert_of_dart[d0])];
  }

  for (const auto& [comp, f] : faces_per_comp) {
    int v = verts_per_comp[comp], e = edges_per_comp[comp];
    if (v - e + f != 2)
      throw DiagramError("rotation system is not planar");
  }
}

std::vector<std::vector<int>> crossing_rotations(const Diagram& d) {
  std::vector<std::vector<int>> verts;
  verts.reserve(d.crossings.size());
  for (const Crossing& c : d.crossings)
    verts.push_back({c.ends[0], c.ends[1], c.ends[2], c.ends[3]});
  return verts;
}

}  // namespace

void validate(const Diagram& d) {
  if (d.free_loops < 0) throw DiagramError("negative free loop count");
  for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i)
    if (d.crossings[i].id != i) throw DiagramError("crossing ids must be positional");
  DiagramIndex idx(d);
  for (int e : idx.edge_labels())
    if (idx.darts_of(e).size() != 2) throw DiagramError("non-matching arc: label count != 2");
  check_planar_rotation(crossing_rotations(d));
}

void validate(const Tangle& t) {
  if (t.boundary.empty() || t.boundary.size() % 2 != 0)
    throw DiagramError("tangle boundary must list 2n endpoints");
  if (t.diagram.free_loops < 0) throw DiagramError("negative free loop count");
  for (int i = 0; i < static_cast<int>(t.diagram.crossings.size()); ++i)
    if (t.diagram.crossings[i].id != i) throw DiagramError("crossing ids must be positional");
  DiagramIndex idx(t.diagram);

  std::map<int, int> boundary_count;
  for (int e : t.boundary) ++boundary_count[e];
  for (const auto& [e, b] : boundary_count) {
    int c = idx.has_edge(e) ? static_cast<int>(idx.darts_of(e).size()) : 0;
    if (!((c == 1 && b == 1) || (c == 0 && b == 2)))
      throw DiagramError("boundary arc must reach exactly one crossing or span the boundary");
  }
  for (int e : idx.edge_labels())
    if (!boundary_count.count(e) && idx.darts_of(e).size() != 2)
      throw DiagramError("non-matching arc: label count != 2");

  std::vector<std::vector<int>> verts = crossing_rotations(t.diagram);
  // the disk boundary closes into a vertex at infinity; reversed rotation
  std::vector<int> rim(t.boundary.rbegin(), t.boundary.rend());
  verts.push_back(rim);
  check_planar_rotation(verts);
}

// ---------------------------------------------------------------------------
// parsing & serialization

namespace {

std::vector<std::vector<std::string>> tokenize_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) records.push_back(std::move(toks));
  }
  return records;
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw DiagramError("malformed record: expected integer, got '" + s + "'");
  }
  if (pos != s.size()) throw DiagramError("malformed record: expected integer, got '" + s + "'");
  return v;
}

}  // namespace

Diagram parse_pd(const std::string& text) {
  auto records = tokenize_records(text);
  if (records.empty()) throw DiagramError("empty input");
  Diagram d;
  for (const auto& r : records) {
    if (r[0] == "X") {
      if (r.size() != 5) throw DiagramError("malformed record: X needs 4 arc labels");
      Crossing c;
      c.id = static_cast<int>(d.crossings.size());
      for (int i = 0; i < 4; ++i) c.ends[i] = parse_int(r[i + 1]);
      d.crossings.push_back(c);
    } else if (r[0] == "O") {
      if (r.size() != 1) throw DiagramError("malformed record: O takes no arguments");
      ++d.free_loops;
    } else {
      throw DiagramError("malformed record: unknown record '" + r[0] + "'");
    }
  }
  d = normalize(std::move(d));
  validate(d);
  return d;
}

Tangle parse_tangle(const std::string& text) {
  auto records = tokenize_records(text);
  if (records.empty()) throw DiagramError("empty input");
  Tangle t;
  bool saw_boundary = false;
  for (const auto& r : records) {
    if (r[0] == "X") {
      if (r.size() != 5) throw DiagramError("malformed record: X needs 4 arc labels");
      Crossing c;
      c.id = static_cast<int>(t.diagram.crossings.size());
      for (int i = 0; i < 4; ++i) c.ends[i] = parse_int(r[i + 1]);
      t.diagram.crossings.push_back(c);
    } else if (r[0] == "O") {
      ++t.diagram.free_loops;
    } else if (r[0] == "T") {
      if (saw_boundary) throw DiagramError("malformed record: duplicate boundary record");
      saw_boundary = true;
      for (size_t i = 1; i < r.size(); ++i) t.boundary.push_back(parse_int(r[i]));
    } else {
      throw DiagramError("malformed record: unknown record '" + r[0] + "'");
    }
  }
  if (!saw_boundary) throw DiagramError("tangle input needs a T boundary record");
  t.diagram = normalize(std::move(t.diagram));
  validate(t);
  return t;
}

BraidWord parse_braid(const std::string& text) {
  auto records = tokenize_records(text);
  if (records.size() != 1 || records[0].size() < 2 || records[0][0] != "BR")
    throw DiagramError("malformed record: braid input is 'BR k: i1 i2 ...'");
  const auto& r = records[0];
  std::string k = r[1];
  if (!k.empty() && k.back() == ':') k.pop_back();
  BraidWord w;
  w.strand_count = parse_int(k);
  size_t first = 2;
  if (k == r[1]) {  // colon may be its own token
    if (first < r.size() && r[first] == ":") ++first;
  }
  for (size_t i = first; i < r.size(); ++i) w.letters.push_back(parse_int(r[i]));
  if (w.strand_count < 1) throw DiagramError("braid needs at least one strand");
  for (int l : w.letters)
    if (l == 0 || std::abs(l) > w.strand_count - 1)
      throw DiagramError("braid letter out of range");
  return w;
}

std::string serialize(const Diagram& d) {
  std::ostringstream out;
  for (const Crossing& c : d.crossings)
    out << "X " << c.ends[0] << ' ' << c.ends[1] << ' ' << c.ends[2] << ' ' << c.ends[3] << '\n';
  for (int i = 0; i < d.free_loops; ++i) out << "O\n";
  return out.str();
}

std::string serialize(const Tangle& t) {
  std::ostringstream out;
  out << serialize(t.diagram);
  out << "T";
  for (int e : t.boundary) out << ' ' << e;
  out << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// edge gluing engine (shared by braid closure and tangle composition)

namespace {

// Union-find over edge labels that tracks open strand ends, so that gluing
// the two ends of one chain is recognized as closing a circle.
class LabelMerger {
 public:
  void add_label(int label, int crossing_appearances) {
    parent_.emplace(label, label);
    open_.emplace(label, 2 - crossing_appearances);
    appear_.emplace(label, crossing_appearances);
  }

  int find(int x) {
    int r = x;
    while (parent_.at(r) != r) r = parent_.at(r);
    while (parent_.at(x) != r) x = std::exchange(parent_.at(x), r);
    return r;
  }

  // glue one open end of x to one open end of y
  void glue(int x, int y) {
    int rx = find(x), ry = find(y);
    if (open_.at(rx) < 1 || (rx == ry && open_.at(rx) < 2))
      throw DiagramError("gluing a strand end that is not open");
    if (rx == ry) {
      open_[rx] -= 2;
      if (open_[rx] == 0 && appear_[rx] == 0) {
        ++closed_loops_;
        dead_.insert(rx);
      }
      return;
    }
    parent_[ry] = rx;
    open_[rx] += open_[ry] - 2;
    appear_[rx] += appear_[ry];
  }

  int closed_loops() const { return closed_loops_; }
  bool dead(int x) { return dead_.count(find(x)) != 0; }

 private:
  std::map<int, int> parent_, open_, appear_;
  std::set<int> dead_;
  int closed_loops_ = 0;
};

}  // namespace

Diagram splice(const Diagram& d, const std::vector<int>& remove,
               const std::vector<std::pair<int, int>>& glue) {
  std::set<int> removed(remove.begin(), remove.end());
  Diagram out;
  out.free_loops = d.free_loops;
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci)
    if (!removed.count(ci)) {
      Crossing c = d.crossings[ci];
      c.id = static_cast<int>(out.crossings.size());
      out.crossings.push_back(c);
    }

  std::map<int, int> appearances;
  for (const Crossing& c : out.crossings)
    for (int e : c.ends) ++appearances[e];

  LabelMerger merger;
  std::set<int> all_labels;
  for (const Crossing& c : d.crossings)
    for (int e : c.ends) all_labels.insert(e);
  for (const auto& [a, b] : glue) {
    all_labels.insert(a);
    all_labels.insert(b);
  }
  for (int e : all_labels) merger.add_label(e, appearances.count(e) ? appearances[e] : 0);
  for (const auto& [a, b] : glue) merger.glue(a, b);

  for (Crossing& c : out.crossings)
    for (int& e : c.ends) e = merger.find(e);
  out.free_loops += merger.closed_loops();
  out = normalize(std::move(out));
  validate(out);
  return out;
}

Diagram switch_crossing(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= static_cast<int>(d.crossings.size()))
    throw DiagramError("switch_crossing: no such crossing");
  Diagram out = d;
  auto& e = out.crossings[crossing].ends;
  e = {e[1], e[2], e[3], e[0]};
  return normalize(std::move(out));
}

Diagram braid_closure(const BraidWord& w) {
  if (w.strand_count < 1) throw DiagramError("braid needs at least one strand");
  for (int l : w.letters)
    if (l == 0 || std::abs(l) > w.strand_count - 1)
      throw DiagramError("braid letter out of range");

  int next_label = 0;
  std::vector<int> start(w.strand_count), running(w.strand_count);
  for (int j = 0; j < w.strand_count; ++j) start[j] = running[j] = next_label++;

  Diagram d;
  for (int letter : w.letters) {
    int i = std::abs(letter) - 1;  // 0-based left strand position
    int left = running[i], right = running[i + 1];
    int out_left = next_label++, out_right = next_label++;
    Crossing c;
    c.id = static_cast<int>(d.crossings.size());
    if (letter > 0)
      c.ends = {right, left, out_left, out_right};  // NW->SE strand over
    else
      c.ends = {left, out_left, out_right, right};  // NE->SW strand over
    d.crossings.push_back(c);
    running[i] = out_left;
    running[i + 1] = out_right;
  }

  std::map<int, int> appearances;
  for (const Crossing& c : d.crossings)
    for (int e : c.ends) ++appearances[e];

  LabelMerger merger;
  for (int l = 0; l < next_label; ++l) merger.add_label(l, appearances.count(l) ? appearances[l] : 0);
  for (int j = 0; j < w.strand_count; ++j) merger.glue(running[j], start[j]);

  for (Crossing& c : d.crossings)
    for (int& e : c.ends) e = merger.find(e);
  d.free_loops = merger.closed_loops();
  d = normalize(std::move(d));
  validate(d);
  return d;
}

// ---------------------------------------------------------------------------

namespace {

// union-find over edge labels; unite under-through and over-through pairs to
// follow strands, or over pairs only to build Fox arcs
std::map<int, int> strand_classes(const Diagram& d, bool through_crossings) {
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) {
    while (parent.at(x) != x) x = parent.at(x) = parent.at(parent.at(x));
    return x;
  };
  auto ensure = [&](int e) { parent.try_emplace(e, e); };
  auto unite = [&](int a, int b) {
    ensure(a);
    ensure(b);
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  };
  for (const Crossing& c : d.crossings) {
    ensure(c.ends[0]);
    ensure(c.ends[1]);
    ensure(c.ends[2]);
    ensure(c.ends[3]);
    unite(c.ends[1], c.ends[3]);  // over strand passes through
    if (through_crossings) unite(c.ends[0], c.ends[2]);
  }
  std::map<int, int> cls;
  for (const auto& [e, p] : parent) cls[e] = find(e);
  return cls;
}

}  // namespace

int components(const Diagram& d) {
  std::map<int, int> cls = strand_classes(d, true);
  std::set<int> reps;
  for (const auto& [e, r] : cls) reps.insert(r);
  return static_cast<int>(reps.size()) + d.free_loops;
}

Diagram mirror(const Diagram& d) {
  Diagram m = d;
  for (Crossing& c : m.crossings) c.ends = {c.ends[1], c.ends[2], c.ends[3], c.ends[0]};
  return normalize(std::move(m));
}

IntMat linking_matrix_mod2(const Diagram& d) {
  std::map<int, int> cls = strand_classes(d, true);
  // component index by first appearance in serialization order
  std::map<int, int> comp_index;
  for (const Crossing& c : d.crossings)
    for (int e : c.ends) {
      int r = cls.at(e);
      comp_index.try_emplace(r, static_cast<int>(comp_index.size()));
    }
  int n = static_cast<int>(comp_index.size()) + d.free_loops;
  if (n < 2) throw DiagramError("linking matrix needs at least 2 components");

  // orient every component by one strand traversal, recording entry slots
  DiagramIndex idx(d);
  std::map<Dart, bool> entered;  // arrival darts of the chosen orientations
  std::set<int> walked_edges;
  for (const Crossing& c : d.crossings)
    for (int s = 0; s < 4; ++s) {
      int e0 = c.ends[s];
      if (walked_edges.count(e0)) continue;
      Dart start = idx.darts_of(e0)[0];
      Dart cur = start;
      do {
        walked_edges.insert(idx.edge_at(cur));
        entered[cur] = true;
        Dart exit{cur.crossing, (cur.slot + 2) % 4};
        walked_edges.insert(idx.edge_at(exit));
        cur = idx.mate(exit);
      } while (!(cur == start));
    }

  IntMat signed_sum = IntMat::Zero(n, n);
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
    const Crossing& c = d.crossings[ci];
    int under = comp_index.at(cls.at(c.ends[0]));
    int over = comp_index.at(cls.at(c.ends[1]));
    if (under == over) continue;
    int under_in = entered.count(Dart{ci, 0}) ? 0 : 2;
    int over_in = entered.count(Dart{ci, 1}) ? 1 : 3;
    int sign = (over_in == (under_in + 1) % 4) ? 1 : -1;
    signed_sum(under, over) += sign;
    signed_sum(over, under) += sign;
  }
  IntMat lk = IntMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      lk(i, j) = mod_reduce(signed_sum(i, j) / 2, 2);
    }
  return lk;
}

ArcStructure arc_structure(const Diagram& d) {
  std::map<int, int> cls = strand_classes(d, false);
  ArcStructure a;
  for (const Crossing& c : d.crossings)
    for (int e : c.ends) {
      int r = cls.at(e);
      auto it = a.arc_of.find(r);
      if (it == a.arc_of.end()) {
        it = a.arc_of.emplace(r, a.arc_count++).first;
      }
    }
  // map every edge label, not just representatives
  for (const auto& [e, r] : cls) a.arc_of[e] = a.arc_of.at(r);
  a.count = a.arc_count + d.free_loops;
  return a;
}

ArcStructure arc_structure(const Tangle& t) {
  ArcStructure a = arc_structure(t.diagram);
  a.count -= t.diagram.free_loops;
  for (int e : t.boundary)
    if (!a.arc_of.count(e)) a.arc_of[e] = a.arc_count++;
  a.count = a.arc_count + t.diagram.free_loops;
  return a;
}

FaceStructure faces(const Diagram& d) {
  DiagramIndex idx(d);
  FaceStructure f;
  std::set<Dart> seen;
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci)
    for (int s = 0; s < 4; ++s) {
      Dart d0{ci, s};
      if (seen.count(d0)) continue;
      std::vector<Dart> orbit;
      Dart cur = d0;
      do {
        seen.insert(cur);
        orbit.push_back(cur);
        Dart m = idx.mate(cur);
        cur = Dart{m.crossing, (m.slot + 1) % 4};
      } while (!(cur == d0));
      int id = static_cast<int>(f.faces.size());
      for (const Dart& dd : orbit) f.face_of[dd] = id;
      f.faces.push_back(std::move(orbit));
    }
  return f;
}

// ---------------------------------------------------------------------------
// canonical codes

namespace {

struct PieceSplit {
  std::vector<std::vector<int>> piece_crossings;  // crossing indices per piece
};

PieceSplit split_pieces(const Diagram& d) {
  int n = static_cast<int>(d.crossings.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<int, int> first_crossing_of_label;
  for (int ci = 0; ci < n; ++ci)
    for (int e : d.crossings[ci].ends) {
      auto [it, fresh] = first_crossing_of_label.try_emplace(e, ci);
      if (!fresh) {
        int a = find(it->second), b = find(ci);
        if (a != b) parent[a] = b;
      }
    }
  std::map<int, std::vector<int>> groups;
  for (int ci = 0; ci < n; ++ci) groups[find(ci)].push_back(ci);
  PieceSplit out;
  for (auto& [rep, g] : groups) out.piece_crossings.push_back(std::move(g));
  return out;
}

// code for one connected piece starting the walk at `start`
std::string piece_code_from(const Diagram& d, const DiagramIndex& idx,
                            const std::vector<int>& piece, Dart start) {
  std::map<int, int> number;           // edge label -> discovery number
  std::vector<int> visit_order;        // crossings in first-visit order
  std::map<int, int> visited_at;       // crossing -> position in visit_order
  std::set<std::pair<int, int>> in_piece_slots;

  auto touch = [&](int ci) {
    if (!visited_at.count(ci)) {
      visited_at[ci] = static_cast<int>(visit_order.size());
      visit_order.push_back(ci);
    }
  };
  auto number_edge = [&](int e) { number.try_emplace(e, static_cast<int>(number.size())); };

  auto walk = [&](Dart s) {
    Dart cur = s;
    do {
      number_edge(idx.edge_at(cur));
      touch(cur.crossing);
      Dart exit{cur.crossing, (cur.slot + 2) % 4};
      number_edge(idx.edge_at(exit));
      cur = idx.mate(exit);
    } while (!(cur == s));
  };

  walk(start);
  // remaining strands: deterministic restarts from earliest-visited crossings
  bool progress = true;
  size_t piece_edges = 0;
  for (int ci : piece) (void)ci, piece_edges += 2;  // 4 ends / 2
  while (number.size() < piece_edges && progress) {
    progress = false;
    for (int ci : visit_order) {
      for (int s = 0; s < 4; ++s) {
        int e = d.crossings[ci].ends[s];
        if (!number.count(e)) {
          walk(Dart{ci, s});
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }

  std::vector<std::array<int, 4>> tuples;
  for (int ci : piece) {
    const auto& e = d.crossings[ci].ends;
    std::array<int, 4> t = {number.at(e[0]), number.at(e[1]), number.at(e[2]), number.at(e[3])};
    std::array<int, 4> alt = rotated2(t);
    if (alt < t) t = alt;
    tuples.push_back(t);
  }
  std::sort(tuples.begin(), tuples.end());
  std::ostringstream out;
  for (const auto& t : tuples) out << 'X' << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ';';
  return out.str();
}

}  // namespace

int connected_pieces(const Diagram& d) {
  if (d.crossings.empty()) return d.free_loops;
  return static_cast<int>(split_pieces(d).piece_crossings.size()) + d.free_loops;
}

std::string canonical_code(const Diagram& d) {
  DiagramIndex idx(d);
  PieceSplit pieces = split_pieces(d);
  std::vector<std::string> codes;
  for (const auto& piece : pieces.piece_crossings) {
    std::string best;
    for (int ci : piece)
      for (int s = 0; s < 4; ++s) {
        std::string code = piece_code_from(d, idx, piece, Dart{ci, s});
        if (best.empty() || code < best) best = std::move(code);
      }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end());
  std::ostringstream out;
  for (const auto& c : codes) out << c;
  out << "O" << d.free_loops;
  return out.str();
}

std::string canonical_code(const Tangle& t) {
  DiagramIndex idx(t.diagram);
  std::map<int, int> number;
  auto number_edge = [&](int e) { number.try_emplace(e, static_cast<int>(number.size())); };

  for (int e : t.boundary) {
    if (number.count(e)) continue;
    number_edge(e);
    if (!idx.has_edge(e)) continue;  // boundary-to-boundary strand
    // walk inward until the strand exits at the boundary again
    Dart cur = idx.darts_of(e)[0];
    while (true) {
      Dart exit{cur.crossing, (cur.slot + 2) % 4};
      int e2 = idx.edge_at(exit);
      number_edge(e2);
      const std::vector<Dart>& ds = idx.darts_of(e2);
      if (ds.size() < 2) break;
      cur = ds[0] == exit ? ds[1] : ds[0];
    }
  }

  // closed circles that never reach the boundary keep crossing-scan order;
  // strand-by-strand walks from their first unnumbered end keep this
  // deterministic for a fixed representation
  for (int ci = 0; ci < static_cast<int>(t.diagram.crossings.size()); ++ci)
    for (int s = 0; s < 4; ++s) {
      int e = t.diagram.crossings[ci].ends[s];
      if (number.count(e)) continue;
      Dart cur{ci, s};
      Dart start = cur;
      do {
        number_edge(idx.edge_at(cur));
        Dart exit{cur.crossing, (cur.slot + 2) % 4};
        number_edge(idx.edge_at(exit));
        cur = idx.mate(exit);
      } while (!(cur == start));
    }

  std::vector<std::array<int, 4>> tuples;
  for (const Crossing& c : t.diagram.crossings) {
    std::array<int, 4> tu = {number.at(c.ends[0]), number.at(c.ends[1]), number.at(c.ends[2]),
                             number.at(c.ends[3])};
    std::array<int, 4> alt = rotated2(tu);
    if (alt < tu) tu = alt;
    tuples.push_back(tu);
  }
  std::sort(tuples.begin(), tuples.end());
  std::ostringstream out;
  for (const auto& tu : tuples) out << 'X' << tu[0] << ',' << tu[1] << ',' << tu[2] << ',' << tu[3] << ';';
  out << "T";
  for (int e : t.boundary) out << number.at(e) << ',';
  out << "O" << t.diagram.free_loops;
  return out.str();
}

// ---------------------------------------------------------------------------
// tangle algebra

Tangle tangle_rotate(const Tangle& t, int i) {
  int m = static_cast<int>(t.boundary.size());
  Tangle out = t;
  for (int j = 0; j < m; ++j) out.boundary[((j + i) % m + m) % m] = t.boundary[j];
  return out;
}

int max_edge_label(const Diagram& d) {
  int mx = -1;
  for (const Crossing& c : d.crossings)
    for (int e : c.ends) mx = std::max(mx, e);
  return mx;
}

Diagram relabeled(const Diagram& d, int offset) {
  Diagram out = d;
  for (Crossing& c : out.crossings)
    for (int& e : c.ends) e += offset;
  return out;
}

Tangle tangle_compose(const Tangle& a, const Tangle& b) {
  if (a.boundary.size() != b.boundary.size())
    throw DiagramError("tangle arity mismatch");
  int n = static_cast<int>(a.boundary.size()) / 2;

  int offset = std::max(max_edge_label(a.diagram),
                        *std::max_element(a.boundary.begin(), a.boundary.end())) +
               1;
  int bmax = max_edge_label(b.diagram);
  for (int e : b.boundary) bmax = std::max(bmax, e);
  int bmin = bmax;
  for (const Crossing& c : b.diagram.crossings)
    for (int e : c.ends) bmin = std::min(bmin, e);
  for (int e : b.boundary) bmin = std::min(bmin, e);
  offset -= std::min(bmin, 0);

  Diagram bd = relabeled(b.diagram, offset);
  std::vector<int> bb = b.boundary;
  for (int& e : bb) e += offset;

  Diagram merged;
  merged.crossings = a.diagram.crossings;
  for (Crossing c : bd.crossings) {
    c.id = static_cast<int>(merged.crossings.size());
    merged.crossings.push_back(c);
  }
  merged.free_loops = a.diagram.free_loops + b.diagram.free_loops;

  std::map<int, int> appearances;
  for (const Crossing& c : merged.crossings)
    for (int e : c.ends) ++appearances[e];

  LabelMerger merger;
  std::set<int> all_labels;
  for (const auto& [e, cnt] : appearances) all_labels.insert(e);
  for (int e : a.boundary) all_labels.insert(e);
  for (int e : bb) all_labels.insert(e);
  for (int e : all_labels) merger.add_label(e, appearances.count(e) ? appearances[e] : 0);

  for (int i = 0; i < n; ++i) merger.glue(a.boundary[n + i], bb[n - 1 - i]);

  for (Crossing& c : merged.crossings)
    for (int& e : c.ends) e = merger.find(e);
  merged.free_loops += merger.closed_loops();

  Tangle out;
  out.diagram = normalize(std::move(merged));
  for (int i = 0; i < n; ++i) out.boundary.push_back(merger.find(a.boundary[i]));
  for (int i = 0; i < n; ++i) out.boundary.push_back(merger.find(bb[n + i]));
  validate(out);
  return out;
}

Tangle zero_tangle() {
  Tangle t;
  t.boundary = {1, 2, 2, 1};
  return t;
}

Tangle infinity_tangle() {
  Tangle t;
  t.boundary = {1, 1, 2, 2};
  return t;
}

Tangle crossing_tangle(int sign) {
  Tangle t;
  Crossing c;
  c.id = 0;
  if (sign >= 0)
    c.ends = {1, 2, 3, 4};
  else
    c.ends = {2, 3, 4, 1};
  t.diagram.crossings.push_back(c);
  t.diagram = normalize(std::move(t.diagram));
  t.boundary = {1, 2, 3, 4};
  return t;
}

Diagram numerator_closure(const Tangle& t) {
  int n2 = static_cast<int>(t.boundary.size());
  std::map<int, int> appearances;
  for (const Crossing& c : t.diagram.crossings)
    for (int e : c.ends) ++appearances[e];

  LabelMerger merger;
  std::set<int> all_labels;
  for (const auto& [e, cnt] : appearances) all_labels.insert(e);
  for (int e : t.boundary) all_labels.insert(e);
  for (int e : all_labels) merger.add_label(e, appearances.count(e) ? appearances[e] : 0);

  for (int k = 0; k < n2 / 2; ++k) merger.glue(t.boundary[k], t.boundary[n2 - 1 - k]);

  Diagram d = t.diagram;
  for (Crossing& c : d.crossings)
    for (int& e : c.ends) e = merger.find(e);
  d.free_loops += merger.closed_loops();
  d = normalize(std::move(d));
  validate(d);
  return d;
}

}  // namespace linkforge
