#include "linkforge/burnside.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "linkforge/coloring.hpp"

namespace linkforge {

GroupPresentation core_group(const Diagram& d) {
  validate(d);
  ArcStructure arcs = arc_structure(d);
  GroupPresentation g;
  g.generators = arcs.count;
  for (const Crossing& c : d.crossings) {
    int over = arcs.arc_of.at(c.ends[1]);
    int u1 = arcs.arc_of.at(c.ends[0]);
    int u2 = arcs.arc_of.at(c.ends[2]);
    g.relators.push_back({over + 1, -(u1 + 1), over + 1, -(u2 + 1)});
  }
  return g;
}

namespace {

std::vector<int> free_reduce(const std::vector<int>& word) {
  std::vector<int> out;
  for (int l : word) {
    if (l == 0) continue;
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace

GroupPresentation double_cover_presentation(const GroupPresentation& g, int kill) {
  if (g.generators == 0) throw std::invalid_argument("empty presentation");
  if (kill < 0 || kill >= g.generators) throw std::invalid_argument("no such generator");
  GroupPresentation out;
  out.generators = g.generators - 1;
  auto remap = [&](int letter) {
    int idx = std::abs(letter) - 1;
    if (idx == kill) return 0;
    int shifted = idx < kill ? idx : idx - 1;
    return letter > 0 ? shifted + 1 : -(shifted + 1);
  };
  for (const auto& rel : g.relators) {
    std::vector<int> word;
    for (int l : rel) word.push_back(remap(l));
    word = free_reduce(word);
    if (!word.empty()) out.relators.push_back(std::move(word));
  }
  return out;
}

// ---------------------------------------------------------------------------
// exact arithmetic in the free class-3 exponent-p group

namespace {

using Key2 = std::pair<int, int>;
using Key3 = std::array<int, 3>;

struct PcElement {
  std::map<int, Int> u;
  std::map<Key2, Int> w;
  std::map<Key3, Int> t;

  bool is_identity() const { return u.empty() && w.empty() && t.empty(); }
};

class FreeClass3 {
 public:
  FreeClass3(Int p) : p_(p), engel_(p == 3) {
    if (!is_prime(p) || p < 3) throw std::invalid_argument("lie_quotient needs an odd prime");
  }

  Int p() const { return p_; }
  bool engel() const { return engel_; }

  void add_u(PcElement& x, int k, Int v) const { bump(x.u, k, v); }
  void add_w(PcElement& x, int i, int j, Int v) const {
    if (i == j) return;
    if (i > j) {
      std::swap(i, j);
      v = -v;
    }
    bump(x.w, Key2{i, j}, v);
  }

  // [[a,b],c] with the given coefficient, rewritten into the Hall basis
  void add_t(PcElement& x, int a, int b, int c, Int v) const {
    if (a == b) return;
    if (a > b) {
      std::swap(a, b);
      v = -v;
    }
    if (engel_) {
      // full antisymmetry under the 2-Engel law
      if (c == a || c == b) return;
      int s[3] = {a, b, c};
      Int sign = 1;
      // sort three distinct entries, tracking the permutation sign
      if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
      if (s[1] > s[2]) { std::swap(s[1], s[2]); sign = -sign; }
      if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
      bump(x.t, Key3{s[0], s[1], s[2]}, sign * v);
      return;
    }
    if (c >= a) {
      bump(x.t, Key3{a, b, c}, v);
      return;
    }
    // Jacobi: [[a,b],c] = [[c,b],a] - [[c,a],b] for c < a < b
    bump(x.t, Key3{c, b, a}, v);
    bump(x.t, Key3{c, a, b}, -v);
  }

  PcElement generator(int k) const {
    PcElement e;
    e.u[k] = 1;
    return e;
  }

  // right-multiply by a_k^n
  void mult_gen_pow(PcElement& x, int k, Int n) const {
    n = mod_reduce(n, p_);
    if (n == 0) return;
    // pass over the b part: [b_ij^e, a_k^n]
    for (const auto& [key, e] : x.w) add_t(x, key.first, key.second, k, e * n);
    // insert into the a part, swapping with higher blocks from the right
    std::vector<std::pair<int, Int>> blocks(x.u.begin(), x.u.end());
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
      auto [j, m] = *it;
      if (j <= k || m == 0) continue;
      // a_j^m a_k^n = a_k^n a_j^m b_kj^{-mn} [[k,j],j]^{-C(m,2)n} [[k,j],k]^{-m C(n,2)}
      Int eb = mod_reduce(-m * n, p_);
      // the fresh b_kj drifts right past the remaining higher blocks
      for (const auto& [i, mi] : x.u)
        if (i > j) add_t(x, k, j, i, eb * mi);
      add_w(x, k, j, eb);
      add_t(x, k, j, j, -(m * (m - 1) / 2) * n);
      add_t(x, k, j, k, -m * (n * (n - 1) / 2));
    }
    bump(x.u, k, n);
    normalize(x);
  }

  PcElement mult(PcElement x, const PcElement& y) const {
    for (const auto& [k, n] : y.u) mult_gen_pow(x, k, n);
    for (const auto& [key, e] : y.w) bump(x.w, key, e);
    for (const auto& [key, e] : y.t) bump(x.t, key, e);
    normalize(x);
    return x;
  }

  PcElement inverse(const PcElement& x) const {
    PcElement z;
    for (const auto& [k, n] : x.u) z.u[k] = mod_reduce(-n, p_);
    normalize(z);
    PcElement v = mult(x, z);
    for (const auto& [key, e] : v.w) bump(z.w, key, -e);
    normalize(z);
    v = mult(x, z);
    for (const auto& [key, e] : v.t) bump(z.t, key, -e);
    normalize(z);
    return z;
  }

  PcElement commutator(const PcElement& x, const PcElement& y) const {
    return mult(mult(inverse(x), inverse(y)), mult(x, y));
  }

  PcElement power(const PcElement& x, Int n) const {
    n = mod_reduce(n, p_);
    PcElement acc;
    for (Int i = 0; i < n; ++i) acc = mult(acc, x);
    return acc;
  }

  void normalize(PcElement& x) const {
    prune(x.u);
    prune(x.w);
    prune(x.t);
  }

 private:
  template <typename M, typename K>
  void bump(M& m, const K& key, Int v) const {
    Int& slot = m[key];
    slot = mod_reduce(slot + v, p_);
    if (slot == 0) m.erase(key);
  }

  template <typename M>
  void prune(M& m) const {
    for (auto it = m.begin(); it != m.end();) {
      it->second = mod_reduce(it->second, p_);
      if (it->second == 0)
        it = m.erase(it);
      else
        ++it;
    }
  }

  Int p_;
  bool engel_;
};

// substitution a_k := E extended to collected elements
PcElement substitute(const FreeClass3& G, const PcElement& x, int k, const PcElement& E) {
  auto value_of = [&](int idx) { return idx == k ? E : G.generator(idx); };
  PcElement out;
  for (const auto& [j, n] : x.u)
    out = G.mult(out, j == k ? G.power(E, n) : [&] {
      PcElement e;
      e.u[j] = n;
      return e;
    }());
  for (const auto& [key, e] : x.w) {
    if (key.first != k && key.second != k) {
      PcElement b;
      b.w[key] = e;
      out = G.mult(out, b);
    } else {
      PcElement c = G.commutator(value_of(key.first), value_of(key.second));
      out = G.mult(out, G.power(c, e));
    }
  }
  for (const auto& [key, e] : x.t) {
    if (key[0] != k && key[1] != k && key[2] != k) {
      PcElement tt;
      tt.t[key] = e;
      out = G.mult(out, tt);
    } else {
      PcElement c2 = G.commutator(value_of(key[0]), value_of(key[1]));
      PcElement c3 = G.commutator(c2, value_of(key[2]));
      out = G.mult(out, G.power(c3, e));
    }
  }
  G.normalize(out);
  return out;
}

std::string label2(int i, int j) {
  std::ostringstream s;
  s << "[" << i << "," << j << "]";
  return s.str();
}

std::string label3(const Key3& k) {
  std::ostringstream s;
  s << "[[" << k[0] << "," << k[1] << "]," << k[2] << "]";
  return s.str();
}

}  // namespace

GradedLieQuotient lie_quotient(const GroupPresentation& g, Int p, int class_bound) {
  if (p == 2) throw std::invalid_argument("exponent-2 quotients are unsupported");
  if (class_bound < 1 || class_bound > 3)
    throw std::invalid_argument("class bound must be 1, 2 or 3");
  FreeClass3 G(p);

  // evaluate the relators
  std::vector<PcElement> values;
  for (const auto& rel : g.relators) {
    PcElement v;
    for (int letter : rel) {
      int idx = std::abs(letter) - 1;
      if (idx >= g.generators) throw std::invalid_argument("relator letter out of range");
      G.mult_gen_pow(v, idx, letter > 0 ? 1 : -1);
    }
    G.normalize(v);
    if (!v.is_identity()) values.push_back(std::move(v));
  }

  // eliminate generators against relators with surviving weight-1 residue
  std::set<int> active;
  for (int i = 0; i < g.generators; ++i) active.insert(i);
  while (true) {
    int rel_idx = -1, pivot = -1;
    for (int r = 0; r < static_cast<int>(values.size()) && rel_idx < 0; ++r)
      if (!values[r].u.empty()) {
        rel_idx = r;
        pivot = values[r].u.begin()->first;
      }
    if (rel_idx < 0) break;

    PcElement rv = values[rel_idx];
    Int c = rv.u.at(pivot);
    Int cinv = mod_inverse(c, p);
    PcElement E;
    for (const auto& [j, n] : rv.u)
      if (j != pivot) E.u[j] = mod_reduce(-cinv * n, p);
    G.normalize(E);
    // refine through the weights
    for (int round = 0; round < 2; ++round) {
      PcElement v = substitute(G, rv, pivot, E);
      if (!v.u.empty()) throw std::logic_error("lie_quotient: elimination failed at weight 1");
      PcElement delta;
      for (const auto& [key, e] : v.w) delta.w[key] = mod_reduce(-cinv * e, p);
      for (const auto& [key, e] : v.t)
        if (round == 1) delta.t[key] = mod_reduce(-cinv * e, p);
      G.normalize(delta);
      E = G.mult(E, delta);
    }
    if (!substitute(G, rv, pivot, E).is_identity())
      throw std::logic_error("lie_quotient: elimination did not close");

    std::vector<PcElement> next;
    for (int r = 0; r < static_cast<int>(values.size()); ++r) {
      if (r == rel_idx) continue;
      PcElement v = substitute(G, values[r], pivot, E);
      if (!v.is_identity()) next.push_back(std::move(v));
    }
    values = std::move(next);
    active.erase(pivot);
  }

  // column enumerations over the active generators
  std::vector<int> gens(active.begin(), active.end());
  int d1 = static_cast<int>(gens.size());
  std::map<Key2, int> col2;
  std::vector<Key2> keys2;
  for (int a = 0; a < d1; ++a)
    for (int b = a + 1; b < d1; ++b) {
      col2[Key2{gens[a], gens[b]}] = static_cast<int>(keys2.size());
      keys2.push_back(Key2{gens[a], gens[b]});
    }
  std::vector<Key3> keys3;
  std::map<Key3, int> col3;
  if (G.engel()) {
    for (int a = 0; a < d1; ++a)
      for (int b = a + 1; b < d1; ++b)
        for (int c = b + 1; c < d1; ++c) keys3.push_back(Key3{gens[a], gens[b], gens[c]});
  } else {
    for (int a = 0; a < d1; ++a)
      for (int b = a + 1; b < d1; ++b)
        for (int c = a; c < d1; ++c) keys3.push_back(Key3{gens[a], gens[b], gens[c]});
  }
  std::sort(keys3.begin(), keys3.end());
  for (int i = 0; i < static_cast<int>(keys3.size()); ++i) col3[keys3[i]] = i;
  int h2 = static_cast<int>(keys2.size());
  int h3 = static_cast<int>(keys3.size());

  GradedLieQuotient out;
  out.p = p;
  out.class_bound = class_bound;
  out.dims[0] = d1;
  out.free_dims[0] = d1;
  out.free_dims[1] = d1 * (d1 - 1) / 2;
  out.free_dims[2] = G.engel() ? d1 * (d1 - 1) * (d1 - 2) / 6 : (d1 * d1 * d1 - d1) / 3;
  for (const auto& k : keys2) out.hall2.push_back(label2(k.first, k.second));
  for (const auto& k : keys3) out.hall3.push_back(label3(k));
  if (class_bound == 1) return out;

  auto vec2 = [&](const PcElement& v) {
    IntVec r = IntVec::Zero(h2);
    for (const auto& [key, e] : v.w) r[col2.at(key)] = e;
    return r;
  };
  auto vec3 = [&](const PcElement& v) {
    IntVec r = IntVec::Zero(h3);
    for (const auto& [key, e] : v.t) r[col3.at(key)] = e;
    return r;
  };

  RowSpan span2(h2, p);
  for (const PcElement& v : values) span2.insert(vec2(v));
  out.dims[1] = h2 - span2.rank();
  out.imposed2 = span2.basis();
  if (class_bound == 2) return out;

  // weight 3: the normal closure adds [imposed2, generators] and the pure
  // weight-3 parts of relator combinations whose weight-2 parts cancel
  RowSpan span3(h3, p);
  IntMat basis2 = span2.basis();
  for (int r = 0; r < basis2.rows(); ++r)
    for (int gidx : gens) {
      PcElement acc;
      for (int cidx = 0; cidx < h2; ++cidx) {
        Int e = basis2(r, cidx);
        if (e == 0) continue;
        G.add_t(acc, keys2[cidx].first, keys2[cidx].second, gidx, e);
      }
      G.normalize(acc);
      span3.insert(vec3(acc));
    }

  // relator combinations with cancelling weight-2 parts contribute their
  // weight-3 parts: RREF the stacked (weight2 | weight3) rows and keep the
  // rows supported in the weight-3 block
  if (!values.empty()) {
    IntMat stacked(static_cast<int>(values.size()), h2 + h3);
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
      stacked.row(i).segment(0, h2) = vec2(values[i]).transpose();
      stacked.row(i).segment(h2, h3) = vec3(values[i]).transpose();
    }
    rref_mod(stacked, p);
    for (int i = 0; i < stacked.rows(); ++i) {
      bool w2_zero = true;
      for (int c = 0; c < h2 && w2_zero; ++c)
        if (stacked(i, c) != 0) w2_zero = false;
      if (!w2_zero) continue;
      span3.insert(stacked.row(i).segment(h2, h3).transpose());
    }
  }
  out.dims[2] = h3 - span3.rank();
  out.imposed3 = span3.basis();
  return out;
}

void pc_self_check(Int p, int gens, unsigned seed, int trials) {
  FreeClass3 G(p);
  std::uint64_t state = seed * 2654435761u + 1;
  auto rnd = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  auto random_element = [&]() {
    PcElement e;
    for (int k = 0; k < gens; ++k) e.u[k] = static_cast<Int>(rnd() % p);
    for (int i = 0; i < gens; ++i)
      for (int j = i + 1; j < gens; ++j) e.w[Key2{i, j}] = static_cast<Int>(rnd() % p);
    G.normalize(e);
    return e;
  };
  auto expect = [&](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("pc_self_check: ") + what);
  };
  for (int trial = 0; trial < trials; ++trial) {
    PcElement x = random_element(), y = random_element(), z = random_element();
    PcElement a = G.mult(G.mult(x, y), z);
    PcElement b = G.mult(x, G.mult(y, z));
    expect(a.u == b.u && a.w == b.w && a.t == b.t, "associativity");
    expect(G.mult(x, G.inverse(x)).is_identity(), "inverse");
    expect(G.power(x, p).is_identity(), "exponent law");
    // commutators land in the expected weights
    PcElement c = G.commutator(x, y);
    expect(c.u.empty(), "commutator weight");
  }
}

BurnsideReport burnside_report(const Diagram& d, Int p) {
  GroupPresentation core = core_group(d);
  if (core.generators == 0) throw std::invalid_argument("diagram has no arcs");
  GroupPresentation cover = double_cover_presentation(core, 0);
  BurnsideReport rep;
  rep.p = p;
  rep.class_bound = 3;
  if (cover.generators == 0) {
    rep.obstruction = false;
    if (p == 3) rep.order_exponent = 0;
    return rep;
  }
  GradedLieQuotient q = lie_quotient(cover, p, 3);
  rep.dims = q.dims;
  rep.reference_dims = q.free_dims;
  rep.obstruction = q.dims[1] != q.free_dims[1] || q.dims[2] != q.free_dims[2];
  if (p == 3) rep.order_exponent = q.dims[0] + q.dims[1] + q.dims[2];
  return rep;
}

}  // namespace linkforge
