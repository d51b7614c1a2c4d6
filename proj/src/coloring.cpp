#include "linkforge/coloring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace linkforge {

std::string ColoringSpace::cardinality_string() const {
  if (cardinality_exponents.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, e] : cardinality_exponents) {
    if (!first) out << '*';
    first = false;
    out << p;
    if (e > 1) out << '^' << e;
  }
  return out.str();
}

std::optional<Int> ColoringSpace::cardinality_int() const {
  __int128 v = 1;
  for (const auto& [p, e] : cardinality_exponents)
    for (int i = 0; i < e; ++i) {
      v *= p;
      if (v > (__int128)std::numeric_limits<Int>::max()) return std::nullopt;
    }
  return static_cast<Int>(v);
}

bool structure_equal(const ColoringSpace& a, const ColoringSpace& b) {
  return a.modulus == b.modulus && a.cyclic_factors == b.cyclic_factors;
}

namespace {

IntMat relations_for(const Diagram& d, const ArcStructure& arcs) {
  IntMat m = IntMat::Zero(static_cast<int>(d.crossings.size()), arcs.count);
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
    const Crossing& c = d.crossings[ci];
    m(ci, arcs.arc_of.at(c.ends[1])) += 2;
    m(ci, arcs.arc_of.at(c.ends[0])) -= 1;
    m(ci, arcs.arc_of.at(c.ends[2])) -= 1;
  }
  return m;
}

}  // namespace

IntMat coloring_relations(const Diagram& d) { return relations_for(d, arc_structure(d)); }

IntMat coloring_relations(const Tangle& t) { return relations_for(t.diagram, arc_structure(t)); }

namespace {

void add_factor(ColoringSpace& cs, Int f) {
  if (f <= 1) return;
  cs.cyclic_factors.push_back(f);
  for (const auto& [p, e] : factorize(f)) cs.cardinality_exponents[p] += e;
}

ColoringSpace solve_colorings(const IntMat& relations, Int k) {
  if (k < 2) throw std::invalid_argument("coloring modulus must be >= 2");
  ColoringSpace cs;
  cs.modulus = k;
  cs.ambient_dim = static_cast<int>(relations.cols());

  if (is_prime(k)) {
    IntMat ns = nullspace_mod(relations, k);
    cs.basis = ns;
    for (int i = 0; i < ns.rows(); ++i) add_factor(cs, k);
    return cs;
  }

  SmithForm snf = smith_normal_form(relations);
  std::vector<IntVec> rows;
  for (int i = 0; i < snf.rank; ++i) {
    Int g = std::gcd(snf.divisors[i], k);
    if (g <= 1) continue;
    IntVec v = snf.right.col(i) * (k / g);
    for (int j = 0; j < v.size(); ++j) v[j] = mod_reduce(v[j], k);
    rows.push_back(v);
    add_factor(cs, g);
  }
  for (int j = snf.rank; j < cs.ambient_dim; ++j) {
    IntVec v = snf.right.col(j);
    for (int i = 0; i < v.size(); ++i) v[i] = mod_reduce(v[i], k);
    rows.push_back(v);
    add_factor(cs, k);
  }
  std::sort(cs.cyclic_factors.begin(), cs.cyclic_factors.end());
  cs.basis = IntMat(rows.size(), cs.ambient_dim);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) cs.basis.row(i) = rows[i].transpose();
  return cs;
}

}  // namespace

ColoringSpace coloring_space(const Diagram& d, Int k) {
  return solve_colorings(coloring_relations(d), k);
}

ColoringSpace coloring_space(const Tangle& t, Int k) {
  return solve_colorings(coloring_relations(t), k);
}

BoundaryColoringSpace boundary_image(const Tangle& t, Int p) {
  if (!is_prime(p)) throw std::invalid_argument("boundary_image needs a prime modulus");
  ColoringSpace cs = coloring_space(t, p);
  ArcStructure arcs = arc_structure(t);

  int m = static_cast<int>(t.boundary.size());
  BoundaryColoringSpace out;
  out.p = p;
  out.n = m / 2;

  RowSpan image(m, p);
  for (int i = 0; i < cs.basis.rows(); ++i) {
    IntVec v(m);
    for (int j = 0; j < m; ++j) v[j] = cs.basis(i, arcs.arc_of.at(t.boundary[j]));
    image.insert(v);
  }
  out.image_basis = image.basis();
  out.image_dim = image.rank();
  out.kernel_dim = cs.dim() - out.image_dim;
  return out;
}

Int determinant(const Diagram& d) {
  if (d.crossings.empty()) return d.free_loops == 1 ? 1 : 0;
  if (connected_pieces(d) > 1) return 0;

  IntMat m = coloring_relations(d);
  IntMat reduced = m.block(0, 0, m.rows() - 1, m.cols() - 1);
  SmithForm snf = smith_normal_form(reduced);
  if (snf.rank < reduced.cols()) return 0;
  __int128 det = 1;
  for (Int dv : snf.divisors) {
    det *= dv;
    if (det > (__int128)std::numeric_limits<Int>::max())
      throw std::overflow_error("determinant overflow");
  }
  return static_cast<Int>(det);
}

}  // namespace linkforge
