#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "linkforge/linalg.hpp"

namespace linkforge {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One crossing of a planar diagram. `ends` lists the four edge labels
// counterclockwise starting at an incoming under-strand end, so the
// under-strand occupies slots 0/2 and the over-strand slots 1/3.
struct Crossing {
  int id = 0;
  std::array<int, 4> ends{};

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

// An unoriented link diagram: crossings over a 4-valent planar graph plus a
// count of crossing-free circles. Edge labels are arbitrary integers; every
// label appears exactly twice among crossing ends when the diagram is closed.
struct Diagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

// A tangle: a diagram plus 2n boundary edge labels, counterclockwise from a
// base point. Boundary edges reach exactly one crossing end; an edge listed
// twice in the boundary is an isolated boundary-to-boundary strand.
struct Tangle {
  Diagram diagram;
  std::vector<int> boundary;

  friend bool operator==(const Tangle&, const Tangle&) = default;
};

struct BraidWord {
  int strand_count = 1;
  std::vector<int> letters;  // +-i stands for sigma_i^{+-1}
};

// One end slot of one crossing; doubles as an edge side for face tracing.
struct Dart {
  int crossing = -1;  // index into Diagram::crossings
  int slot = -1;      // 0..3

  friend auto operator<=>(const Dart&, const Dart&) = default;
};

// Cached incidence structure for one diagram.
class DiagramIndex {
 public:
  explicit DiagramIndex(const Diagram& d);

  const std::vector<int>& edge_labels() const { return labels_; }
  // appearances of an edge among crossing ends, in (crossing, slot) order
  const std::vector<Dart>& darts_of(int edge) const;
  bool has_edge(int edge) const { return ends_.count(edge) != 0; }
  int edge_at(Dart d) const;
  // the other appearance of the edge at d (closed diagrams only)
  Dart mate(Dart d) const;

 private:
  const Diagram* d_;
  std::vector<int> labels_;
  std::map<int, std::vector<Dart>> ends_;
};

// Canonical tuple rotation and positional crossing ids.
Diagram normalize(Diagram d);

// --- validation ------------------------------------------------------------

// Structural and planarity validation of a closed diagram; throws DiagramError.
void validate(const Diagram& d);
// Same for a tangle (boundary edges are attached to a disk boundary).
void validate(const Tangle& t);

// --- construction & parsing -------------------------------------------------

// Text format: one record per line. `X a b c d` is a crossing (edge labels in
// planar-diagram convention), `O` a crossing-free circle, `#` a comment.
Diagram parse_pd(const std::string& text);
// Accepts the same records plus one `T b1 ... b2n` boundary record.
Tangle parse_tangle(const std::string& text);
// Braid format: `BR k: i1 i2 ...`
BraidWord parse_braid(const std::string& text);

std::string serialize(const Diagram& d);
std::string serialize(const Tangle& t);

Diagram braid_closure(const BraidWord& w);

// --- basic operations -------------------------------------------------------

int components(const Diagram& d);

// connected pieces of the underlying 4-valent graph, free loops included
int connected_pieces(const Diagram& d);

Diagram mirror(const Diagram& d);

// Entry (i,j): half the number of crossings between components i and j, mod 2.
// Components are indexed in serialization order. Throws if fewer than 2.
IntMat linking_matrix_mod2(const Diagram& d);

// --- arcs (maximal over-strands, the Fox coloring variables) ----------------

struct ArcStructure {
  int count = 0;                 // arcs + free loops
  int arc_count = 0;             // arcs backed by edges
  std::map<int, int> arc_of;     // edge label -> arc index
  // free loops occupy indices arc_count .. count-1
};

ArcStructure arc_structure(const Diagram& d);
// isolated boundary-to-boundary strands become arcs of their own
ArcStructure arc_structure(const Tangle& t);

// --- faces -------------------------------------------------------------------

struct FaceStructure {
  std::vector<std::vector<Dart>> faces;
  std::map<Dart, int> face_of;
};

// Faces of the closed diagram's rotation system (crossing-free loops excluded).
FaceStructure faces(const Diagram& d);

// --- equality up to relabeling ----------------------------------------------

// Label-independent serialization: equal codes iff the diagrams agree up to
// relabeling edges (split pieces sorted canonically).
std::string canonical_code(const Diagram& d);
// Boundary positions stay fixed; labels are normalized by traversal.
std::string canonical_code(const Tangle& t);

// --- tangle algebra -----------------------------------------------------------

// Cyclic shift of the boundary by i positions (rotation by i*2pi/2n).
Tangle tangle_rotate(const Tangle& t, int i);

// Glue a's right n endpoints to b's left n endpoints.
Tangle tangle_compose(const Tangle& a, const Tangle& b);

// elementary 2-tangles
Tangle zero_tangle();
Tangle infinity_tangle();
Tangle crossing_tangle(int sign);

// close a 2n-tangle by nested arcs joining position k with 2n-1-k
Diagram numerator_closure(const Tangle& t);

// fresh-label helpers
int max_edge_label(const Diagram& d);
Diagram relabeled(const Diagram& d, int offset);

// Remove the listed crossings (by index) and splice pairs of the freed strand
// ends back together; each glue consumes one open end of each label. Chains
// closing up away from all crossings become free loops.
Diagram splice(const Diagram& d, const std::vector<int>& remove,
               const std::vector<std::pair<int, int>>& glue);

// The same crossing with over- and under-strand exchanged.
Diagram switch_crossing(const Diagram& d, int crossing);

}  // namespace linkforge
