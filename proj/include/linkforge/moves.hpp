#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkforge/diagram.hpp"

namespace linkforge {

struct MoveError : DiagramError {
  using DiagramError::DiagramError;
};

// One strand side for an insertion: an edge end (end = index into the sorted
// appearance list) or a crossing-free circle.
struct StrandRef {
  bool loop = false;
  int edge = 0;  // ignored for loops
  int end = 0;   // 0 or 1

  friend bool operator==(const StrandRef&, const StrandRef&) = default;
};

// Insertions name two strand sides bounding a common face; deletions name the
// crossings consumed.
struct MoveSite {
  StrandRef a, b;
  std::vector<int> crossings;

  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

enum class MoveKind { R1Plus, R1Minus, R2Plus, R2Minus, R3, NMove, SQMove, RationalMove };

struct Move {
  MoveKind kind = MoveKind::NMove;
  MoveSite site;
  int n = 0;           // NMove half-twist count, sign = handedness
  int s = 0, q = 0;    // SQMove parameters
  int p = 0;           // RationalMove numerator (q reused)
  int sign = 1;        // R1+/R2+ handedness
  bool remove = false; // NMove/SQMove in deletion mode
};

Diagram apply(const Diagram& d, const Move& m);

// --- twist plumbing ---------------------------------------------------------

// a1 horizontal twists, then a2 vertical, then a3 horizontal, ...
struct TwistProgram {
  std::vector<int> levels;  // innermost first, odd positions horizontal

  static TwistProgram n_move(int n);
  static TwistProgram sq_move(int s, int q);
  static TwistProgram rational(int p, int q);  // odd continued fraction of p/q
};

// Replace the 0-tangle between the two strand sides by the program's tangle.
Diagram insert_tangle(const Diagram& d, const StrandRef& a, const StrandRef& b,
                      const TwistProgram& program);

// Replace the 0-tangle between the two strand sides by the infinity tangle
// (reconnect the strands with a turnback pair).
Diagram insert_infinity(const Diagram& d, const StrandRef& a, const StrandRef& b);

// --- site enumeration (deterministic order) ---------------------------------

std::vector<MoveSite> insertion_sites(const Diagram& d);
std::vector<MoveSite> r1_deletion_sites(const Diagram& d);
std::vector<MoveSite> r2_deletion_sites(const Diagram& d);
std::vector<MoveSite> r3_sites(const Diagram& d);

// remove R1 kinks and R2 bigons greedily until none remain
Diagram r_reduce(const Diagram& d);

// --- certificates ------------------------------------------------------------

struct MoveCertificate {
  std::string start_name;               // catalog name, or
  std::optional<Diagram> start_diagram; // explicit start
  std::vector<Move> steps;
  int claim_components = 0;
  int claim_crossings = 0;
};

struct CertificateReport {
  bool valid = false;
  int failed_step = -1;
  std::string reason;
  int final_components = 0;
  int final_crossings = 0;
  int count_22 = 0;  // +-(2,2)-moves, rational (+-5)/(+-2) included
  std::map<std::string, int> move_counts;
  Diagram final_diagram;
};

CertificateReport verify_certificate(const MoveCertificate& c);

// --- rotors -------------------------------------------------------------------

struct RotorMarker {
  std::vector<int> crossings;  // the rotor part
  std::vector<int> boundary;   // 2n frontier edges, counterclockwise
};

// true when rotating the boundary by one 2pi/n step fixes the tangle up to
// relabeling
bool is_n_rotor(const Tangle& t, int n);

// Flip the rotor part about an in-plane axis, keeping the stator.
Diagram rotor_flip(const Diagram& d, const RotorMarker& marker);

// assemble stator and rotor tangles into a closed diagram (test helper and
// the inverse view of a marker)
Diagram glue_tangles(const Tangle& stator, const Tangle& rotor);

struct GluedRotor {
  Diagram diagram;
  RotorMarker marker;
};

// glue_tangles plus the marker locating the rotor inside the result; every
// frontier position must carry a crossing on at least one side
GluedRotor glue_rotor(const Tangle& stator, const Tangle& rotor);

struct Condition31Report {
  bool condition_ok = false;   // double positive horizontal = - double positive vertical
  bool mirror_ok = false;      // the mirrored pair satisfies the same sign
  bool involution_ok = false;  // rewriting twice restores the diagram
};

// Checks the skein-module relation between the two double-twist patterns at
// the site: the horizontal insertion evaluates to minus the vertical one,
// same for the mirrored patterns, and the rewrite is an involution.
Condition31Report verify_condition31(const Diagram& d, const StrandRef& a, const StrandRef& b);

}  // namespace linkforge
