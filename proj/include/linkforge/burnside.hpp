#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "linkforge/diagram.hpp"
#include "linkforge/linalg.hpp"

namespace linkforge {

// Finite presentation; letters of a relator are +-(generator index + 1).
struct GroupPresentation {
  int generators = 0;
  std::vector<std::vector<int>> relators;
};

// One generator per arc (free loops included), one relator
// y_over y_under1^-1 y_over y_under2^-1 per crossing.
GroupPresentation core_group(const Diagram& d);

// Set one generator to the identity and reduce; drops to pi_1 of the double
// branched cover.
GroupPresentation double_cover_presentation(const GroupPresentation& g, int kill = 0);

// Weight-graded F_p Lie quotient data of the class-c exponent-p quotient.
struct GradedLieQuotient {
  Int p = 0;
  int class_bound = 3;
  std::array<int, 3> dims = {0, 0, 0};
  std::array<int, 3> free_dims = {0, 0, 0};  // of the free structure on dims[0] generators
  IntMat imposed2;  // row-reduced relation matrix, weight 2
  IntMat imposed3;  // row-reduced relation matrix, weight 3
  std::vector<std::string> hall2, hall3;  // basis labels of the ambient weights
};

GradedLieQuotient lie_quotient(const GroupPresentation& g, Int p, int class_bound = 3);

struct BurnsideReport {
  Int p = 0;
  int class_bound = 3;
  std::array<int, 3> dims = {0, 0, 0};
  std::optional<Int> order_exponent;  // exact for p = 3
  std::array<int, 3> reference_dims = {0, 0, 0};
  bool obstruction = false;
};

BurnsideReport burnside_report(const Diagram& d, Int p);

// Randomized consistency audit of the internal collection arithmetic:
// associativity, inverses, the exponent-p law. Throws std::logic_error on
// failure.
void pc_self_check(Int p, int gens, unsigned seed, int trials);

}  // namespace linkforge
