#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkforge/diagram.hpp"
#include "linkforge/kauffman.hpp"

namespace linkforge {

// lambda(K): u(K) >= lambda(K) (Wendt-type bound from the golden evaluation)
Int wendt_bound(const Diagram& d);

// lambda + 1 when epsilon = -(-1)^lambda, else lambda
Int parity_bound(const Diagram& d);

// bound from a verified reduction to the trivial n-component link by k
// (2,2)-moves: n + ((-1)^(n-k) - 1)/2
Int certificate_bound(int n, int k);

// Gordian distance bound |l2 - l1| + |e1 e2 - (-1)^(l2-l1)| / 2
Int distance_bound(const Diagram& d1, const Diagram& d2);

struct Bound {
  Int value = 0;
  std::string source;  // wendt | parity | certificate | distance
  std::string inputs;
};

struct BoundReport {
  std::string subject;
  std::vector<Bound> bounds;
  Int best = 0;
};

BoundReport bound_report(const Diagram& d, const std::string& subject,
                         std::optional<std::pair<int, int>> certificate_nk,
                         const Diagram* against);

// Consistency check of the epsilon/lambda pattern on a skein quadruple when
// the crossing change drops lambda by one.
struct QuadrupleCheck {
  bool applicable = false;  // |lambda(original) - lambda(switched)| == 1
  bool consistent = true;
  PhiDecomposition plus, minus, smooth0, smooth_inf;
};

QuadrupleCheck check_skein_quadruple(const Diagram& d, int crossing);

}  // namespace linkforge
