#pragma once

#include <cstdint>
#include <vector>

#include "linkforge/diagram.hpp"

namespace linkforge::testutil {

// deterministic splitmix64; tests must not depend on platform rand()
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool coin() { return (next() & 1) != 0; }
};

// n parallel strands (the trivial n-tangle)
inline Tangle trivial_tangle(int n) {
  Tangle t;
  for (int i = 0; i < n; ++i) t.boundary.push_back(i + 1);
  for (int i = n - 1; i >= 0; --i) t.boundary.push_back(i + 1);
  return t;
}

// the rotationally symmetric crossing-free n-tangle: strand k spans boundary
// positions 2k and 2k+1
inline Tangle adjacent_pairs_tangle(int n) {
  Tangle t;
  for (int k = 0; k < n; ++k) {
    t.boundary.push_back(k + 1);
    t.boundary.push_back(k + 1);
  }
  return t;
}

// one crossing whose legs sit at 4 consecutive boundary positions (offset
// rotations come from tangle_rotate), remaining strands parallel
inline Tangle one_crossing_tangle(int n, int sign) {
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
  int label = 5;
  std::vector<int> tail;
  for (int i = 0; i < n - 2; ++i) tail.push_back(label++);
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) t.boundary.push_back(*it);
  for (int e : tail) t.boundary.push_back(e);
  return t;
}

// Rotationally symmetric n-rotor: n chords, consecutive ones crossing once,
// built so that each strand runs from position 2k to position 2k+3.
inline Tangle wheel_rotor(int n, int sign) {
  Tangle t;
  // labels: a_k = 3k+1 (entry), b_k = 3k+2 (middle), c_k = 3k+3 (exit)
  auto a = [](int k) { return 3 * k + 1; };
  auto b = [](int k) { return 3 * k + 2; };
  auto c = [](int k) { return 3 * k + 3; };
  for (int k = 0; k < n; ++k) {
    Crossing cr;
    cr.id = k;
    int k1 = (k + 1) % n;
    if (sign >= 0)
      cr.ends = {b(k), a(k1), c(k), b(k1)};
    else
      cr.ends = {a(k1), c(k), b(k1), b(k)};
    t.diagram.crossings.push_back(cr);
  }
  t.diagram = normalize(std::move(t.diagram));
  t.boundary.resize(2 * n);
  for (int k = 0; k < n; ++k) {
    t.boundary[2 * k] = a(k);
    t.boundary[(2 * k + 3) % (2 * n)] = c(k);
  }
  return t;
}

// random n-algebraic tangle: composites r^i(A) * r^j(B) over 0/1-crossing seeds
inline Tangle random_algebraic_tangle(Rng& rng, int n, int ops) {
  auto seed = [&]() -> Tangle {
    int kind = rng.below(3);
    if (kind == 0) return trivial_tangle(n);
    Tangle t = one_crossing_tangle(n, rng.coin() ? 1 : -1);
    return tangle_rotate(t, rng.below(2 * n));
  };
  Tangle acc = seed();
  for (int step = 0; step < ops; ++step) {
    Tangle b = seed();
    acc = tangle_compose(tangle_rotate(acc, rng.below(2 * n)),
                         tangle_rotate(b, rng.below(2 * n)));
  }
  return acc;
}

}  // namespace linkforge::testutil
