#include "linkforge/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace linkforge {

namespace {

PhiDecomposition phi_data(const Diagram& d) { return decompose(eval_phi5(d)); }

void require_knot(const Diagram& d) {
  if (components(d) != 1) throw DiagramError("unknotting bounds need a knot diagram");
}

}  // namespace

Int wendt_bound(const Diagram& d) {
  require_knot(d);
  return phi_data(d).lambda;
}

Int parity_bound(const Diagram& d) {
  require_knot(d);
  PhiDecomposition pd = phi_data(d);
  int parity_sign = pd.lambda % 2 == 0 ? -1 : 1;  // -(-1)^lambda
  return pd.epsilon == parity_sign ? pd.lambda + 1 : pd.lambda;
}

Int certificate_bound(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("certificate_bound needs n >= 1, k >= 0");
  int sign = (n - k) % 2 == 0 ? 1 : -1;
  return n + (sign - 1) / 2;
}

Int distance_bound(const Diagram& d1, const Diagram& d2) {
  PhiDecomposition a = phi_data(d1), b = phi_data(d2);
  int dl = b.lambda - a.lambda;
  int parity = dl % 2 == 0 ? 1 : -1;
  return std::abs(dl) + std::abs(a.epsilon * b.epsilon - parity) / 2;
}

BoundReport bound_report(const Diagram& d, const std::string& subject,
                         std::optional<std::pair<int, int>> certificate_nk,
                         const Diagram* against) {
  BoundReport rep;
  rep.subject = subject;
  PhiDecomposition pd = phi_data(d);
  std::ostringstream phi;
  phi << "epsilon=" << pd.epsilon << " lambda=" << pd.lambda;
  if (components(d) == 1) {
    rep.bounds.push_back({wendt_bound(d), "wendt", phi.str()});
    rep.bounds.push_back({parity_bound(d), "parity", phi.str()});
  }
  if (certificate_nk) {
    auto [n, k] = *certificate_nk;
    std::ostringstream in;
    in << "n=" << n << " k=" << k;
    rep.bounds.push_back({certificate_bound(n, k), "certificate", in.str()});
  }
  if (against) {
    PhiDecomposition qd = phi_data(*against);
    std::ostringstream in;
    in << "lambda=" << pd.lambda << "," << qd.lambda << " epsilon=" << pd.epsilon << ","
       << qd.epsilon;
    rep.bounds.push_back({distance_bound(d, *against), "distance", in.str()});
  }
  rep.best = 0;
  for (const Bound& b : rep.bounds) rep.best = std::max(rep.best, b.value);
  return rep;
}

QuadrupleCheck check_skein_quadruple(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= static_cast<int>(d.crossings.size()))
    throw DiagramError("no such crossing");
  const auto& e = d.crossings[crossing].ends;
  Diagram sw = switch_crossing(d, crossing);
  Diagram s0 = splice(d, {crossing}, {{e[0], e[1]}, {e[2], e[3]}});
  Diagram s1 = splice(d, {crossing}, {{e[0], e[3]}, {e[1], e[2]}});

  QuadrupleCheck chk;
  PhiDecomposition a = phi_data(d), b = phi_data(sw);
  chk.smooth0 = phi_data(s0);
  chk.smooth_inf = phi_data(s1);
  if (std::abs(a.lambda - b.lambda) != 1) {
    chk.applicable = false;
    chk.plus = a;
    chk.minus = b;
    return chk;
  }
  chk.applicable = true;
  if (a.lambda < b.lambda) std::swap(a, b);  // a plays K_+
  chk.plus = a;
  chk.minus = b;
  chk.consistent = b.epsilon == -a.epsilon && chk.smooth0.lambda == b.lambda &&
                   chk.smooth_inf.lambda == b.lambda && chk.smooth0.epsilon == a.epsilon &&
                   chk.smooth_inf.epsilon == a.epsilon;
  return chk;
}

}  // namespace linkforge
