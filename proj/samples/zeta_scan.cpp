// Where do the loci leaving the pole of zeta go? Launches a fan of degrees
// from s = 1 into the upper half plane and tallies the termini, then prints
// the first nontrivial zero together with its certified winding count.

#include <iostream>
#include <map>

#include "merolocus/merolocus.hpp"

using namespace merolocus;

int main() {
  const BlackBoxFunction f = as_black_box("zeta");
  const double c = f.anchor_phase_constant({AnchorKind::Pole, 0});

  std::map<std::string, int> tally;
  constexpr int kLaunches = 90;
  for (int j = 1; j < kLaunches; ++j) {
    const double theta = kPi * j / kLaunches;
    try {
      const LocusCurve curve = trace_from_pole(f, 0, PhaseTarget::from_degree(c - theta));
      std::string key(to_string(curve.terminus.kind));
      if (curve.terminus.kind == TerminusKind::Zero) {
        const ComplexPoint z = f.zeros()[curve.terminus.index].location;
        key += " " + format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
      }
      ++tally[key];
    } catch (const Error& e) {
      ++tally[std::string(to_string(e.code()))];
    }
  }
  for (const auto& [k, n] : tally) std::cout << n << " x " << k << '\n';

  const long count = count_zeros_in_rectangle(zeta, 0.1, 0.9, 10.0, 20.0);
  const ComplexPoint rho = refine_zero(zeta, {0.5, 14.0});
  std::cout << "zeros in [0.1,0.9]x[10,20]: " << count << ", refined: " << rho.real() << " + " << rho.imag()
            << "i\n";
}
