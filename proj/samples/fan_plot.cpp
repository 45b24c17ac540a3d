// Traces the 180-degree locus of K/(s(s+1)(s+2)) from every pole, follows the
// branches leaving the breakaway point and writes an SVG of the result.

#include <fstream>
#include <iostream>

#include "merolocus/merolocus.hpp"

using namespace merolocus;

int main(int argc, char** argv) {
  const char* out_path = argc > 1 ? argv[1] : "three_pole.svg";
  const FactoredFunction f(named_rational("three_pole"));
  const PhaseTarget degree(0, kPi);

  std::vector<LocusCurve> curves;
  for (std::size_t p = 0; p < f.poles().size(); ++p) {
    LocusCurve c = trace_from_pole(f, p, degree);
    std::cout << "pole " << p << ": " << to_string(c.terminus.kind) << " after " << c.points.size() << " points\n";
    if (c.saddle) {
      std::cout << "  breakaway at " << c.saddle->location.real() << ", branches:";
      for (double d : c.saddle->outgoing_directions) std::cout << ' ' << d;
      std::cout << '\n';
      if (p == 0) {
        for (LocusCurve& b : continue_through_saddle(f, c, *c.saddle)) curves.push_back(std::move(b));
      }
    }
    curves.push_back(std::move(c));
  }

  const auto poles = f.poles();
  const auto zeros = f.zeros();
  std::ofstream(out_path) << emit_plot(curves, poles, zeros);
  std::cout << "wrote " << out_path << '\n';
}
