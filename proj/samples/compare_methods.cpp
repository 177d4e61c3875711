// Runs every inversion method on a few inputs and prints the largest pairwise deviation.

#include <cstdio>

#include "zinv/zinv.hpp"

int main() {
  for (const char* text : {"1/(z^2+1)", "z/(z-1)", "(z^2+0.5)/((z-0.5)^2 (z^2+z+0.5))", "1/(z^3 - 0.2)"}) {
    const zinv::ParsedRational p = zinv::parse_rational_expr(text);
    const zinv::ComparisonReport rep = zinv::compare_methods(p.rational, p.factored, 50);
    std::printf("%-40s %s  max dev %.3g\n", text, rep.pass ? "PASS" : "FAIL", rep.max_pair_deviation());
  }
}
