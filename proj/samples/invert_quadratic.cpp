// Inverts (2z+3)/(z^2-2z+2)^3 and checks the closed form against long division.

#include <cstdio>

#include "zinv/zinv.hpp"

int main() {
  const zinv::ParsedRational p = zinv::parse_rational_expr("(2z+3)/((z^2-2z+2)^3)");
  const zinv::ClosedFormExpr e = zinv::invert(p.rational, *p.factored);
  std::printf("x[n] = %s\n\n", zinv::render(e).c_str());

  const auto closed = zinv::eval_sequence(e, 12);
  const auto series = zinv::longdiv_series(p.rational, 12);
  std::printf("%3s %16s %16s\n", "n", "closed form", "long division");
  for (int n = 0; n <= 12; ++n) std::printf("%3d %16.6f %16.6f\n", n, closed.values[n], series.values[n]);
}
