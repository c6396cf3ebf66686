// Critical coupling, the certified floor, and the scalar function behind it.

#include <cstdio>

#include "br2d.hpp"

int main() {
  const auto cc = br2d::cert::critical_coupling();
  std::printf("delta_c          %.15f\n", cc.delta_c);
  std::printf("1 - 2 delta_c    %.15f\n", cc.floor);

  std::printf("\n%10s  %18s\n", "x", "f(x)");
  for (double x : {0.001, 0.05, 0.2, 0.4, 0.7, 0.9, 1.0}) std::printf("%10.3f  %18.15f\n", x, br2d::cert::f_of_x(x, br2d::cert::Representation::hypergeometric));

  for (const auto& r : {br2d::cert::certify_high_regime(), br2d::cert::certify_low_regime()}) {
    std::printf("\n%s on [%g, %g]: %s, min %.6g\n", r.name.c_str(), r.domain_lo, r.domain_hi, r.pass ? "holds" : "fails",
                r.min_value);
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) std::printf("  c%zu = %.10g\n", i, r.coefficients[i]);
  }
}
