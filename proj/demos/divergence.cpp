// Trial states on a growing momentum window above the critical coupling.
// Usage: divergence [delta] [a]

#include <cstdio>
#include <cstdlib>
#include <thread>

#include "br2d.hpp"

int main(int argc, char** argv) {
  const double delta = argc > 1 ? std::atof(argv[1]) : 0.5;
  const double a = argc > 2 ? std::atof(argv[2]) : 50.0;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  try {
    const auto d = br2d::unbounded::divergence_demo(delta, a, {5e3, 5e4, 5e5, 5e6}, threads);
    std::printf("%10s  %14s  %12s  %12s\n", "b", "form", "kinetic", "potential");
    for (const auto& r : d.rows) std::printf("%10.3g  %14.10f  %12.6f  %12.6f\n", r.b, r.form_value, r.kinetic, r.potential);
    std::printf("slope per log(b/a): %.5f (predicted %.5f)\n", d.slope, d.predicted_slope);
  } catch (const br2d::PreconditionError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
