// Lowest eigenvalue of the discretised channel form against the coupling.
// Usage: channel_spectrum [n] [k]

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <thread>

#include "br2d.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 200;
  const int k = argc > 2 ? std::atoi(argv[2]) : 0;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  const double dc = br2d::cert::critical_coupling().delta_c;

  auto grid = std::make_shared<const br2d::RadialGrid>(br2d::build_radial_grid(n, br2d::MapKind::rational, 1e4));
  const auto kernel = br2d::assemble_kernel(grid, {k}, threads);

  std::printf("n = %d, k = %d\n%8s  %10s  %10s  %10s\n", n, k, "delta", "lambda", "1-2delta", "edge");
  for (double delta : {0.0, 0.1, 0.2, 0.3, dc, 0.45}) {
    const auto r = br2d::lowest_eigenvalue(br2d::form_from_kernel(kernel, delta));
    std::printf("%8.4f  %10.6f  %10.6f  %10.2e\n", delta, r.lambda_min, 1.0 - 2.0 * delta, r.edge_mass);
  }
}
