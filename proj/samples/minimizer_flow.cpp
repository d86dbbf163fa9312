// Follows the spectrum of the majorization-minimal state of
// diag(0.32, 0.26, 0.19, 0.13, 0.10) as the ball radius grows, printing the
// step size delta at each kink and the Renyi-1/2 entropy gap along the way.

#include <algorithm>
#include <cstdio>

#include "hphi/bounds.hpp"
#include "hphi/minimizer.hpp"

int main() {
  const auto sigma = hphi::Spectrum::from_values({0.32, 0.26, 0.19, 0.13, 0.10});
  const auto family = hphi::renyi(0.5);

  std::printf("%-6s %-40s %s\n", "eps", "spectrum of M_eps(sigma)", "Delta_eps");
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.01 * i;
    const auto r = hphi::mmm(sigma, eps);
    std::printf("%-6.2f", eps);
    for (double v : r.output) std::printf(" %.4f", v);
    std::printf("    %.6f\n", hphi::delta_eps(family, sigma, eps).value);
  }

  // Kinks sit at the cumulative delta steps.
  auto current = sigma;
  double total = 0.0;
  while (!hphi::is_uniform(current)) {
    // The last step stops at the mixed state rather than overshooting it.
    const double step =
        std::min(hphi::delta_step(current).value, hphi::distance_to_uniform(current));
    total += step;
    current = hphi::mmm(current, step).output;
    std::printf("kink at eps = %.4f\n", total);
  }
}
