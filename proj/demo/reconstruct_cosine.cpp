// Reconstructs cos(5 pi t / 12) between samples with both formulas and prints
// the errors.  The cosine is bounded but never decays, which is where the
// classical 1/k coefficients struggle.

#include <cstdio>
#include <numbers>

#include "nvsinc/interpolator.hpp"

int main() {
  const double omega = 5 * std::numbers::pi / 12;
  const auto config = nvsinc::default_config(omega);
  const auto signal = nvsinc::Signal::cosine(omega, 0.0);

  std::printf("omega=%.6f omega1=%.6f N=%lld\n", config.omega(), config.omega1(),
              static_cast<long long>(config.n_even()));
  std::printf("%10s %8s %14s %14s\n", "t", "L", "err_modified", "err_classical");
  for (const double t : {0.5, 10.25, 1234.7}) {
    for (const std::int64_t L : {100, 1000, 10000}) {
      const auto r = nvsinc::report(config, signal, t, nvsinc::TruncationWindow::centered_at_t(L));
      std::printf("%10.2f %8lld %14.3e %14.3e\n", t, static_cast<long long>(L), r.abs_err_modified,
                  r.abs_err_classical);
    }
  }
}
