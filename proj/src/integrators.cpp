#include "t4dyn/integrators.hpp"

#include <array>
#include <cmath>

namespace t4 {

double forest_ruth_theta() { return 1.0 / (2.0 - std::cbrt(2.0)); }

namespace {

struct ForestRuthWeights {
  std::array<double, 4> drift;
  std::array<double, 4> kick;
};

const ForestRuthWeights& weights() {
  static const ForestRuthWeights w = [] {
    const double th = forest_ruth_theta();
    return ForestRuthWeights{{0.5 * th, 0.5 * (1.0 - th), 0.5 * (1.0 - th), 0.5 * th},
                             {th, 1.0 - 2.0 * th, th, 0.0}};
  }();
  return w;
}

}  // namespace

double extended_hamiltonian(const ExtendedState<double>& s, double alpha,
                            const PotentialProfile& profile) {
  return 0.5 * s.p * s.p + 0.5 * (alpha * alpha - profile.q(s.tau)) * s.z * s.z + s.u;
}

ExtendedState<double> forest_ruth_step(const ExtendedState<double>& s, double alpha,
                                       const PotentialProfile& profile, double h) {
  const auto& w = weights();
  const double a2 = alpha * alpha;
  ExtendedState<double> out = s;
  for (int stage = 0; stage < 4; ++stage) {
    // Drift with A = 1/2 p^2 + u.
    const double d = w.drift[stage] * h;
    out.z += d * out.p;
    out.tau += d;
    // Kick with B = 1/2 [alpha^2 - q(tau)] z^2; u absorbs -dB/dtau.
    const double k = w.kick[stage] * h;
    if (k != 0.0) {
      const double z2 = out.z * out.z;
      out.u += k * 0.5 * profile.qdot(out.tau) * z2;
      out.p -= k * (a2 - profile.q(out.tau)) * out.z;
    }
  }
  return out;
}

Trajectory<ExtendedState<double>> forest_ruth_integrate(const ExtendedState<double>& initial,
                                                        double alpha,
                                                        const PotentialProfile& profile,
                                                        const StepperConfig& cfg) {
  if (cfg.method != Method::forest_ruth) {
    throw Error(ErrorCode::InvalidArgument, "forest_ruth_integrate requires method forest_ruth");
  }
  const long n = cfg.steps();
  Trajectory<ExtendedState<double>> traj;
  traj.times.reserve(n / cfg.record_stride + 2);
  traj.states.reserve(n / cfg.record_stride + 2);
  traj.conserved.reserve(n / cfg.record_stride + 2);

  ExtendedState<double> s = initial;
  traj.push(0.0, s, extended_hamiltonian(s, alpha, profile));
  for (long i = 1; i <= n; ++i) {
    s = forest_ruth_step(s, alpha, profile, cfg.h);
    if (!is_finite(s)) {
      throw Error(ErrorCode::NonfiniteState, "state overflowed at step " + std::to_string(i));
    }
    const double hval = extended_hamiltonian(s, alpha, profile);
    if (i % cfg.record_stride == 0 || i == n) {
      traj.push(i * cfg.h, s, hval);
    } else {
      // Drift bounds cover every step, recorded or not.
      traj.drift_min = std::min(traj.drift_min, hval);
      traj.drift_max = std::max(traj.drift_max, hval);
    }
  }
  return traj;
}

}  // namespace t4
