#include "t4dyn/dynamics.hpp"

namespace t4 {

VariationalSolutions::VariationalSolutions(double alpha, const PotentialProfile& profile,
                                           double t_min, double t_max, double h)
    : alpha_(alpha),
      y0_(VariationalField(alpha, profile), OscillatorState<double>(1.0, 0.0), t_min, t_max, h),
      y1_(VariationalField(alpha, profile), OscillatorState<double>(0.0, 1.0), t_min, t_max, h) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
}

PhasePoint4<double> separatrix_state(const SeparatrixCoords& sc, double t,
                                     const VariationalSolutions& variational) {
  const double s = t + sc.t0;
  const auto [X, x] = separatrix_duffing(sc.sign, s);
  const OscillatorState<double> y = variational.combined(sc.c0, sc.c1, s);
  return {X, x, y[0], y[1]};
}

}  // namespace t4
