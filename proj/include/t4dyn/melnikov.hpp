#pragma once

// Independent computations of the Melnikov integral
//   I = int_0^inf qdot(t) z0(t) z1(t) dt
// for zddot + [alpha^2 - q(t)] z = 0: direct Riemann sum over a symplectic
// solution, the asymptotic phase-angle formula I = W alpha cot(B), and the
// z = tanh(t) substitution. Also the Melnikov function of the perturbed
// Duffing family and a direct check of first-order splitting.

#include <string_view>
#include <variant>
#include <vector>

#include "t4dyn/dynamics.hpp"
#include "t4dyn/integrators.hpp"
#include "t4dyn/profile.hpp"

namespace t4 {

enum class MelnikovMethod { quadrature, phase_angle, legendre_substitution };

std::string_view to_string(MelnikovMethod m);

/// Extended-Hamiltonian drift of both Forest-Ruth solutions. Solution 0
/// starts at (z, zdot) = (1, 0), solution 1 at (0, 1).
struct QuadratureDiagnostics {
  double h0_min = 0.0;
  double h0_max = 0.0;
  double h1_min = 0.0;
  double h1_max = 0.0;

  double h0_drift() const { return h0_max - h0_min; }
  double h1_drift() const { return h1_max - h1_min; }
};

struct PhaseDiagnostics {
  double B = 0.0;
  int zeros_used = 0;
  /// Largest deviation of a single zero's phase from the averaged phase.
  double phase_spread = 0.0;
  /// -[z0' z1' + alpha^2 z0 z1] averaged over late grid times and its max - min.
  double limit_estimate = 0.0;
  double limit_spread = 0.0;
  /// max |W(t) - W(0)| along the solutions.
  double wronskian_drift = 0.0;
  bool limit_sign_consistent = true;
};

struct LegendreDiagnostics {
  int panels = 0;
  int order = 0;
  double z_max = 0.0;
  /// Bound on the neglected piece over [z_max, 1).
  double tail_bound = 0.0;
};

struct MelnikovResult {
  double alpha = 0.0;
  double value = 0.0;
  MelnikovMethod method = MelnikovMethod::quadrature;
  double h = 0.0;
  double T = 0.0;
  double wronskian = 1.0;
  std::variant<QuadratureDiagnostics, PhaseDiagnostics, LegendreDiagnostics> diagnostics;
};

/// I^h = h * sum_{i=0}^{N} qdot(t_i) z0(t_i) z1(t_i), t_i = i h, N = T/h, with
/// both solutions from Forest-Ruth on the extended Hamiltonian.
MelnikovResult melnikov_quadrature(double alpha, const PotentialProfile& profile, double h,
                                   double T);

struct PhaseConfig {
  double h = 1e-3;
  double window_start = 20.0;
  double window_end = 35.0;
  int min_pairs = 5;
  /// Initial slope of the odd solution; the Wronskian equals this value.
  double z1_slope = 1.0;

  /// Window end actually used: long enough to hold min_pairs + 2 half-periods.
  double effective_window_end(double alpha) const;
};

struct PhaseAngle {
  /// B in (0, pi) with I = W alpha cot(B).
  double B = 0.0;
  double alpha = 0.0;
  int n_zeros_used = 0;
  /// Asymptotic phases alpha * t_n mod pi of the even and odd solution.
  double phi0 = 0.0;
  double phi1 = 0.0;
  double spread = 0.0;
};

PhaseAngle phase_angle(double alpha, const PotentialProfile& profile, const PhaseConfig& cfg = {});

/// I = W alpha cot(B), with the direct late-time limit as a diagnostic.
MelnikovResult melnikov_limit(double alpha, const PotentialProfile& profile,
                              const PhaseConfig& cfg = {});

/// m = 2 c0 c1 I.
double melnikov_m(double c0, double c1, double I);

/// int_{-T}^{T} 4 x X Y^2 dt along the closed-form separatrix described by sc,
/// composite Simpson with step h (T/h integral).
double melnikov_full_line(const SeparatrixCoords& sc, double alpha,
                          const PotentialProfile& profile, double h, double T);

struct LegendreConfig {
  double h = 1e-3;
  /// Panels [1 - 2^-k, 1 - 2^-(k+1)], k = 0 .. panels-1, after the first [0, 1/2].
  int panels = 40;
  int order = 16;
  int subdivisions = 2;
};

/// I = int_0^1 qdot(t(z)) / (1 - z^2) U0(z) U1(z) dz with U_j(z) = Y_j(atanh z);
/// for q = 2 sech^2 the weight is -4 z.
MelnikovResult melnikov_legendre_substitution(double alpha, const PotentialProfile& profile,
                                              const LegendreConfig& cfg = {});

struct SplittingSample {
  double eps = 0.0;
  double delta_h = 0.0;
  double ratio = 0.0;
  /// |ratio - m_full_line| / |m_full_line|
  double rel_err_full_line = 0.0;
  /// |ratio - melnikov_m(c0, c1, I)| / |melnikov_m|
  double rel_err_formula = 0.0;
};

struct SplittingReport {
  double alpha = 0.0;
  double T = 0.0;
  SeparatrixCoords sc;
  /// First-order splitting integrated along the unperturbed separatrix over [-T, T].
  double m_full_line = 0.0;
  /// melnikov_m(c0, c1, I) with I from converged quadrature.
  double m_formula = 0.0;
  std::vector<SplittingSample> samples;
  /// Least-squares fit delta_h = slope * eps + intercept.
  double slope = 0.0;
  double intercept = 0.0;
};

struct SplittingConfig {
  double h = 1e-3;
  double escape_radius = 1e3;
};

/// Integrates the perturbed field from the separatrix point at t = -T to t = T
/// for each eps and compares delta_h / eps with the first-order prediction.
SplittingReport verify_splitting(double alpha, const std::vector<double>& eps_values,
                                 const SeparatrixCoords& sc, double T,
                                 const SplittingConfig& cfg = {});

}  // namespace t4
