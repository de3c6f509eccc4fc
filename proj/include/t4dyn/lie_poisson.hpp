#pragma once

// Lie-Poisson structure of t4*, the dual of the Lie algebra of 4x4 unipotent
// upper-triangular matrices, and the reduction of diagonal Hamiltonians on a
// regular coadjoint orbit to the two-parameter normal form.

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "t4dyn/error.hpp"
#include "t4dyn/state.hpp"

namespace t4 {

/// Indices of the ordered basis (U, V, W, X, Y, Z) of t4 and of the dual
/// coordinates (pu, pv, pw, px, py, pz).
namespace basis {
enum : int { U = 0, V, W, X, Y, Z, dim };
}

template <typename Scalar>
using Coadjoint = Eigen::Matrix<Scalar, 6, 1>;
using CoadjointPoint = Coadjoint<double>;

/// One nonzero commutator [e_i, e_j] = coeff * e_k with i < j in table order.
struct StructureConstant {
  int i;
  int j;
  int k;
  int coeff;
};

/// [X,Y]=Z, [Y,V]=U, [X,U]=W, [Z,V]=W; everything else vanishes or follows by skew-symmetry.
inline constexpr std::array<StructureConstant, 4> kStructureConstants{{
    {basis::X, basis::Y, basis::Z, 1},
    {basis::Y, basis::V, basis::U, 1},
    {basis::X, basis::U, basis::W, 1},
    {basis::Z, basis::V, basis::W, 1},
}};

/// Coefficient of e_k in [e_i, e_j].
constexpr int structure_constant(int i, int j, int k) {
  int c = 0;
  for (const auto& sc : kStructureConstants) {
    if (sc.k != k) continue;
    if (sc.i == i && sc.j == j) c += sc.coeff;
    if (sc.i == j && sc.j == i) c -= sc.coeff;
  }
  return c;
}

/// Lie bracket of two algebra elements given by coefficients over the basis.
template <typename Derived1, typename Derived2>
Coadjoint<typename Derived1::Scalar> lie_bracket(const Eigen::MatrixBase<Derived1>& xi,
                                                  const Eigen::MatrixBase<Derived2>& eta) {
  Coadjoint<typename Derived1::Scalar> out = Coadjoint<typename Derived1::Scalar>::Zero();
  for (const auto& sc : kStructureConstants) {
    out[sc.k] += sc.coeff * (xi[sc.i] * eta[sc.j] - xi[sc.j] * eta[sc.i]);
  }
  return out;
}

/// {f, g}(p) = -<p, [df_p, dg_p]> for gradients expressed over the basis.
template <typename Derived1, typename Derived2, typename Derived3>
typename Derived1::Scalar poisson_bracket(const Eigen::MatrixBase<Derived1>& df,
                                          const Eigen::MatrixBase<Derived2>& dg,
                                          const Eigen::MatrixBase<Derived3>& p) {
  return -p.dot(lie_bracket(df, dg));
}

/// Coefficients a_ij of 4H(p) = a12 px^2 + a23 py^2 + a13 pz^2 + a24 pu^2 + a34 pv^2 + a14 pw^2.
template <typename Scalar>
struct DiagonalMetric {
  Scalar a12{};
  Scalar a13{};
  Scalar a14{};
  Scalar a23{};
  Scalar a24{};
  Scalar a34{};

  /// Builds a metric and enforces nonnegativity and a13*a34 == a12*a24.
  static DiagonalMetric checked(Scalar a12, Scalar a13, Scalar a14, Scalar a23, Scalar a24,
                                Scalar a34) {
    DiagonalMetric m{a12, a13, a14, a23, a24, a34};
    for (Scalar v : {a12, a13, a14, a23, a24, a34}) {
      if (!(v >= Scalar(0))) {
        throw Error(ErrorCode::InvalidArgument, "metric coefficients must be nonnegative");
      }
    }
    if (!m.is_compatible()) {
      throw Error(ErrorCode::IncompatibleMetric, "a13*a34 must equal a12*a24");
    }
    return m;
  }

  static DiagonalMetric subriemannian() { return {1, 0, 0, 1, 0, 1}; }
  static DiagonalMetric riemannian() { return {1, 1, 1, 1, 1, 1}; }

  bool is_compatible(Scalar rel_tol = Scalar(1e-12)) const {
    using std::abs;
    const Scalar lhs = a13 * a34;
    const Scalar rhs = a12 * a24;
    const Scalar scale = std::max({Scalar(1), abs(lhs), abs(rhs)});
    return abs(lhs - rhs) <= rel_tol * scale;
  }

  /// Per-coordinate weights in basis order (U, V, W, X, Y, Z).
  Coadjoint<Scalar> weights() const {
    Coadjoint<Scalar> w;
    w << a24, a34, a14, a12, a23, a13;
    return w;
  }

  Scalar hamiltonian(const Coadjoint<Scalar>& p) const {
    return Scalar(0.25) * (weights().array() * p.array().square()).sum();
  }

  Coadjoint<Scalar> gradient(const Coadjoint<Scalar>& p) const {
    return Scalar(0.5) * weights().cwiseProduct(p);
  }
};

/// Euler vector field p_dot_a = {p_a, H}, i.e. -ad*_{dH(p)} p.
template <typename Scalar>
Coadjoint<Scalar> euler_field(const DiagonalMetric<Scalar>& metric, const Coadjoint<Scalar>& p) {
  const Coadjoint<Scalar> dh = metric.gradient(p);
  Coadjoint<Scalar> out;
  for (int a = 0; a < basis::dim; ++a) {
    out[a] = poisson_bracket(Coadjoint<Scalar>::Unit(a), dh, p);
  }
  return out;
}

template <typename Scalar>
struct OrbitId {
  Scalar k1{};
  Scalar k2{};

  bool is_regular() const { return k1 * k2 != Scalar(0); }
};

/// K1 = pw, K2 = pw*py - pz*pu.
template <typename Scalar>
OrbitId<Scalar> casimirs(const Coadjoint<Scalar>& p) {
  return {p[basis::W], p[basis::W] * p[basis::Y] - p[basis::Z] * p[basis::U]};
}

/// Gradients of the two Casimirs over the basis.
template <typename Scalar>
std::array<Coadjoint<Scalar>, 2> casimir_gradients(const Coadjoint<Scalar>& p) {
  Coadjoint<Scalar> dk1 = Coadjoint<Scalar>::Unit(basis::W);
  Coadjoint<Scalar> dk2 = Coadjoint<Scalar>::Zero();
  dk2[basis::W] = p[basis::Y];
  dk2[basis::Y] = p[basis::W];
  dk2[basis::Z] = -p[basis::U];
  dk2[basis::U] = -p[basis::Z];
  return {dk1, dk2};
}

/// Canonical coordinates (a, A, b, B) on a coadjoint orbit with chart scales.
template <typename Scalar>
struct ChartPoint {
  Scalar a{};
  Scalar A{};
  Scalar b{};
  Scalar B{};
  Scalar lambda{1};
  Scalar mu{1};

  Eigen::Matrix<Scalar, 4, 1> coords() const { return {a, A, b, B}; }
};

namespace detail {
template <typename Scalar>
void require_chart_scales(Scalar lambda, Scalar mu) {
  if (!(lambda > Scalar(0)) || !(mu > Scalar(0))) {
    throw Error(ErrorCode::InvalidArgument, "chart scales lambda, mu must be positive");
  }
}

template <typename Scalar>
void require_nonzero_k1(const OrbitId<Scalar>& k) {
  if (k.k1 == Scalar(0)) {
    throw Error(ErrorCode::SingularOrbit, "regular coadjoint orbit requires k1*k2 != 0");
  }
}
}  // namespace detail

/// a = -lambda px, A = pu/(k1 lambda), b = mu pv, B = pz/(k1 mu).
///
/// The sign of b is opposite to the customary printing so that {a,A} = {b,B} = 1.
template <typename Scalar>
ChartPoint<Scalar> chart_to_canonical(const Coadjoint<Scalar>& p, const OrbitId<Scalar>& k,
                                      Scalar lambda, Scalar mu) {
  using std::abs;
  detail::require_nonzero_k1(k);
  detail::require_chart_scales(lambda, mu);
  const auto kp = casimirs(p);
  const Scalar tol = Scalar(1e-10);
  if (abs(kp.k1 - k.k1) > tol * std::max(Scalar(1), abs(k.k1)) ||
      abs(kp.k2 - k.k2) > tol * std::max(Scalar(1), abs(k.k2))) {
    throw Error(ErrorCode::ChartMismatch, "point does not lie on the requested coadjoint orbit");
  }
  ChartPoint<Scalar> q;
  q.a = -lambda * p[basis::X];
  q.A = p[basis::U] / (k.k1 * lambda);
  q.b = mu * p[basis::V];
  q.B = p[basis::Z] / (k.k1 * mu);
  q.lambda = lambda;
  q.mu = mu;
  return q;
}

/// Inverse chart; the image always has casimirs equal to k.
template <typename Scalar>
Coadjoint<Scalar> chart_from_canonical(const ChartPoint<Scalar>& q, const OrbitId<Scalar>& k) {
  detail::require_nonzero_k1(k);
  detail::require_chart_scales(q.lambda, q.mu);
  Coadjoint<Scalar> p;
  p[basis::U] = k.k1 * q.lambda * q.A;
  p[basis::V] = q.b / q.mu;
  p[basis::W] = k.k1;
  p[basis::X] = -q.a / q.lambda;
  p[basis::Y] = (k.k2 + k.k1 * k.k1 * q.lambda * q.mu * q.A * q.B) / k.k1;
  p[basis::Z] = k.k1 * q.mu * q.B;
  return p;
}

/// H restricted to the orbit and written in chart coordinates.
template <typename Scalar>
Scalar chart_hamiltonian(const DiagonalMetric<Scalar>& metric, const OrbitId<Scalar>& k,
                         const ChartPoint<Scalar>& q) {
  return metric.hamiltonian(chart_from_canonical(q, k));
}

/// Hamiltonian field of the chart Hamiltonian for the canonical bracket
/// [a,A] = [b,B] = 1, ordered (a, A, b, B).
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> canonical_field(const DiagonalMetric<Scalar>& metric,
                                            const OrbitId<Scalar>& k, const ChartPoint<Scalar>& q) {
  const Coadjoint<Scalar> dh = metric.gradient(chart_from_canonical(q, k));
  const Scalar lm = q.lambda * q.mu * k.k1;
  const Scalar dh_da = -dh[basis::X] / q.lambda;
  const Scalar dh_dA = dh[basis::U] * k.k1 * q.lambda + dh[basis::Y] * lm * q.B;
  const Scalar dh_db = dh[basis::V] / q.mu;
  const Scalar dh_dB = dh[basis::Z] * k.k1 * q.mu + dh[basis::Y] * lm * q.A;
  return {dh_dA, -dh_da, dh_dB, -dh_db};
}

/// Symplectic rotation (a, A, b, B) -> (X, x, Y, y) with A = (X-Y)/sqrt2,
/// B = (X+Y)/sqrt2, a = (x-y)/sqrt2, b = (x+y)/sqrt2.
template <typename Scalar>
PhasePoint4<Scalar> rotate_chart(const ChartPoint<Scalar>& q) {
  using std::sqrt;
  const Scalar s = Scalar(1) / sqrt(Scalar(2));
  PhasePoint4<Scalar> out;
  out[phase::X] = s * (q.A + q.B);
  out[phase::x] = s * (q.a + q.b);
  out[phase::Y] = s * (q.B - q.A);
  out[phase::y] = s * (q.b - q.a);
  return out;
}

template <typename Scalar>
struct ReducedParams {
  Scalar lambda{};
  Scalar mu{};
  Scalar xi{};
  Scalar omega{};
  Scalar nu{};
  Scalar c{};
  Scalar alpha{};
  /// xi * nu^(-2/3); equals 1 exactly when the quartic normal form needs no extra rescaling.
  Scalar xi_normalization{};
};

/// Orbit-level parameters of the reduced quartic Hamiltonian and alpha^2 = 1 + 2 c nu^(1/3).
template <typename Scalar>
ReducedParams<Scalar> reduce_params(const DiagonalMetric<Scalar>& m, const OrbitId<Scalar>& k) {
  using std::cbrt;
  using std::pow;
  using std::sqrt;
  if (!m.is_compatible()) {
    throw Error(ErrorCode::IncompatibleMetric, "a13*a34 must equal a12*a24");
  }
  if (!k.is_regular()) {
    throw Error(ErrorCode::SingularOrbit, "regular coadjoint orbit requires k1*k2 != 0");
  }
  if (!(m.a12 > Scalar(0)) || !(m.a23 > Scalar(0)) || !(m.a34 > Scalar(0))) {
    throw Error(ErrorCode::InvalidArgument, "reduction requires a12, a23, a34 > 0");
  }
  ReducedParams<Scalar> r;
  r.lambda = sqrt(Scalar(2) * m.a12);
  r.mu = sqrt(Scalar(2) * m.a34);
  const Scalar k1sq = k.k1 * k.k1;
  const Scalar cross = m.a23 * k.k2 * sqrt(m.a12 * m.a34);
  r.xi = -(m.a13 * m.a34 * k1sq + cross);
  r.omega = m.a13 * m.a34 * k1sq - cross;
  r.nu = m.a12 * m.a23 * m.a34 * k1sq;
  r.c = m.a13 / (m.a12 * m.a23);
  const Scalar alpha_sq = Scalar(1) + Scalar(2) * r.c * cbrt(r.nu);
  if (!(alpha_sq > Scalar(0))) {
    throw Error(ErrorCode::NonpositiveAlphaSquared, "1 + 2 c nu^(1/3) must be positive");
  }
  r.alpha = sqrt(alpha_sq);
  r.xi_normalization = r.xi / pow(r.nu, Scalar(2) / Scalar(3));
  return r;
}

/// 2H_k = x^2 - xi X^2 + nu X^4 + y^2 + omega Y^2 + nu Y^4 - 2 nu X^2 Y^2.
template <typename Scalar>
Scalar reduced_quartic(const ReducedParams<Scalar>& r, const PhasePoint4<Scalar>& s) {
  const Scalar X2 = s[phase::X] * s[phase::X];
  const Scalar Y2 = s[phase::Y] * s[phase::Y];
  return s[phase::x] * s[phase::x] - r.xi * X2 + r.nu * X2 * X2 + s[phase::y] * s[phase::y] +
         r.omega * Y2 + r.nu * Y2 * Y2 - Scalar(2) * r.nu * X2 * Y2;
}

/// 2H = x^2 + (X^2 - 1/2)^2 + y^2 + alpha^2 Y^2 + Y^4 - 2 X^2 Y^2.
template <typename Scalar>
Scalar normalized_hamiltonian(Scalar alpha, const PhasePoint4<Scalar>& s) {
  const Scalar X2 = s[phase::X] * s[phase::X];
  const Scalar Y2 = s[phase::Y] * s[phase::Y];
  const Scalar d = X2 - Scalar(0.5);
  return s[phase::x] * s[phase::x] + d * d + s[phase::y] * s[phase::y] + alpha * alpha * Y2 +
         Y2 * Y2 - Scalar(2) * X2 * Y2;
}

/// Symplectic scaling (x, X, y, Y) -> (a x, X/a, a y, Y/a) with a = nu^(1/6).
template <typename Scalar>
PhasePoint4<Scalar> nu_scaling(Scalar nu, const PhasePoint4<Scalar>& s) {
  using std::pow;
  const Scalar a = pow(nu, Scalar(1) / Scalar(6));
  PhasePoint4<Scalar> out;
  out[phase::X] = s[phase::X] / a;
  out[phase::x] = s[phase::x] * a;
  out[phase::Y] = s[phase::Y] / a;
  out[phase::y] = s[phase::y] * a;
  return out;
}

}  // namespace t4
