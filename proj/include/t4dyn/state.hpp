#pragma once

#include <Eigen/Core>

namespace t4 {

/// Component order of a point of the reduced four-dimensional phase space:
/// (X, x) is the Duffing factor, (Y, y) the transverse factor.
namespace phase {
enum : int { X = 0, x, Y, y };
}

template <typename Scalar>
using PhasePoint4 = Eigen::Matrix<Scalar, 4, 1>;

/// State (z, zdot) of the second-order linear variational equation.
template <typename Scalar>
using OscillatorState = Eigen::Matrix<Scalar, 2, 1>;

/// Oscillator pair (z, p) extended by the time variable tau and its conjugate u.
template <typename Scalar>
struct ExtendedState {
  Scalar z{};
  Scalar p{};
  Scalar tau{};
  Scalar u{};
};

}  // namespace t4
