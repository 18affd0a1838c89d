#pragma once

namespace weyl {

/// Semiclassical constants for dimension d.
///   omega_d : volume of the unit ball
///   C_d     : Weyl constant of the counting function, omega_d / (2 pi)^d
///   L_d     : constant of the first Riesz mean, (2 pi)^-d \int (1-|p|^2)_+ dp
struct Constants {
    int d = 0;
    double omega_d = 0.0;
    double C_d = 0.0;
    double L_d = 0.0;
};

Constants constants(int d);

/// \int_{R^d} (|p|^2 - 1)_-^power dp for power in {0, 1}, by one-dimensional
/// radial quadrature. The unit-sphere area is itself obtained by quadrature of
/// the Gaussian moment, so no Gamma-function value enters; this is the
/// independent oracle for `constants`.
double phase_space_integral(int d, int power);

} // namespace weyl
