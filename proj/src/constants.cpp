#include "weyl/constants.hpp"

#include <cmath>
#include <numbers>

#include "weyl/errors.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/special.hpp"

namespace weyl {

Constants constants(int d) {
    if (d < 1) throw DomainError("constants: dimension must be at least 1");
    Constants c;
    c.d = d;
    c.omega_d = std::pow(std::numbers::pi, 0.5 * d) / gamma_fn(0.5 * d + 1.0);
    c.C_d = c.omega_d / std::pow(2.0 * std::numbers::pi, d);
    // \int_0^1 (1 - r^2) r^{d-1} dr = 2/(d(d+2)), times the sphere area d*omega_d
    c.L_d = 2.0 / (d + 2.0) * c.C_d;
    return c;
}

double phase_space_integral(int d, int power) {
    if (d < 1) throw DomainError("phase_space_integral: dimension must be at least 1");
    if (power != 0 && power != 1) throw DomainError("phase_space_integral: power must be 0 or 1");
    const QuadOptions tight{1e-15, 1e-14, 4000};

    // |S^{d-1}| * \int_0^inf r^{d-1} e^{-r^2} dr = pi^{d/2}
    const auto gauss_moment = integrate(
        [d](double r) { return std::pow(r, d - 1) * std::exp(-r * r); }, 0.0, 12.0, tight);
    const double sphere_area = std::pow(std::numbers::pi, 0.5 * d) / gauss_moment.value;

    const auto radial = integrate(
        [d, power](double r) {
            const double weight = power == 0 ? 1.0 : 1.0 - r * r;
            return weight * std::pow(r, d - 1);
        },
        0.0, 1.0, tight);
    return sphere_area * radial.value;
}

} // namespace weyl
