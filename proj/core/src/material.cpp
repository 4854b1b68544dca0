#include "weldsim/material.hpp"

#include <stdexcept>

namespace weldsim {

void MaterialParams::derive() {
    if (!(E > 0.0)) { throw std::invalid_argument("MaterialParams: E must be positive"); }
    if (!(nu < 0.5)) { throw std::invalid_argument("MaterialParams: nu must be < 0.5"); }
    if (!(nu > -1.0)) { throw std::invalid_argument("MaterialParams: nu must be > -1"); }
    mu = E / (2.0 * (1.0 + nu));
    lambda_lame = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    kappa = lambda_lame + 2.0 * mu / 3.0;
    gamma = 3.0 * alpha_T * kappa;
    // rho [kg/m^3] * c_rho [J/(kg K)] = rho*c_rho [J/(m^3 K)]
    //   = rho*c_rho [N/(m^2 K)] = rho*c_rho * 1e-6 [N/(mm^2 K)]
    c_vol = rho * c_rho * 1e-6;
}

MaterialParams default_material() {
    MaterialParams m;
    m.derive();
    return m;
}

} // namespace weldsim
