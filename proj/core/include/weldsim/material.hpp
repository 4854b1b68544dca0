#pragma once

namespace weldsim {

/// Material parameters in the N-mm-s-K unit system.
///
/// Inputs use the customary units of material data sheets (E in N/mm^2,
/// rho in kg/m^3, c_rho in J/(kg K), conductivity in W/(m K)); the derived
/// quantities are converted so that all assembled integrals are consistent
/// in N, mm, s, K. The volumetric heat capacity rho*c_rho converts to
/// N/(mm^2 K); thermal conductivity in W/(m K) is numerically unchanged
/// in N/(s K).
struct MaterialParams {
    double E = 198000.0;        ///< Young's modulus, N/mm^2
    double nu = 0.276;          ///< Poisson ratio
    double alpha_T = 1.6e-5;    ///< linear thermal expansion, 1/K
    double rho = 7919.0;        ///< mass density, kg/m^3
    double c_rho = 468.0;       ///< specific heat capacity, J/(kg K)
    double lambda_cond = 14.4;  ///< heat conduction coefficient, W/(m K)
    double theta0 = 20.0;       ///< stress-free reference temperature, C

    // Derived (filled by derive()).
    double mu = 0.0;            ///< shear modulus, N/mm^2
    double lambda_lame = 0.0;   ///< first Lame parameter, N/mm^2
    double kappa = 0.0;         ///< bulk modulus lambda + 2 mu / 3, N/mm^2
    double gamma = 0.0;         ///< stress-temperature modulus 3 alpha_T kappa
    double c_vol = 0.0;         ///< volumetric heat capacity rho * c_rho, N/(mm^2 K)

    /// Compute the derived parameters. Throws std::invalid_argument for
    /// nu >= 0.5 or non-positive E.
    void derive();
};

/// Default parameters (austenitic chrome nickel steel at 20 C) with the
/// derived values filled in.
MaterialParams default_material();

} // namespace weldsim
