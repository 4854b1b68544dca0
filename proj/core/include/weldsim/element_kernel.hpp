#pragma once

#include <array>

#include "weldsim/material.hpp"

namespace weldsim {

/// Trilinear shape functions on the reference cube [-1,1]^3, corner
/// ordering matching HexMesh::elem_conn (VTK hexahedron).
/// Returns N_i(xi) and the reference gradients dN_i/dxi.
void shape_q1(const std::array<double, 3>& xi, std::array<double, 8>& n,
              std::array<std::array<double, 3>, 8>& grad);

/// Inputs of one element evaluation. Vectors are node-blocked:
/// u[3*a + d] is displacement component d of local corner a,
/// theta[a] the corner temperature. *_old holds the previous time level.
struct ElementInputs {
    std::array<std::array<double, 3>, 8> coords{};
    std::array<double, 24> u{};
    std::array<double, 24> u_old{};
    std::array<double, 8> theta{};
    std::array<double, 8> theta_old{};
};

/// Element tangent and residual, node-blocked 4-DoF layout
/// (u_x, u_y, u_z, theta per corner): local DoF = 4*a + c.
///
/// The tangent scatters by field into the four coupled blocks of the
/// monolithic system:
///   uu: int B_u^T C B_u
///   ut: -int B_u^T (gamma 1) N_t
///   tu: -(1/dt) int theta N_t^T (gamma 1)^T B_u   (theta at the current iterate)
///   tt: -int B_t^T lambda B_t - int N_t^T gamma tr[eps_dot] N_t
///       -(1/dt) int N_t^T c_vol N_t
/// with gamma = 3 alpha_T kappa and all rates replaced by backward-Euler
/// difference quotients. The residual is the negative weak-form residual,
/// so the Newton step solves K dd = R and the converged state has R = 0.
struct ElementKernelOutput {
    std::array<std::array<double, 32>, 32> ke{};
    std::array<double, 32> re{};
};

/// Evaluate tangent and residual with 2x2x2 Gauss quadrature.
/// Throws DegenerateElementError (element index -1; the assembler
/// annotates it) for non-positive Jacobian determinants.
ElementKernelOutput element_kernel(const ElementInputs& in, const MaterialParams& mat, double dt);

/// Tangent only.
std::array<std::array<double, 32>, 32> element_tangent(const ElementInputs& in,
                                                       const MaterialParams& mat, double dt);

/// Residual only.
std::array<double, 32> element_residual(const ElementInputs& in, const MaterialParams& mat,
                                        double dt);

} // namespace weldsim
