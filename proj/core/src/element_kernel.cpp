#include "weldsim/element_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "weldsim/errors.hpp"

namespace weldsim {

namespace {

// Reference corner signs in the VTK hexahedron ordering.
constexpr std::array<std::array<double, 3>, 8> kCorner = {{
    {-1.0, -1.0, -1.0},
    {+1.0, -1.0, -1.0},
    {+1.0, +1.0, -1.0},
    {-1.0, +1.0, -1.0},
    {-1.0, -1.0, +1.0},
    {+1.0, -1.0, +1.0},
    {+1.0, +1.0, +1.0},
    {-1.0, +1.0, +1.0},
}};

constexpr double kGauss = 0.57735026918962576451;  // 1/sqrt(3)

struct GaussData {
    std::array<double, 8> n;
    std::array<std::array<double, 3>, 8> grad;  // spatial gradients
    double weight;                              // w * detJ
};

} // namespace

void shape_q1(const std::array<double, 3>& xi, std::array<double, 8>& n,
              std::array<std::array<double, 3>, 8>& grad) {
    for (int a = 0; a < 8; ++a) {
        const double sx = kCorner[static_cast<std::size_t>(a)][0];
        const double sy = kCorner[static_cast<std::size_t>(a)][1];
        const double sz = kCorner[static_cast<std::size_t>(a)][2];
        const double fx = 1.0 + sx * xi[0];
        const double fy = 1.0 + sy * xi[1];
        const double fz = 1.0 + sz * xi[2];
        n[static_cast<std::size_t>(a)] = 0.125 * fx * fy * fz;
        grad[static_cast<std::size_t>(a)] = {0.125 * sx * fy * fz, 0.125 * fx * sy * fz,
                                             0.125 * fx * fy * sz};
    }
}

ElementKernelOutput element_kernel(const ElementInputs& in, const MaterialParams& mat, double dt) {
    if (!(dt > 0.0)) { throw std::invalid_argument("element_kernel: dt must be positive"); }

    ElementKernelOutput out;
    const double lam = mat.lambda_lame;
    const double mu = mat.mu;
    const double gamma = mat.gamma;
    const double lc = mat.lambda_cond;
    const double cv = mat.c_vol;
    const double inv_dt = 1.0 / dt;

    std::array<double, 8> n;
    std::array<std::array<double, 3>, 8> gref;

    for (int gp = 0; gp < 8; ++gp) {
        const std::array<double, 3> xi = {kGauss * kCorner[static_cast<std::size_t>(gp)][0],
                                          kGauss * kCorner[static_cast<std::size_t>(gp)][1],
                                          kGauss * kCorner[static_cast<std::size_t>(gp)][2]};
        shape_q1(xi, n, gref);

        // Jacobian J_ab = d x_a / d xi_b and spatial gradients.
        double jac[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (int a = 0; a < 8; ++a) {
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    jac[r][c] += in.coords[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] *
                                 gref[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
                }
            }
        }
        const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                           jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                           jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
        if (!(det > 0.0)) {
            throw DegenerateElementError(-1, "element_kernel: non-positive Jacobian determinant");
        }
        const double inv_det = 1.0 / det;
        double jinv[3][3];
        jinv[0][0] = (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) * inv_det;
        jinv[0][1] = (jac[0][2] * jac[2][1] - jac[0][1] * jac[2][2]) * inv_det;
        jinv[0][2] = (jac[0][1] * jac[1][2] - jac[0][2] * jac[1][1]) * inv_det;
        jinv[1][0] = (jac[1][2] * jac[2][0] - jac[1][0] * jac[2][2]) * inv_det;
        jinv[1][1] = (jac[0][0] * jac[2][2] - jac[0][2] * jac[2][0]) * inv_det;
        jinv[1][2] = (jac[0][2] * jac[1][0] - jac[0][0] * jac[1][2]) * inv_det;
        jinv[2][0] = (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]) * inv_det;
        jinv[2][1] = (jac[0][1] * jac[2][0] - jac[0][0] * jac[2][1]) * inv_det;
        jinv[2][2] = (jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]) * inv_det;

        GaussData g;
        g.n = n;
        g.weight = det;  // all 2x2x2 Gauss weights are 1
        for (int a = 0; a < 8; ++a) {
            for (int r = 0; r < 3; ++r) {
                // spatial gradient = J^{-T} * reference gradient
                g.grad[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] =
                    jinv[0][r] * gref[static_cast<std::size_t>(a)][0] +
                    jinv[1][r] * gref[static_cast<std::size_t>(a)][1] +
                    jinv[2][r] * gref[static_cast<std::size_t>(a)][2];
            }
        }

        // Field values at the Gauss point: theta, grad theta, the small
        // strain eps_rc = 1/2 (du_r/dx_c + du_c/dx_r), and tr(eps_old).
        double theta = 0.0, theta_old = 0.0;
        double grad_theta[3] = {0, 0, 0};
        double eps[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double tr_eps_old = 0.0;
        for (int a = 0; a < 8; ++a) {
            const double na = g.n[static_cast<std::size_t>(a)];
            theta += na * in.theta[static_cast<std::size_t>(a)];
            theta_old += na * in.theta_old[static_cast<std::size_t>(a)];
            for (int r = 0; r < 3; ++r) {
                const double gr = g.grad[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)];
                grad_theta[r] += gr * in.theta[static_cast<std::size_t>(a)];
                const double ur = in.u[static_cast<std::size_t>(3 * a + r)];
                for (int c = 0; c < 3; ++c) {
                    const double gc = g.grad[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
                    eps[r][c] += 0.5 * gc * ur;
                    eps[c][r] += 0.5 * gc * ur;
                }
                tr_eps_old += gr * in.u_old[static_cast<std::size_t>(3 * a + r)];
            }
        }
        const double tr_eps = eps[0][0] + eps[1][1] + eps[2][2];
        const double tr_eps_dot = (tr_eps - tr_eps_old) * inv_dt;
        const double theta_dot = (theta - theta_old) * inv_dt;

        // Stress sigma = lambda tr(eps) 1 + 2 mu eps - gamma (theta - theta0) 1.
        double sigma[3][3];
        const double vol_stress = lam * tr_eps - gamma * (theta - mat.theta0);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                sigma[r][c] = 2.0 * mu * eps[r][c] + (r == c ? vol_stress : 0.0);
            }
        }

        const double w = g.weight;
        for (int a = 0; a < 8; ++a) {
            const double na = g.n[static_cast<std::size_t>(a)];
            const auto& ga = g.grad[static_cast<std::size_t>(a)];

            // Residual rows (R = -G, weak residual G).
            for (int r = 0; r < 3; ++r) {
                double s = 0.0;
                for (int c = 0; c < 3; ++c) { s += sigma[r][c] * ga[static_cast<std::size_t>(c)]; }
                out.re[static_cast<std::size_t>(4 * a + r)] -= w * s;
            }
            {
                double cond = 0.0;
                for (int c = 0; c < 3; ++c) {
                    cond += ga[static_cast<std::size_t>(c)] * grad_theta[c];
                }
                out.re[static_cast<std::size_t>(4 * a + 3)] +=
                    w * (lc * cond + na * (gamma * tr_eps_dot * theta + cv * theta_dot));
            }

            for (int b = 0; b < 8; ++b) {
                const double nb = g.n[static_cast<std::size_t>(b)];
                const auto& gb = g.grad[static_cast<std::size_t>(b)];
                const double gab =
                    ga[0] * gb[0] + ga[1] * gb[1] + ga[2] * gb[2];

                // uu block.
                for (int r = 0; r < 3; ++r) {
                    for (int c = 0; c < 3; ++c) {
                        double v = lam * ga[static_cast<std::size_t>(r)] *
                                       gb[static_cast<std::size_t>(c)] +
                                   mu * gb[static_cast<std::size_t>(r)] *
                                       ga[static_cast<std::size_t>(c)];
                        if (r == c) { v += mu * gab; }
                        out.ke[static_cast<std::size_t>(4 * a + r)]
                              [static_cast<std::size_t>(4 * b + c)] += w * v;
                    }
                }
                // ut block: -gamma B_u^T 1 N_t.
                for (int r = 0; r < 3; ++r) {
                    out.ke[static_cast<std::size_t>(4 * a + r)][static_cast<std::size_t>(4 * b + 3)] -=
                        w * gamma * ga[static_cast<std::size_t>(r)] * nb;
                }
                // tu block: -(theta/dt) gamma N_t 1^T B_u.
                for (int c = 0; c < 3; ++c) {
                    out.ke[static_cast<std::size_t>(4 * a + 3)][static_cast<std::size_t>(4 * b + c)] -=
                        w * inv_dt * theta * gamma * na * gb[static_cast<std::size_t>(c)];
                }
                // tt block: conduction + coupling + capacity, all negative.
                out.ke[static_cast<std::size_t>(4 * a + 3)][static_cast<std::size_t>(4 * b + 3)] -=
                    w * (lc * gab + gamma * tr_eps_dot * na * nb + cv * inv_dt * na * nb);
            }
        }
    }
    return out;
}

std::array<std::array<double, 32>, 32> element_tangent(const ElementInputs& in,
                                                       const MaterialParams& mat, double dt) {
    return element_kernel(in, mat, dt).ke;
}

std::array<double, 32> element_residual(const ElementInputs& in, const MaterialParams& mat,
                                        double dt) {
    return element_kernel(in, mat, dt).re;
}

} // namespace weldsim
