#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weldsim/csr_matrix.hpp"
#include "weldsim/decomposition.hpp"
#include "weldsim/gmres.hpp"
#include "weldsim/hex_mesh.hpp"
#include "weldsim/sparse_lu.hpp"

namespace weldsim {

enum class PrecKind { none, one_level, gdsw, egdsw };

std::string to_string(PrecKind kind);
PrecKind prec_kind_from_string(const std::string& s);

/// One-level additive Schwarz: exact solves on the overlapping subdomain
/// matrices K_i = R_i K R_i^T, prolongated and summed without weighting.
struct OneLevelAS {
    std::vector<std::vector<int>> restrictions;  ///< R_i as global DoF lists
    std::vector<LuFactors> factors;
};

/// Scratch buffers for preconditioner application; one per concurrent
/// caller (the factors themselves are immutable and shared).
struct SchwarzWorkspace {
    std::vector<std::vector<double>> local_r, local_z;
    std::vector<std::vector<double>> scratch;
    std::vector<double> coarse_in, coarse_out, apply_tmp;
};

/// Extract and factorize every K_i. Throws SingularMatrixError naming the
/// subdomain (a singular local matrix signals a floating subdomain, which
/// cannot occur after Dirichlet elimination plus the capacity term).
OneLevelAS build_one_level(const CsrMatrix& k, const HexMesh& mesh,
                           const DomainDecomposition& dd, int n_threads);

/// z = sum_i R_i^T K_i^{-1} R_i r. Local solves run in parallel; the
/// prolongation sums sequentially in subdomain order, so the result is
/// independent of the thread count.
void apply_one_level(const OneLevelAS& p, std::span<const double> r, std::span<double> z,
                     SchwarzWorkspace& ws, int n_threads);

/// Interface values Phi_Gamma: per interface component, four columns
/// (translations u_x, u_y, u_z and the constant temperature), value 1 at
/// the matching DoF of every unconstrained component node. Columns whose
/// DoFs are all constrained are dropped and logged.
struct CoarseColumnMeta {
    int component = 0;
    int kind = 0;  ///< 0..2 = u_x..u_z, 3 = theta
};

struct PhiGamma {
    std::vector<std::vector<std::pair<int, double>>> cols;  ///< sparse (dof, value)
    std::vector<CoarseColumnMeta> meta;
    std::vector<CoarseColumnMeta> dropped;
};

PhiGamma build_interface_values(const DomainDecomposition& dd, const DofMap& dofmap);

enum class CoarseMode { monolithic, economic };

/// GDSW coarse space: interface values extended into the subdomain
/// interiors by the discrete saddle point extension
///   [K_II K_IG; 0 I] [phi_I; phi_G] = [0; phi_G],
/// solved blockwise (K_II decouples over subdomain interiors). The
/// monolithic mode extends through the full K and zeroes the off-diagonal
/// field blocks afterwards; the economic mode extends through
/// blockdiag(K_uu, K_tt), which produces them zero by construction.
struct CoarseSpace {
    CoarseMode mode = CoarseMode::monolithic;
    std::vector<std::vector<std::pair<int, double>>> phi_cols;  ///< sorted (dof, value)
    std::vector<CoarseColumnMeta> meta;
    std::vector<CoarseColumnMeta> dropped;
    double extension_residual = 0.0;  ///< relative Frobenius residual of the solves
    LuFactors k0;                     ///< factorized Phi^T K Phi (dense)
    std::vector<double> k0_dense;     ///< raw coarse operator, row-major n_cols^2
    int n_dofs = 0;

    int n_cols() const { return static_cast<int>(phi_cols.size()); }
};

/// Extend Phi_Gamma into the interiors. k_csc is the CSC view (transpose)
/// of the assembled K with constraints eliminated.
CoarseSpace extend_basis(const CsrMatrix& k, const CsrMatrix& k_csc, const HexMesh& mesh,
                         const DomainDecomposition& dd, const DofMap& dofmap,
                         const PhiGamma& phi_gamma, CoarseMode mode, int n_threads);

/// Assemble and factorize K_0 = Phi^T K Phi (or the economic counterpart
/// with the field-block-diagonal K). Stored densely; desk-scale coarse
/// spaces stay small. Throws SingularMatrixError with the offending coarse
/// column on exact singularity.
void build_coarse_operator(CoarseSpace& coarse, const CsrMatrix& k_csc, int n_threads);

/// z = Phi K_0^{-1} Phi^T r + sum_i R_i^T K_i^{-1} R_i r.
void apply_two_level(const OneLevelAS& one_level, const CoarseSpace& coarse,
                     std::span<const double> r, std::span<double> z, SchwarzWorkspace& ws,
                     int n_threads);

/// Built preconditioner of any kind plus its application workspace factory.
struct SchwarzPreconditioner {
    PrecKind kind = PrecKind::none;
    OneLevelAS one_level;
    std::optional<CoarseSpace> coarse;
    int n_dofs = 0;

    SchwarzWorkspace make_workspace() const;
    /// Apply into z (no-op copy for PrecKind::none).
    void apply(std::span<const double> r, std::span<double> z, SchwarzWorkspace& ws,
               int n_threads) const;
    /// Bind as a GMRES right preconditioner; the returned operator borrows
    /// *this (the preconditioner must outlive it) and owns a workspace,
    /// so it must not be shared across threads.
    LinearOperator as_operator(int n_threads) const;

    /// Human-readable summary (coarse dimensions, drops) for run logs.
    std::string describe() const;
};

/// Owning variant of as_operator: the returned operator keeps the
/// preconditioner alive. PrecKind::none yields an empty operator
/// (identity for GMRES).
LinearOperator make_prec_operator(std::shared_ptr<const SchwarzPreconditioner> prec,
                                  int n_threads);

SchwarzPreconditioner build_schwarz(PrecKind kind, const CsrMatrix& k, const HexMesh& mesh,
                                    const DomainDecomposition& dd, const DofMap& dofmap,
                                    int n_threads);

} // namespace weldsim
