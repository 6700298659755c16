#pragma once

// Three-level Lipkin-Meshkov-Glick model
//
//   H = (eps/N)(S_33 - S_11) - lambda/(N(N-1)) sum_{i != j} S_ij^2
//
// on the symmetric sector of N qutrits: sparse assembly, exact ground state
// (restricted to the even parity sector by default), the mean-field energy
// surface with its closed-form phase diagram, and the parity-projected
// coherent state used as a variational ground state.

#include <optional>
#include <vector>

#include "symqudit/basis.hpp"
#include "symqudit/kernels.hpp"
#include "symqudit/states.hpp"

namespace symqudit::lmg {

struct LmgParams {
    double epsilon = 1.0;  // level splitting
    double lambda = 0.0;   // two-body coupling, same units
    int n_particles = 3;

    void validate() const;
};

enum class Phase { I, II, III };

const char* phase_name(Phase p);

struct StationaryPoint {
    double alpha0 = 0.0;
    double beta0 = 0.0;
    Phase phase = Phase::I;
};

enum class Sector { Even, Full };

struct SolverOptions {
    Sector sector = Sector::Even;
    /// Dense diagonalization up to this (sector) dimension, Lanczos above.
    std::size_t dense_limit = 4000;
    bool force_lanczos = false;
    double lanczos_tol = 1e-11;
    int lanczos_max_iter = 600;
    kernels::Exec exec = kernels::Exec::Parallel;
};

struct GroundStateResult {
    double energy = 0.0;
    SymmetricState state;
    /// <Pi_j> for every level j (0-based).
    std::vector<double> parity_signature;
};

struct Eigenpair {
    double value = 0.0;
    std::vector<double> vector;
};

/// Real symmetric H in the Fock basis of `basis` (which must have D = 3).
kernels::CsrMatrix build_hamiltonian(const SymmetricBasis& basis, const LmgParams& params);

/// Basis indices whose level populations n_2..n_D have the parities given by
/// `parities` (bit set = odd).
std::vector<std::size_t> parity_sector(const SymmetricBasis& basis, const ParityString& parities);

/// Principal submatrix on the given (sorted) indices.
kernels::CsrMatrix restrict_to(const kernels::CsrMatrix& h, const std::vector<std::size_t>& indices);

/// Lowest eigenpair; dense below options.dense_limit, Lanczos otherwise.
Eigenpair lowest_eigenpair(const kernels::CsrMatrix& h, const SolverOptions& options = {});
/// Lanczos with full reorthogonalization. Throws ConvergenceError.
Eigenpair lanczos_lowest(const kernels::CsrMatrix& h, double tol, int max_iter, kernels::Exec exec);

GroundStateResult ground_state(BasisPtr basis, const LmgParams& params, const SolverOptions& options = {});
GroundStateResult ground_state(const LmgParams& params, const SolverOptions& options = {});

/// Lowest energy within one parity sector.
double sector_ground_energy(const SymmetricBasis& basis, const LmgParams& params, const ParityString& parities,
                            const SolverOptions& options = {});

/// <psi|H|psi> for a normalized state.
double energy_expval(const kernels::CsrMatrix& h, const SymmetricState& state);

/// Thermodynamic-limit coherent-state energy at z = (1, alpha, beta).
double energy_surface(Complex alpha, Complex beta, const LmgParams& params);

Phase phase_of(const LmgParams& params);
StationaryPoint stationary_point(const LmgParams& params);

/// Ground-state energy density in the thermodynamic limit.
double thermo_energy(const LmgParams& params);
/// Individual branches and their analytic second derivatives in lambda,
/// evaluated regardless of which phase lambda belongs to.
double thermo_energy_branch(Phase branch, double epsilon, double lambda);
double thermo_energy_d2(Phase branch, double epsilon, double lambda);

/// Even cat state at the stationary point (1, alpha0, beta0).
SymmetricState variational_cat(BasisPtr basis, const LmgParams& params);

}  // namespace symqudit::lmg
