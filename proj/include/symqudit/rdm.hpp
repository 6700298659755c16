#pragma once

// Reduced density matrices of symmetric states and their entropies.
//
//   level RDM      (N+1)x(N+1), diagonal in the population of one level
//   one-particle   D x D,   entry (i, j) = <S_ji> / N
//   two-particle   D^2 x D^2, row (i, k) -> i*D + k, column (j, l) -> j*D + l,
//                  entry = (<S_ji S_lk> - delta_il <S_jk>) / (N (N-1))
//
// The one/two-particle matrices are built from a Moments table; the
// partial-trace oracle builds them independently from the full tensor space.

#include <Eigen/Dense>
#include <vector>

#include "symqudit/basis.hpp"
#include "symqudit/moments.hpp"
#include "symqudit/states.hpp"

namespace symqudit {

enum class EntropyKind { Level, OneAtom, TwoAtom };

struct EntropyReport {
    double purity = 1.0;
    double linear_entropy = 0.0;
    double von_neumann_entropy = 0.0;
};

class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}

    const Eigen::MatrixXcd& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    Complex trace() const { return m_.trace(); }
    double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
    /// tr(rho^2)
    double purity() const;
    /// Ascending eigenvalues of the Hermitian part.
    Eigen::VectorXd eigenvalues() const;

    /// Throws IntegrityError unless Hermitian and unit-trace within `tol`
    /// and free of eigenvalues below -1e-10.
    void validate(double tol = 1e-12) const;

private:
    Eigen::MatrixXcd m_;
};

/// Diagonal of the level-i RDM: entry p is the probability of n_i = p.
std::vector<double> level_populations(const SymmetricState& state, int level);
DensityMatrix level_rdm(const SymmetricState& state, int level);
/// sum_{n,m} |c_n|^2 |c_m|^2 delta_{n_i, m_i}
double level_purity(const SymmetricState& state, int level);

/// Closed-form DSCS level spectrum: element n is
/// lambda_n = C(N,n) x^{N-n} y^n / (x+y)^N, the weight on population N-n,
/// with x = |z_i|^2 and y = |z|^2 - |z_i|^2.
std::vector<double> dscs_level_spectrum(double x, double y, int n_particles);
double dscs_level_purity(double x, double y, int n_particles);

DensityMatrix one_qudit_rdm(const Moments& m);
DensityMatrix one_qudit_rdm(const SymmetricState& state);
/// Requires N >= 3.
DensityMatrix two_qudit_rdm(const Moments& m);

/// sum_ij |<S_ij>|^2 / N^2
double one_qudit_purity(const Moments& m);
/// Triple-sum closed form from the moment table. Requires N >= 3.
double two_qudit_purity(const Moments& m);
/// Closed forms specialized to the even cat state.
double dcat_one_qudit_purity(const PhasePoint& z, int n_particles);
double dcat_two_qudit_purity(const PhasePoint& z, int n_particles);

/// Normalized linear entropy of the given kind from a purity.
double linear_entropy(double purity, EntropyKind kind, int n_particles, int n_levels);

/// Purity, linear and von Neumann entropy (log base N+1, D or D^2),
/// normalized to [0, 1]. Eigenvalues below -1e-8 raise IntegrityError;
/// smaller excursions are clipped.
EntropyReport entropies(const DensityMatrix& rho, EntropyKind kind, int n_particles, int n_levels);

/// Builds the one- (keep = 1) or two-particle (keep = 2) RDM by embedding the
/// state in (C^D)^{tensor N} and tracing out the other particles directly.
/// Restricted to N <= 8 and D <= 3.
DensityMatrix partial_trace_oracle(const SymmetricState& state, int keep);

}  // namespace symqudit
