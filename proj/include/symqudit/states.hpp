#pragma once

// Named symmetric states: U(D) spin coherent states (DSCS), their even-parity
// projections (DCAT), and the D-mode NOON generalization (NODON). Each comes
// as an explicit coefficient vector and, where a closed form exists, as a
// closed-form Moments table for cross-validation.

#include <vector>

#include "symqudit/basis.hpp"
#include "symqudit/moments.hpp"

namespace symqudit {

/// Label z = (z_1, ..., z_D) of a coherent state; z and q*z name the same ray.
struct PhasePoint {
    CVector z;

    int size() const { return static_cast<int>(z.size()); }
    double norm2() const;
    double norm() const;
    /// z / z_i, so that component i equals 1. Requires z_i != 0.
    PhasePoint representative(int i) const;
    /// The D = 3 chart (1, alpha, beta).
    static PhasePoint chart3(Complex alpha, Complex beta) { return {{1.0, alpha, beta}}; }
};

/// Bits (b_2, ..., b_D) selecting which of levels 2..D get a sign flip.
struct ParityString {
    std::vector<int> bits;

    /// All 2^(D-1) strings in binary counting order.
    static std::vector<ParityString> all(int n_levels);
    /// (-1)^{b_level} for a 0-based level; the reference level 0 has sign +1.
    int sign(int level) const { return level == 0 ? 1 : (bits[static_cast<std::size_t>(level - 1)] ? -1 : 1); }
    /// z^b = (z_1, (-1)^{b_2} z_2, ..., (-1)^{b_D} z_D)
    PhasePoint apply(const PhasePoint& z) const;
};

struct PhaseVector {
    std::vector<double> phases;
};

/// c_n(z) = sqrt(N! / prod n_i!) prod z_i^{n_i} / |z|^N, evaluated in log space.
SymmetricState dscs(BasisPtr basis, const PhasePoint& z);

/// <z'|z> = (z'.z)^N / (|z'|^N |z|^N) with z'.z = sum conj(z'_i) z_i.
Complex dscs_overlap(const PhasePoint& zp, const PhasePoint& z, int n_particles);

/// <z'|S_ij|z> = N conj(z'_i) z_j (z'.z)^{N-1} / (|z'|^N |z|^N).
Complex dscs_matrix_element(const PhasePoint& zp, const PhasePoint& z, int n_particles, OperatorIndex op);

/// Pi_j psi: c_n -> (-1)^{n_j} c_n (0-based level).
SymmetricState parity_apply(const SymmetricState& state, int level);

/// <psi|Pi_j|psi>
double parity_expval(const SymmetricState& state, int level);

struct Projection {
    SymmetricState state;  // unnormalized
    double norm2;          // squared norm of `state`
};

/// Keeps the components with n_2, ..., n_D all even. Throws EmptySectorError
/// when the squared norm of the result is below 1e-14.
Projection project_even(const SymmetricState& state);
/// 1 - Pi_even. Same empty-sector rule.
Projection project_odd(const SymmetricState& state);

/// Normalized Pi_even |z>. The squared norm before normalization is returned
/// through `norm2_out` when provided.
SymmetricState dcat(BasisPtr basis, const PhasePoint& z, double* norm2_out = nullptr);

/// Closed form 2^{1-D} sum_b (z^b.z)^N / |z|^{2N}.
double dcat_norm2(const PhasePoint& z, int n_particles);
/// Explicit D = 2 form: (1/2)[1 + ((1-|a|^2)/(1+|a|^2))^N].
double cat2_norm2(Complex alpha, int n_particles);
/// Explicit D = 3 form for z = (1, alpha, beta).
double cat3_norm2(Complex alpha, Complex beta, int n_particles);

Complex dcat_expval_sij(const PhasePoint& z, int n_particles, OperatorIndex op);
Complex dcat_expval_quadratic(const PhasePoint& z, int n_particles, OperatorIndex op1, OperatorIndex op2);

/// (1/sqrt(D)) sum_j e^{i phi_j} |N e_j>
SymmetricState nodon(BasisPtr basis, const PhaseVector& phases);

/// Closed-form moment tables.
Moments dscs_moments(const PhasePoint& z, int n_particles);
Moments dcat_moments(const PhasePoint& z, int n_particles);
/// Valid for N >= 3 (for N <= 2 the two-step operators connect distinct NODON
/// components and the closed form no longer applies).
Moments nodon_moments(int n_particles, int n_levels);

}  // namespace symqudit
