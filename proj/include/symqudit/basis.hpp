#pragma once

// Fully symmetric (bosonic) Fock basis of N identical D-level particles and
// the collective U(D) operators S_ij = a_i^dagger a_j acting on it.
//
// Level indices: the physics convention labels levels 1..D. Every C++ API in
// this library takes 0-based level indices, so S_12 is OperatorIndex{0, 1}.
// Human-facing output (CLI tables, column names) uses the 1-based labels.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace symqudit {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Number of occupations of N particles over D levels, C(N+D-1, D-1).
/// Throws CapacityError when the value does not fit in 64 bits.
std::uint64_t dimension(int n_particles, int n_levels);

/// Checked binomial coefficient C(n, k); CapacityError on 64-bit overflow.
std::uint64_t binomial(int n, int k);

struct Occupation {
    std::vector<int> counts;

    int total() const;
    bool operator==(const Occupation&) const = default;
};

/// Label (i, j) of S_ij, 0-based.
struct OperatorIndex {
    int i = 0;
    int j = 0;

    OperatorIndex adjoint() const { return {j, i}; }
    bool operator==(const OperatorIndex&) const = default;
};

/// All occupations in descending lexicographic order of (n_1, ..., n_D).
std::vector<Occupation> enumerate(int n_particles, int n_levels);

/// Ranked enumeration of the symmetric sector. Immutable after construction.
///
/// Ordering is descending lexicographic, so |N,0,...,0> has rank 0 and
/// |0,...,0,N> has rank dim-1. rank/unrank are O(D) and O(D*N) closed-form
/// combinatorial maps; `occupation(index)` reads a precomputed table.
class SymmetricBasis {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    /// Bases larger than this are refused (eigensolver and index-width bound).
    static constexpr std::uint64_t max_dim = 0xFFFFFFFFull;

    SymmetricBasis(int n_particles, int n_levels);

    int n_particles() const { return n_particles_; }
    int n_levels() const { return n_levels_; }
    std::size_t dim() const { return dim_; }

    /// Throws std::invalid_argument for a wrong length, negative entry or
    /// wrong total.
    std::size_t rank(std::span<const int> counts) const;
    std::size_t rank(const Occupation& occ) const { return rank(occ.counts); }

    /// Combinatorial inverse of rank (does not read the table).
    Occupation unrank(std::size_t index) const;

    /// Table lookup; index must be < dim().
    std::span<const int> occupation(std::size_t index) const {
        return {table_.data() + index * static_cast<std::size_t>(n_levels_),
                static_cast<std::size_t>(n_levels_)};
    }

    /// Rank of the occupation obtained from basis element `index` by moving
    /// `amount` particles from level `from` to level `to`; npos when level
    /// `from` holds fewer than `amount` particles.
    std::size_t shifted(std::size_t index, int to, int from, int amount = 1) const;

private:
    std::uint64_t choose(int n, int k) const {
        return binom_[static_cast<std::size_t>(n) * static_cast<std::size_t>(n_levels_ + 1) +
                      static_cast<std::size_t>(k)];
    }
    template <typename Entry>
    std::size_t rank_impl(Entry entry) const;

    int n_particles_;
    int n_levels_;
    std::size_t dim_;
    std::vector<std::uint64_t> binom_;
    std::vector<int> table_;
};

using BasisPtr = std::shared_ptr<const SymmetricBasis>;

inline BasisPtr make_basis(int n_particles, int n_levels) {
    return std::make_shared<const SymmetricBasis>(n_particles, n_levels);
}

/// Coefficient vector c_n over a shared basis.
class SymmetricState {
public:
    explicit SymmetricState(BasisPtr basis);
    SymmetricState(BasisPtr basis, CVector coeffs);

    static SymmetricState basis_ket(BasisPtr basis, const Occupation& occ);

    const SymmetricBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    std::size_t dim() const { return coeffs_.size(); }

    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_[k]; }
    Complex& operator[](std::size_t k) { return coeffs_[k]; }

    double norm2() const;
    /// Rescales to unit norm and returns the norm before rescaling.
    /// Throws std::domain_error for the zero vector.
    double normalize();

    /// <this|other>
    Complex inner(const SymmetricState& other) const;

private:
    BasisPtr basis_;
    CVector coeffs_;
};

/// <m|S_ij|n>.
double matrix_element(std::span<const int> m, std::span<const int> n, OperatorIndex op);
inline double matrix_element(const Occupation& m, const Occupation& n, OperatorIndex op) {
    return matrix_element(std::span<const int>(m.counts), std::span<const int>(n.counts), op);
}

/// S_ij |psi>, unnormalized.
SymmetricState apply_sij(const SymmetricState& state, OperatorIndex op);

/// <psi|S_ij|psi> from the closed sums over the coefficients.
Complex expval_sij(const SymmetricState& state, OperatorIndex op);

/// <psi|S_ij S_kl|psi> = <S_ji psi | S_kl psi>.
Complex expval_sij_skl(const SymmetricState& state, OperatorIndex op1, OperatorIndex op2);

}  // namespace symqudit
