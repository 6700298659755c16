#pragma once

// Table of linear <S_ij> and quadratic <S_ij S_kl> collective expectation
// values. Everything downstream of a state (one/two-particle RDMs, purities,
// squeezing) is a function of this table, so closed-form tables for the named
// states can be swapped in for the state-vector one and compared.

#include <vector>

#include "symqudit/basis.hpp"
#include "symqudit/kernels.hpp"

namespace symqudit {

struct Moments {
    int n_particles = 0;
    int n_levels = 0;
    std::vector<Complex> linear;     // <S_ij> at i*D + j
    std::vector<Complex> quadratic;  // <S_ij S_kl> at ((i*D + j)*D + k)*D + l

    Moments() = default;
    Moments(int n_particles, int n_levels);

    Complex s(int i, int j) const { return linear[lin_index(i, j)]; }
    Complex ss(int i, int j, int k, int l) const { return quadratic[quad_index(i, j, k, l)]; }
    Complex& s(int i, int j) { return linear[lin_index(i, j)]; }
    Complex& ss(int i, int j, int k, int l) { return quadratic[quad_index(i, j, k, l)]; }

    /// Largest absolute entrywise difference over both tables.
    double max_deviation(const Moments& other) const;

private:
    std::size_t lin_index(int i, int j) const {
        return static_cast<std::size_t>(i * n_levels + j);
    }
    std::size_t quad_index(int i, int j, int k, int l) const {
        return static_cast<std::size_t>(((i * n_levels + j) * n_levels + k) * n_levels + l);
    }
};

/// State-vector moments of a normalized state.
Moments compute_moments(const SymmetricState& state, kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace symqudit
