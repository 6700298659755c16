#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path selected by Exec. Parallel reductions use a fixed block
// partition summed in block order, so parallel results never depend on the
// thread count. Element-wise kernels (apply_sij, matvec) match the serial
// path bitwise; blocked reductions match it to roundoff.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "symqudit/basis.hpp"

namespace symqudit::kernels {

enum class Exec { Serial, Parallel };

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

/// out = S_ij in. Serial scatters each input element to its single image;
/// Parallel gathers each output element from its single preimage.
void apply_sij(const SymmetricBasis& basis, std::span<const Complex> in, OperatorIndex op,
               std::span<Complex> out, Exec exec);

/// sum_k conj(a_k) b_k. Parallel splits into fixed-size blocks whose partial
/// sums are added in block order.
Complex inner(std::span<const Complex> a, std::span<const Complex> b, Exec exec);
double dot(std::span<const double> a, std::span<const double> b, Exec exec);

/// All D^2 images S_kl psi, stored contiguously at (k*D+l)*dim.
std::vector<Complex> apply_all(const SymmetricBasis& basis, std::span<const Complex> psi, Exec exec);

/// Compressed sparse row matrix (real).
struct CsrMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }
    double at(std::size_t r, std::size_t c) const;
};

/// y = A x
void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Exec exec);

}  // namespace symqudit::kernels
