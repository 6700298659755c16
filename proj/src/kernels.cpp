#include "symqudit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symqudit::kernels {

namespace {

constexpr std::size_t kBlock = 512;

std::ptrdiff_t as_signed(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void apply_sij(const SymmetricBasis& basis, std::span<const Complex> in, OperatorIndex op,
               std::span<Complex> out, Exec exec) {
    const std::size_t dim = basis.dim();
    if (in.size() != dim || out.size() != dim) {
        throw std::invalid_argument("apply_sij: vector length does not match basis");
    }
    const auto i = static_cast<std::size_t>(op.i);
    const auto j = static_cast<std::size_t>(op.j);

    if (i == j) {
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < as_signed(dim); ++k) {
                const auto u = static_cast<std::size_t>(k);
                out[u] = in[u] * static_cast<double>(basis.occupation(u)[i]);
            }
        } else {
            for (std::size_t k = 0; k < dim; ++k) {
                out[k] = in[k] * static_cast<double>(basis.occupation(k)[i]);
            }
        }
        return;
    }

    if (exec == Exec::Serial) {
        std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
        for (std::size_t k = 0; k < dim; ++k) {
            const std::size_t target = basis.shifted(k, op.i, op.j);
            if (target == SymmetricBasis::npos) continue;
            const auto n = basis.occupation(k);
            out[target] += std::sqrt(static_cast<double>(n[i] + 1) * n[j]) * in[k];
        }
        return;
    }

    // Output m receives from m - e_i + e_j with weight sqrt(m_i (m_j + 1)).
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < as_signed(dim); ++k) {
        const auto u = static_cast<std::size_t>(k);
        const std::size_t source = basis.shifted(u, op.j, op.i);
        if (source == SymmetricBasis::npos) {
            out[u] = Complex{0.0, 0.0};
            continue;
        }
        const auto m = basis.occupation(u);
        out[u] = std::sqrt(static_cast<double>(m[i]) * (m[j] + 1)) * in[source];
    }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b, Exec exec) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
    const std::size_t n = a.size();
    if (exec == Exec::Serial || n <= kBlock) {
        Complex s{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) s += std::conj(a[k]) * b[k];
        return s;
    }
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<Complex> partial(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < as_signed(blocks); ++blk) {
        const std::size_t lo = static_cast<std::size_t>(blk) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        Complex s{0.0, 0.0};
        for (std::size_t k = lo; k < hi; ++k) s += std::conj(a[k]) * b[k];
        partial[static_cast<std::size_t>(blk)] = s;
    }
    Complex s{0.0, 0.0};
    for (const auto& p : partial) s += p;
    return s;
}

double dot(std::span<const double> a, std::span<const double> b, Exec exec) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    const std::size_t n = a.size();
    if (exec == Exec::Serial || n <= kBlock) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
        return s;
    }
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < as_signed(blocks); ++blk) {
        const std::size_t lo = static_cast<std::size_t>(blk) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += a[k] * b[k];
        partial[static_cast<std::size_t>(blk)] = s;
    }
    double s = 0.0;
    for (const double p : partial) s += p;
    return s;
}

std::vector<Complex> apply_all(const SymmetricBasis& basis, std::span<const Complex> psi, Exec exec) {
    const std::size_t dim = basis.dim();
    const int d = basis.n_levels();
    std::vector<Complex> images(static_cast<std::size_t>(d * d) * dim);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            const auto slot = static_cast<std::size_t>(k * d + l) * dim;
            apply_sij(basis, psi, {k, l}, std::span<Complex>(images).subspan(slot, dim), exec);
        }
    }
    return images;
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
    for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
        if (col[p] == c) return val[p];
    }
    return 0.0;
}

void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
    if (x.size() != a.cols || y.size() != a.rows) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    if (exec == Exec::Serial) {
        for (std::size_t r = 0; r < a.rows; ++r) {
            double s = 0.0;
            for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) s += a.val[p] * x[a.col[p]];
            y[r] = s;
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t rr = 0; rr < as_signed(a.rows); ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        double s = 0.0;
        for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) s += a.val[p] * x[a.col[p]];
        y[r] = s;
    }
}

}  // namespace symqudit::kernels
