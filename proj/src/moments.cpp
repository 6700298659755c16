#include "symqudit/moments.hpp"

#include <algorithm>
#include <cmath>

namespace symqudit {

Moments::Moments(int n_particles, int n_levels)
    : n_particles(n_particles),
      n_levels(n_levels),
      linear(static_cast<std::size_t>(n_levels * n_levels)),
      quadratic(static_cast<std::size_t>(n_levels * n_levels * n_levels * n_levels)) {}

double Moments::max_deviation(const Moments& other) const {
    double dev = 0.0;
    for (std::size_t k = 0; k < linear.size(); ++k) dev = std::max(dev, std::abs(linear[k] - other.linear[k]));
    for (std::size_t k = 0; k < quadratic.size(); ++k) {
        dev = std::max(dev, std::abs(quadratic[k] - other.quadratic[k]));
    }
    return dev;
}

Moments compute_moments(const SymmetricState& state, kernels::Exec exec) {
    const auto& basis = state.basis();
    const int d = basis.n_levels();
    const std::size_t dim = basis.dim();
    Moments m(basis.n_particles(), d);

    const std::vector<Complex> images = kernels::apply_all(basis, state.coeffs(), exec);
    const std::span<const Complex> all(images);
    auto image = [&](int i, int j) { return all.subspan(static_cast<std::size_t>(i * d + j) * dim, dim); };

    const int pairs = d * d;
    for (int p = 0; p < pairs; ++p) {
        m.linear[static_cast<std::size_t>(p)] =
            kernels::inner(state.coeffs(), image(p / d, p % d), kernels::Exec::Serial);
    }

    // <S_ij S_kl> = <S_ji psi | S_kl psi>; one serial inner product per entry
    // keeps the table independent of the thread count.
    const int entries = pairs * pairs;
    auto fill = [&](int e) {
        const int left = e / pairs;
        const int right = e % pairs;
        const int i = left / d;
        const int j = left % d;
        m.quadratic[static_cast<std::size_t>(e)] =
            kernels::inner(image(j, i), image(right / d, right % d), kernels::Exec::Serial);
    };
    if (exec == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int e = 0; e < entries; ++e) fill(e);
    } else {
        for (int e = 0; e < entries; ++e) fill(e);
    }
    return m;
}

}  // namespace symqudit
