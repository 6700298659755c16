#pragma once

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "symqudit/basis.hpp"
#include "symqudit/states.hpp"

namespace testing {

using namespace symqudit;

inline SymmetricState random_state(BasisPtr basis, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    SymmetricState s(basis);
    for (auto& c : s.coeffs()) c = {g(rng), g(rng)};
    s.normalize();
    return s;
}

// Random state supported on n_2..n_D all even.
inline SymmetricState random_even_state(BasisPtr basis, std::mt19937_64& rng) {
    SymmetricState s = random_state(basis, rng);
    for (std::size_t k = 0; k < s.dim(); ++k) {
        auto occ = basis->occupation(k);
        for (int l = 1; l < basis->n_levels(); ++l)
            if (occ[static_cast<std::size_t>(l)] % 2) s[k] = 0.0;
    }
    s.normalize();
    return s;
}

inline PhasePoint random_point(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    PhasePoint z;
    for (int i = 0; i < d; ++i) z.z.emplace_back(g(rng), g(rng));
    return z;
}

// Dense S_ij from matrix_element over all basis pairs.
inline Eigen::MatrixXd dense_sij(const SymmetricBasis& b, OperatorIndex op) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            m(r, c) = matrix_element(b.occupation(static_cast<std::size_t>(r)),
                                     b.occupation(static_cast<std::size_t>(c)), op);
    return m;
}

inline Eigen::VectorXcd as_eigen(const SymmetricState& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t k = 0; k < s.dim(); ++k) v(static_cast<Eigen::Index>(k)) = s[k];
    return v;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// max_k |a_k - e^{i phi} b_k| with the phase chosen from <b|a>.
inline double ray_distance(const SymmetricState& a, const SymmetricState& b) {
    const Complex ov = b.inner(a);
    const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
    double dev = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) dev = std::max(dev, std::abs(a[k] - phase * b[k]));
    return dev;
}

}  // namespace testing
