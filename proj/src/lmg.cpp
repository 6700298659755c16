#include "symqudit/lmg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "symqudit/errors.hpp"

namespace symqudit::lmg {

namespace {

constexpr int kLevels = 3;

void fix_sign(std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (std::abs(v[k]) > std::abs(v[best]) + 1e-12) best = k;
    }
    if (v[best] < 0.0) {
        for (auto& x : v) x = -x;
    }
}

Eigenpair dense_lowest(const kernels::CsrMatrix& h) {
    const auto n = static_cast<Eigen::Index>(h.rows);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < h.rows; ++r) {
        for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p) {
            dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(h.col[p])) = h.val[p];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success) throw ConvergenceError("dense symmetric eigensolver failed");
    Eigenpair out;
    out.value = solver.eigenvalues()(0);
    out.vector.assign(solver.eigenvectors().col(0).data(), solver.eigenvectors().col(0).data() + n);
    return out;
}

}  // namespace

void LmgParams::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("LMG epsilon must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("LMG lambda must be non-negative");
    if (n_particles < 3) throw std::invalid_argument("LMG model requires N >= 3");
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::I:
            return "I";
        case Phase::II:
            return "II";
        case Phase::III:
            return "III";
    }
    return "?";
}

kernels::CsrMatrix build_hamiltonian(const SymmetricBasis& basis, const LmgParams& params) {
    params.validate();
    if (basis.n_levels() != kLevels) throw std::invalid_argument("LMG Hamiltonian is defined for D = 3");
    if (basis.n_particles() != params.n_particles) throw std::invalid_argument("basis N differs from LMG N");

    const double n = params.n_particles;
    const double one_body = params.epsilon / n;
    const double two_body = -params.lambda / (n * (n - 1.0));

    kernels::CsrMatrix h;
    h.rows = h.cols = basis.dim();
    h.row_ptr.reserve(basis.dim() + 1);
    h.row_ptr.push_back(0);
    std::vector<std::pair<std::uint32_t, double>> row;
    for (std::size_t m = 0; m < basis.dim(); ++m) {
        const auto occ = basis.occupation(m);
        row.clear();
        row.emplace_back(static_cast<std::uint32_t>(m), one_body * (occ[2] - occ[0]));
        if (params.lambda != 0.0) {
            for (int i = 0; i < kLevels; ++i) {
                for (int j = 0; j < kLevels; ++j) {
                    if (i == j) continue;
                    // <m|S_ij^2|n> with n = m - 2e_i + 2e_j.
                    const std::size_t source = basis.shifted(m, j, i, 2);
                    if (source == SymmetricBasis::npos) continue;
                    const double mi = occ[static_cast<std::size_t>(i)];
                    const double mj = occ[static_cast<std::size_t>(j)];
                    row.emplace_back(static_cast<std::uint32_t>(source),
                                     two_body * std::sqrt(mi * (mi - 1.0) * (mj + 1.0) * (mj + 2.0)));
                }
            }
        }
        std::sort(row.begin(), row.end());
        for (const auto& [c, v] : row) {
            h.col.push_back(c);
            h.val.push_back(v);
        }
        h.row_ptr.push_back(h.col.size());
    }
    return h;
}

std::vector<std::size_t> parity_sector(const SymmetricBasis& basis, const ParityString& parities) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const auto occ = basis.occupation(k);
        bool match = true;
        for (int l = 1; l < basis.n_levels() && match; ++l) {
            match = (occ[static_cast<std::size_t>(l)] % 2) == parities.bits[static_cast<std::size_t>(l - 1)];
        }
        if (match) out.push_back(k);
    }
    return out;
}

kernels::CsrMatrix restrict_to(const kernels::CsrMatrix& h, const std::vector<std::size_t>& indices) {
    std::vector<std::int64_t> local(h.cols, -1);
    for (std::size_t k = 0; k < indices.size(); ++k) local[indices[k]] = static_cast<std::int64_t>(k);
    kernels::CsrMatrix out;
    out.rows = out.cols = indices.size();
    out.row_ptr.push_back(0);
    for (const std::size_t r : indices) {
        for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p) {
            const std::int64_t c = local[h.col[p]];
            if (c < 0) continue;
            out.col.push_back(static_cast<std::uint32_t>(c));
            out.val.push_back(h.val[p]);
        }
        out.row_ptr.push_back(out.col.size());
    }
    return out;
}

Eigenpair lanczos_lowest(const kernels::CsrMatrix& h, double tol, int max_iter, kernels::Exec exec) {
    const std::size_t n = h.rows;
    if (n == 0) throw std::invalid_argument("lanczos on an empty matrix");
    const int steps_cap = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(max_iter)));

    std::vector<std::vector<double>> q;
    std::vector<double> alpha;
    std::vector<double> beta;

    // Deterministic dense start vector.
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = 1.0 + 0.25 * std::sin(static_cast<double>(k) + 1.0);
    const double v0 = std::sqrt(kernels::dot(v, v, exec));
    for (auto& x : v) x /= v0;
    q.push_back(v);

    std::vector<double> w(n);
    double theta = 0.0;
    Eigen::VectorXd ritz;
    for (int step = 0; step < steps_cap; ++step) {
        kernels::matvec(h, q.back(), w, exec);
        const double a = kernels::dot(q.back(), w, exec);
        alpha.push_back(a);
        // Two rounds of classical Gram-Schmidt against the whole basis.
        for (int round = 0; round < 2; ++round) {
            for (const auto& qj : q) {
                const double c = kernels::dot(qj, w, exec);
                for (std::size_t k = 0; k < n; ++k) w[k] -= c * qj[k];
            }
        }
        const double b = std::sqrt(kernels::dot(w, w, exec));

        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index k = 0; k < m; ++k) {
            t(k, k) = alpha[static_cast<std::size_t>(k)];
            if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[static_cast<std::size_t>(k)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
        theta = tri.eigenvalues()(0);
        ritz = tri.eigenvectors().col(0);
        const double residual = std::abs(b * ritz(m - 1));
        if (residual <= tol * std::max(1.0, std::abs(theta)) || b < 1e-14 || m == static_cast<Eigen::Index>(n)) {
            Eigenpair out;
            out.value = theta;
            out.vector.assign(n, 0.0);
            for (Eigen::Index k = 0; k < m; ++k) {
                const auto& qk = q[static_cast<std::size_t>(k)];
                for (std::size_t r = 0; r < n; ++r) out.vector[r] += ritz(k) * qk[r];
            }
            const double norm = std::sqrt(kernels::dot(out.vector, out.vector, exec));
            for (auto& x : out.vector) x /= norm;
            return out;
        }
        beta.push_back(b);
        for (auto& x : w) x /= b;
        q.push_back(w);
    }
    throw ConvergenceError("Lanczos did not converge within " + std::to_string(steps_cap) + " iterations");
}

Eigenpair lowest_eigenpair(const kernels::CsrMatrix& h, const SolverOptions& options) {
    Eigenpair pair = (!options.force_lanczos && h.rows <= options.dense_limit)
                         ? dense_lowest(h)
                         : lanczos_lowest(h, options.lanczos_tol, options.lanczos_max_iter, options.exec);
    fix_sign(pair.vector);
    return pair;
}

GroundStateResult ground_state(BasisPtr basis, const LmgParams& params, const SolverOptions& options) {
    const kernels::CsrMatrix h = build_hamiltonian(*basis, params);
    std::vector<std::size_t> indices;
    if (options.sector == Sector::Even) {
        indices = parity_sector(*basis, ParityString{std::vector<int>(kLevels - 1, 0)});
    } else {
        indices.resize(basis->dim());
        for (std::size_t k = 0; k < indices.size(); ++k) indices[k] = k;
    }
    const Eigenpair pair = lowest_eigenpair(restrict_to(h, indices), options);

    SymmetricState state(basis);
    for (std::size_t k = 0; k < indices.size(); ++k) state[indices[k]] = pair.vector[k];
    state.normalize();
    std::vector<double> signature;
    for (int j = 0; j < kLevels; ++j) signature.push_back(parity_expval(state, j));
    return GroundStateResult{pair.value, std::move(state), std::move(signature)};
}

GroundStateResult ground_state(const LmgParams& params, const SolverOptions& options) {
    params.validate();
    return ground_state(make_basis(params.n_particles, kLevels), params, options);
}

double sector_ground_energy(const SymmetricBasis& basis, const LmgParams& params, const ParityString& parities,
                            const SolverOptions& options) {
    const auto indices = parity_sector(basis, parities);
    if (indices.empty()) throw EmptySectorError("parity sector is empty");
    return lowest_eigenpair(restrict_to(build_hamiltonian(basis, params), indices), options).value;
}

double energy_expval(const kernels::CsrMatrix& h, const SymmetricState& state) {
    Complex s{0.0, 0.0};
    for (std::size_t r = 0; r < h.rows; ++r) {
        Complex hr{0.0, 0.0};
        for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p) hr += h.val[p] * state[h.col[p]];
        s += std::conj(state[r]) * hr;
    }
    return s.real();
}

double energy_surface(Complex alpha, Complex beta, const LmgParams& params) {
    const Complex ab = alpha * std::conj(alpha);
    const Complex bb = beta * std::conj(beta);
    const Complex den = ab + bb + 1.0;
    const Complex cb = std::conj(beta);
    const Complex ca = std::conj(alpha);
    const Complex num = alpha * alpha * (cb * cb + 1.0) + (beta * beta + 1.0) * ca * ca + cb * cb + beta * beta;
    const Complex e = params.epsilon * (bb - 1.0) / den - params.lambda * num / (den * den);
    return e.real();
}

Phase phase_of(const LmgParams& params) {
    if (params.lambda <= params.epsilon / 2.0) return Phase::I;
    if (params.lambda <= 1.5 * params.epsilon) return Phase::II;
    return Phase::III;
}

StationaryPoint stationary_point(const LmgParams& params) {
    const double e = params.epsilon;
    const double l = params.lambda;
    StationaryPoint sp;
    sp.phase = phase_of(params);
    switch (sp.phase) {
        case Phase::I:
            break;
        case Phase::II:
            sp.alpha0 = std::sqrt((2.0 * l - e) / (2.0 * l + e));
            break;
        case Phase::III:
            sp.alpha0 = std::sqrt(2.0 * l / (2.0 * l + 3.0 * e));
            sp.beta0 = std::sqrt((2.0 * l - 3.0 * e) / (2.0 * l + 3.0 * e));
            break;
    }
    return sp;
}

double thermo_energy_branch(Phase branch, double epsilon, double lambda) {
    switch (branch) {
        case Phase::I:
            return -epsilon;
        case Phase::II:
            return -(2.0 * lambda + epsilon) * (2.0 * lambda + epsilon) / (8.0 * lambda);
        case Phase::III:
            return -(4.0 * lambda * lambda + 3.0 * epsilon * epsilon) / (6.0 * lambda);
    }
    return 0.0;
}

double thermo_energy_d2(Phase branch, double epsilon, double lambda) {
    // II: -lambda/2 - eps/2 - eps^2/(8 lambda);  III: -2 lambda/3 - eps^2/(2 lambda)
    const double l3 = lambda * lambda * lambda;
    switch (branch) {
        case Phase::I:
            return 0.0;
        case Phase::II:
            return -epsilon * epsilon / (4.0 * l3);
        case Phase::III:
            return -epsilon * epsilon / l3;
    }
    return 0.0;
}

double thermo_energy(const LmgParams& params) {
    return thermo_energy_branch(phase_of(params), params.epsilon, params.lambda);
}

SymmetricState variational_cat(BasisPtr basis, const LmgParams& params) {
    if (basis->n_levels() != kLevels) throw std::invalid_argument("variational cat is defined for D = 3");
    const StationaryPoint sp = stationary_point(params);
    return dcat(std::move(basis), PhasePoint::chart3(sp.alpha0, sp.beta0));
}

}  // namespace symqudit::lmg
