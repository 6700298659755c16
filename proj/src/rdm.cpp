#include "symqudit/rdm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "symqudit/errors.hpp"

namespace symqudit {

namespace {

constexpr double kClip = 1e-10;
constexpr double kNegativeFail = 1e-8;

double clamp_unit(double v, const char* what) {
    if (v < -kClip || v > 1.0 + kClip) {
        throw IntegrityError(std::string(what) + " outside [0, 1]: " + std::to_string(v));
    }
    return std::clamp(v, 0.0, 1.0);
}

void require_two_particle(int n) {
    if (n <= 2) throw std::invalid_argument("two-particle RDM requires N >= 3");
}

}  // namespace

double DensityMatrix::purity() const { return (m_.adjoint() * m_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    const Eigen::MatrixXcd herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

void DensityMatrix::validate(double tol) const {
    if (hermiticity_error() > tol) throw IntegrityError("density matrix is not Hermitian");
    if (std::abs(trace() - Complex{1.0, 0.0}) > tol) throw IntegrityError("density matrix trace differs from 1");
    if (eigenvalues().minCoeff() < -kClip) throw IntegrityError("density matrix has a negative eigenvalue");
}

std::vector<double> level_populations(const SymmetricState& state, int level) {
    const auto& basis = state.basis();
    std::vector<double> pop(static_cast<std::size_t>(basis.n_particles() + 1), 0.0);
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        pop[static_cast<std::size_t>(basis.occupation(k)[static_cast<std::size_t>(level)])] += std::norm(state[k]);
    }
    return pop;
}

DensityMatrix level_rdm(const SymmetricState& state, int level) {
    const auto pop = level_populations(state, level);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(pop.size()),
                                                static_cast<Eigen::Index>(pop.size()));
    for (std::size_t p = 0; p < pop.size(); ++p) m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = pop[p];
    return DensityMatrix(std::move(m));
}

double level_purity(const SymmetricState& state, int level) {
    double s = 0.0;
    for (const double p : level_populations(state, level)) s += p * p;
    return s;
}

std::vector<double> dscs_level_spectrum(double x, double y, int n_particles) {
    const int n = n_particles;
    std::vector<double> lambda(static_cast<std::size_t>(n + 1), 0.0);
    const double total = x + y;
    if (total <= 0.0) throw std::invalid_argument("dscs_level_spectrum: x + y must be positive");
    const double px = x / total;
    const double py = y / total;
    const double log_nfact = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
        // Endpoints handled exactly so that x = 0 or y = 0 gives a pure spectrum.
        if ((px == 0.0 && k < n) || (py == 0.0 && k > 0)) continue;
        double log_l = log_nfact - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        if (n - k > 0) log_l += (n - k) * std::log(px);
        if (k > 0) log_l += k * std::log(py);
        lambda[static_cast<std::size_t>(k)] = std::exp(log_l);
    }
    return lambda;
}

double dscs_level_purity(double x, double y, int n_particles) {
    double s = 0.0;
    for (const double l : dscs_level_spectrum(x, y, n_particles)) s += l * l;
    return s;
}

DensityMatrix one_qudit_rdm(const Moments& m) {
    const int d = m.n_levels;
    Eigen::MatrixXcd rho(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) rho(i, j) = m.s(j, i) / static_cast<double>(m.n_particles);
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix one_qudit_rdm(const SymmetricState& state) {
    const int d = state.basis().n_levels();
    Moments m(state.basis().n_particles(), d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m.s(i, j) = expval_sij(state, {i, j});
    }
    return one_qudit_rdm(m);
}

DensityMatrix two_qudit_rdm(const Moments& m) {
    require_two_particle(m.n_particles);
    const int d = m.n_levels;
    const double pairs = static_cast<double>(m.n_particles) * (m.n_particles - 1);
    Eigen::MatrixXcd rho(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    Complex v = m.ss(j, i, l, k);
                    if (i == l) v -= m.s(j, k);
                    rho(i * d + k, j * d + l) = v / pairs;
                }
            }
        }
    }
    // Roundoff only: the exact matrix is Hermitian.
    Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(std::move(herm));
}

double one_qudit_purity(const Moments& m) {
    double s = 0.0;
    for (const auto& v : m.linear) s += std::norm(v);
    const double n = m.n_particles;
    return s / (n * n);
}

double two_qudit_purity(const Moments& m) {
    require_two_particle(m.n_particles);
    const int d = m.n_levels;
    Complex quad{0.0, 0.0};
    Complex cross{0.0, 0.0};
    Complex diag{0.0, 0.0};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            diag += m.s(i, i) * m.s(j, j);
            for (int k = 0; k < d; ++k) {
                cross += m.ss(j, i, k, j) * m.s(i, k);
                for (int l = 0; l < d; ++l) quad += m.ss(j, i, l, k) * m.ss(i, j, k, l);
            }
        }
    }
    const double n = m.n_particles;
    return (quad - 2.0 * cross + diag).real() / (n * n * (n - 1) * (n - 1));
}

double dcat_one_qudit_purity(const PhasePoint& z, int n_particles) {
    // Evaluated in the chart z_1 = 1 with overlaps scaled by |z|^2.
    const PhasePoint rep = z.representative(0);
    const double z2 = rep.norm2();
    const auto strings = ParityString::all(rep.size());
    std::vector<double> w;
    for (const auto& b : strings) {
        double s = 0.0;
        for (int l = 0; l < rep.size(); ++l) s += b.sign(l) * std::norm(rep.z[static_cast<std::size_t>(l)]);
        w.push_back(s / z2);
    }
    const int n = n_particles;
    double s_n = 0.0;
    double s_n1 = 0.0;
    for (const double v : w) {
        s_n += std::pow(v, n);
        s_n1 += std::pow(v, n - 1);
    }
    double num = s_n1 * s_n1;
    for (int i = 1; i < rep.size(); ++i) {
        double t = 0.0;
        for (std::size_t b = 0; b < strings.size(); ++b) t += strings[b].sign(i) * std::pow(w[b], n - 1);
        const double zi4 = std::pow(std::norm(rep.z[static_cast<std::size_t>(i)]), 2);
        num += zi4 * t * t;
    }
    return num / (z2 * z2 * s_n * s_n);
}

double dcat_two_qudit_purity(const PhasePoint& z, int n_particles) {
    require_two_particle(n_particles);
    const Moments m = dcat_moments(z, n_particles);
    const int d = m.n_levels;
    Complex acc{0.0, 0.0};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            acc += m.ss(j, i, i, j) * (m.ss(i, j, j, i) - 2.0 * m.s(i, i)) + m.s(i, i) * m.s(j, j);
            for (int k = 0; k < d; ++k) {
                if (j == k) continue;
                for (int l = 0; l < d; ++l) acc += m.ss(j, i, l, k) * m.ss(i, j, k, l);
            }
        }
    }
    const double n = n_particles;
    return acc.real() / (n * n * (n - 1) * (n - 1));
}

double linear_entropy(double purity, EntropyKind kind, int n_particles, int n_levels) {
    double factor = 1.0;
    switch (kind) {
        case EntropyKind::Level:
            factor = (n_particles + 1.0) / n_particles;
            break;
        case EntropyKind::OneAtom:
            factor = n_levels / (n_levels - 1.0);
            break;
        case EntropyKind::TwoAtom: {
            const double d2 = static_cast<double>(n_levels) * n_levels;
            factor = d2 / (d2 - 1.0);
            break;
        }
    }
    return clamp_unit(factor * (1.0 - purity), "linear entropy");
}

EntropyReport entropies(const DensityMatrix& rho, EntropyKind kind, int n_particles, int n_levels) {
    Eigen::Index expected = 0;
    double base = 0.0;
    switch (kind) {
        case EntropyKind::Level:
            expected = n_particles + 1;
            base = n_particles + 1.0;
            break;
        case EntropyKind::OneAtom:
            expected = n_levels;
            base = n_levels;
            break;
        case EntropyKind::TwoAtom:
            expected = static_cast<Eigen::Index>(n_levels) * n_levels;
            base = static_cast<double>(expected);
            break;
    }
    if (rho.dim() != expected) throw std::invalid_argument("density matrix size does not match entropy kind");

    const Eigen::VectorXd ev = rho.eigenvalues();
    double vn = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev(k) < -kNegativeFail) {
            throw IntegrityError("density matrix eigenvalue " + std::to_string(ev(k)) + " is negative");
        }
        const double p = std::clamp(ev(k), 0.0, 1.0);
        if (p > 0.0) vn -= p * std::log(p);
    }
    EntropyReport report;
    report.purity = rho.purity();
    report.linear_entropy = linear_entropy(report.purity, kind, n_particles, n_levels);
    report.von_neumann_entropy = clamp_unit(vn / std::log(base), "von Neumann entropy");
    return report;
}

DensityMatrix partial_trace_oracle(const SymmetricState& state, int keep) {
    const auto& basis = state.basis();
    const int n = basis.n_particles();
    const int d = basis.n_levels();
    if (n > 8 || d > 3) throw std::invalid_argument("partial_trace_oracle supports N <= 8 and D <= 3 only");
    if (keep != 1 && keep != 2) throw std::invalid_argument("partial_trace_oracle keeps 1 or 2 particles");
    if (keep > n) throw std::invalid_argument("cannot keep more particles than the state has");

    std::size_t full = 1;
    for (int p = 0; p < n; ++p) full *= static_cast<std::size_t>(d);

    // psi(d_1..d_N) = c_n / sqrt(N! / prod n_i!), particle 1 is the most
    // significant digit of the tensor index.
    const double log_nfact = std::lgamma(n + 1.0);
    CVector psi(full);
    std::vector<int> digits(static_cast<std::size_t>(n));
    std::vector<int> counts(static_cast<std::size_t>(d));
    for (std::size_t t = 0; t < full; ++t) {
        std::size_t rest = t;
        std::fill(counts.begin(), counts.end(), 0);
        for (int p = n - 1; p >= 0; --p) {
            digits[static_cast<std::size_t>(p)] = static_cast<int>(rest % static_cast<std::size_t>(d));
            rest /= static_cast<std::size_t>(d);
            ++counts[static_cast<std::size_t>(digits[static_cast<std::size_t>(p)])];
        }
        double log_multi = log_nfact;
        for (const int c : counts) log_multi -= std::lgamma(c + 1.0);
        psi[t] = state[basis.rank(counts)] * std::exp(-0.5 * log_multi);
    }

    const std::size_t kept = keep == 1 ? static_cast<std::size_t>(d) : static_cast<std::size_t>(d * d);
    const std::size_t traced = full / kept;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(kept));
    for (std::size_t a = 0; a < kept; ++a) {
        for (std::size_t b = 0; b < kept; ++b) {
            Complex s{0.0, 0.0};
            for (std::size_t r = 0; r < traced; ++r) s += psi[a * traced + r] * std::conj(psi[b * traced + r]);
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
        }
    }
    return DensityMatrix(std::move(rho));
}

}  // namespace symqudit
