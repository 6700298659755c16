#include "symqudit/squeezing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace symqudit {

namespace {

constexpr double kPrecondition = 1e-10;

struct Su2Moments {
    double n = 0.0;
    double jx2 = 0.0;
    double jy2 = 0.0;
    double jxjy_sym = 0.0;  // <J_x J_y + J_y J_x>
};

// Level pair (i, j) = (1, 0): S_ij = S_21 in 1-based labels.
Su2Moments su2_moments(const SymmetricState& state) {
    if (state.basis().n_levels() != 2) throw std::invalid_argument("su2_xi requires D = 2");
    const OperatorIndex up{1, 0};
    const OperatorIndex down{0, 1};
    const Complex s_up = expval_sij(state, up);
    // <J_x> = Re <S_21>, <J_y> = -Im <S_21>
    if (std::abs(s_up.real()) > kPrecondition || std::abs(s_up.imag()) > kPrecondition) {
        throw std::domain_error("su2_xi requires <J_x> = <J_y> = 0 (even or odd state)");
    }
    const Complex uu = expval_sij_skl(state, up, up);
    const Complex dd = expval_sij_skl(state, down, down);
    const Complex ud = expval_sij_skl(state, up, down);
    const Complex du = expval_sij_skl(state, down, up);
    Su2Moments out;
    out.n = state.basis().n_particles();
    // J_x^2 = (S^2_up + S^2_down + S_up S_down + S_down S_up)/4, J_y^2 flips the sign of the squares.
    out.jx2 = 0.25 * (uu + dd + ud + du).real();
    out.jy2 = 0.25 * (-uu - dd + ud + du).real();
    out.jxjy_sym = (Complex{0.0, 0.5} * (uu - dd)).real();
    return out;
}

}  // namespace

double xi_pair(const Moments& m, int i, int j) {
    if (i <= j) throw std::invalid_argument("xi_pair requires i > j");
    const Complex sym = m.ss(i, j, j, i) + m.ss(j, i, i, j);
    const double value = (sym.real() - 2.0 * std::abs(m.ss(i, j, i, j))) /
                         (static_cast<double>(m.n_particles) * (m.n_levels - 1));
    return value;
}

double xi_pair(const SymmetricState& state, int i, int j) { return xi_pair(compute_moments(state), i, j); }

SqueezingReport squeezing(const Moments& m) {
    SqueezingReport report;
    for (int i = 1; i < m.n_levels; ++i) {
        for (int j = 0; j < i; ++j) {
            const double v = xi_pair(m, i, j);
            report.pairwise[{i, j}] = v;
            report.total += v;
        }
    }
    return report;
}

double xi_total(const Moments& m) { return squeezing(m).total; }
double xi_total(const SymmetricState& state) { return xi_total(compute_moments(state)); }

double su2_xi(const SymmetricState& state) {
    const Su2Moments s = su2_moments(state);
    const double diff = s.jx2 - s.jy2;
    return (2.0 / s.n) * (s.jx2 + s.jy2 - std::sqrt(diff * diff + s.jxjy_sym * s.jxjy_sym));
}

double su2_xi_theta_grid(const SymmetricState& state, int points) {
    if (points < 1) throw std::invalid_argument("theta grid needs at least one point");
    const Su2Moments s = su2_moments(state);
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p < points; ++p) {
        const double theta = std::numbers::pi * p / points;
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        best = std::min(best, c * c * s.jx2 + sn * sn * s.jy2 + c * sn * s.jxjy_sym);
    }
    return 4.0 * best / s.n;
}

}  // namespace symqudit
