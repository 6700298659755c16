#include "symqudit/states.hpp"

#include <cmath>
#include <stdexcept>

#include "symqudit/errors.hpp"

namespace symqudit {

namespace {

constexpr double kEmptySector = 1e-14;

void require_same_levels(const PhasePoint& z, const SymmetricBasis& basis) {
    if (z.size() != basis.n_levels()) {
        throw std::invalid_argument("phase point length does not match the number of levels");
    }
}

void require_nonzero(const PhasePoint& z) {
    if (z.z.empty() || z.norm2() == 0.0) throw std::invalid_argument("phase point must be nonzero");
}

Complex dot(const PhasePoint& a, const PhasePoint& b) {
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < a.z.size(); ++k) s += std::conj(a.z[k]) * b.z[k];
    return s;
}

/// x^p with the convention that negative powers only ever appear multiplied
/// by a vanishing prefactor.
double power(double x, int p) { return p < 0 ? 0.0 : std::pow(x, p); }

/// Normalized overlaps w_b = (z^b.z)/|z|^2, one per parity string.
struct CatSums {
    std::vector<ParityString> strings;
    std::vector<double> w;
    double norm2 = 0.0;
};

CatSums cat_sums(const PhasePoint& z) {
    require_nonzero(z);
    CatSums cs;
    cs.strings = ParityString::all(z.size());
    cs.norm2 = z.norm2();
    for (const auto& b : cs.strings) cs.w.push_back(dot(b.apply(z), z).real() / cs.norm2);
    return cs;
}

Projection project(const SymmetricState& state, bool even) {
    SymmetricState out(state.basis_ptr());
    const auto& basis = state.basis();
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const auto occ = basis.occupation(k);
        bool all_even = true;
        for (std::size_t l = 1; l < occ.size(); ++l) all_even = all_even && (occ[l] % 2 == 0);
        if (all_even == even) out[k] = state[k];
    }
    const double n2 = out.norm2();
    if (n2 < kEmptySector) {
        throw EmptySectorError(std::string(even ? "even" : "odd") + " parity projection annihilates the state");
    }
    return {std::move(out), n2};
}

}  // namespace

double PhasePoint::norm2() const {
    double s = 0.0;
    for (const auto& c : z) s += std::norm(c);
    return s;
}

double PhasePoint::norm() const { return std::sqrt(norm2()); }

PhasePoint PhasePoint::representative(int i) const {
    const Complex zi = z.at(static_cast<std::size_t>(i));
    if (zi == Complex{0.0, 0.0}) throw std::domain_error("representative: reference component is zero");
    PhasePoint out{z};
    for (auto& c : out.z) c /= zi;
    return out;
}

std::vector<ParityString> ParityString::all(int n_levels) {
    const int bits = n_levels - 1;
    std::vector<ParityString> out;
    out.reserve(std::size_t{1} << bits);
    for (unsigned mask = 0; mask < (1u << bits); ++mask) {
        ParityString b;
        for (int k = 0; k < bits; ++k) b.bits.push_back(static_cast<int>((mask >> k) & 1u));
        out.push_back(std::move(b));
    }
    return out;
}

PhasePoint ParityString::apply(const PhasePoint& z) const {
    PhasePoint out{z};
    for (int l = 1; l < z.size(); ++l) out.z[static_cast<std::size_t>(l)] *= sign(l);
    return out;
}

SymmetricState dscs(BasisPtr basis, const PhasePoint& z) {
    require_same_levels(z, *basis);
    require_nonzero(z);
    const int n = basis->n_particles();
    const double len = z.norm();
    std::vector<double> log_mod(z.z.size());
    std::vector<double> arg(z.z.size());
    for (std::size_t l = 0; l < z.z.size(); ++l) {
        const double a = std::abs(z.z[l]) / len;
        log_mod[l] = a > 0.0 ? std::log(a) : -INFINITY;
        arg[l] = std::arg(z.z[l]);
    }
    const double log_nfact = std::lgamma(n + 1.0);

    SymmetricState state(basis);
    for (std::size_t k = 0; k < basis->dim(); ++k) {
        const auto occ = basis->occupation(k);
        double log_c = 0.5 * log_nfact;
        double phase = 0.0;
        bool vanishes = false;
        for (std::size_t l = 0; l < occ.size(); ++l) {
            if (occ[l] == 0) continue;
            if (std::isinf(log_mod[l])) {
                vanishes = true;
                break;
            }
            log_c += occ[l] * log_mod[l] - 0.5 * std::lgamma(occ[l] + 1.0);
            phase += occ[l] * arg[l];
        }
        if (!vanishes) state[k] = std::polar(std::exp(log_c), phase);
    }
    state.normalize();
    return state;
}

Complex dscs_overlap(const PhasePoint& zp, const PhasePoint& z, int n_particles) {
    require_nonzero(zp);
    require_nonzero(z);
    return std::pow(dot(zp, z) / (zp.norm() * z.norm()), n_particles);
}

Complex dscs_matrix_element(const PhasePoint& zp, const PhasePoint& z, int n_particles, OperatorIndex op) {
    require_nonzero(zp);
    require_nonzero(z);
    const double scale = zp.norm() * z.norm();
    const Complex u = dot(zp, z) / scale;
    const Complex pre = std::conj(zp.z[static_cast<std::size_t>(op.i)]) * z.z[static_cast<std::size_t>(op.j)] / scale;
    return static_cast<double>(n_particles) * pre * std::pow(u, n_particles - 1);
}

SymmetricState parity_apply(const SymmetricState& state, int level) {
    SymmetricState out(state);
    const auto& basis = state.basis();
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        if (basis.occupation(k)[static_cast<std::size_t>(level)] % 2 != 0) out[k] = -out[k];
    }
    return out;
}

double parity_expval(const SymmetricState& state, int level) {
    const auto& basis = state.basis();
    double s = 0.0;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const double sign = basis.occupation(k)[static_cast<std::size_t>(level)] % 2 != 0 ? -1.0 : 1.0;
        s += sign * std::norm(state[k]);
    }
    return s;
}

Projection project_even(const SymmetricState& state) { return project(state, true); }
Projection project_odd(const SymmetricState& state) { return project(state, false); }

SymmetricState dcat(BasisPtr basis, const PhasePoint& z, double* norm2_out) {
    auto proj = project_even(dscs(std::move(basis), z));
    if (norm2_out) *norm2_out = proj.norm2;
    proj.state.normalize();
    return std::move(proj.state);
}

double dcat_norm2(const PhasePoint& z, int n_particles) {
    const CatSums cs = cat_sums(z);
    double s = 0.0;
    for (const double w : cs.w) s += std::pow(w, n_particles);
    return s / static_cast<double>(cs.strings.size());
}

double cat2_norm2(Complex alpha, int n_particles) {
    const double a2 = std::norm(alpha);
    return 0.5 * (1.0 + std::pow((1.0 - a2) / (1.0 + a2), n_particles));
}

double cat3_norm2(Complex alpha, Complex beta, int n_particles) {
    const double a2 = std::norm(alpha);
    const double b2 = std::norm(beta);
    const double den = 1.0 + a2 + b2;
    const int n = n_particles;
    return 0.25 * (1.0 + std::pow((1.0 - a2 + b2) / den, n) + std::pow((1.0 + a2 - b2) / den, n) +
                   std::pow((1.0 - a2 - b2) / den, n));
}

Complex dcat_expval_sij(const PhasePoint& z, int n_particles, OperatorIndex op) {
    if (op.i != op.j) return {0.0, 0.0};
    const CatSums cs = cat_sums(z);
    const int n = n_particles;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t b = 0; b < cs.strings.size(); ++b) {
        num += cs.strings[b].sign(op.i) * power(cs.w[b], n - 1);
        den += std::pow(cs.w[b], n);
    }
    const double xi = std::norm(z.z[static_cast<std::size_t>(op.i)]) / cs.norm2;
    return {n * xi * num / den, 0.0};
}

Complex dcat_expval_quadratic(const PhasePoint& z, int n_particles, OperatorIndex op1, OperatorIndex op2) {
    const int i = op1.i, j = op1.j, k = op2.i, l = op2.j;
    auto delta = [](int a, int b) { return a == b ? 1 : 0; };
    // Only moves that keep every level's parity survive the projection.
    const int selection = delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k) -
                          2 * delta(i, j) * delta(j, k) * delta(k, l) * delta(l, i);
    if (selection == 0) return {0.0, 0.0};

    const CatSums cs = cat_sums(z);
    const int n = n_particles;
    const auto zi = z.z[static_cast<std::size_t>(i)];
    const auto zj = z.z[static_cast<std::size_t>(j)];
    const auto zk = z.z[static_cast<std::size_t>(k)];
    const auto zl = z.z[static_cast<std::size_t>(l)];
    const Complex outer = std::conj(zi) * zl / cs.norm2;
    const Complex inner_pair = std::conj(zk) * zj / cs.norm2;

    Complex num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t b = 0; b < cs.strings.size(); ++b) {
        const auto& bits = cs.strings[b];
        const double w = cs.w[b];
        const Complex bracket = static_cast<double>(delta(j, k)) * power(w, n - 1) +
                                static_cast<double>(n - 1) * static_cast<double>(bits.sign(k)) * inner_pair *
                                    power(w, n - 2);
        num += static_cast<double>(bits.sign(i)) * outer * bracket;
        den += std::pow(w, n);
    }
    return static_cast<double>(n * selection) * num / den;
}

SymmetricState nodon(BasisPtr basis, const PhaseVector& phases) {
    const int d = basis->n_levels();
    if (static_cast<int>(phases.phases.size()) != d) {
        throw std::invalid_argument("nodon: need one phase per level");
    }
    const int n = basis->n_particles();
    SymmetricState state(basis);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int l = 0; l < d; ++l) {
        std::vector<int> occ(static_cast<std::size_t>(d), 0);
        occ[static_cast<std::size_t>(l)] = n;
        state[basis->rank(occ)] = std::polar(amp, phases.phases[static_cast<std::size_t>(l)]);
    }
    return state;
}

Moments dscs_moments(const PhasePoint& z, int n_particles) {
    require_nonzero(z);
    const int d = z.size();
    const double n = n_particles;
    const double z2 = z.norm2();
    Moments m(n_particles, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Complex zizj = std::conj(z.z[static_cast<std::size_t>(i)]) * z.z[static_cast<std::size_t>(j)];
            m.s(i, j) = n * zizj / z2;
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    const Complex il = std::conj(z.z[static_cast<std::size_t>(i)]) * z.z[static_cast<std::size_t>(l)];
                    const Complex kj = std::conj(z.z[static_cast<std::size_t>(k)]) * z.z[static_cast<std::size_t>(j)];
                    m.ss(i, j, k, l) = il / (z2 * z2) * (n * (j == k ? 1.0 : 0.0) * z2 + n * (n - 1.0) * kj);
                }
            }
        }
    }
    return m;
}

Moments dcat_moments(const PhasePoint& z, int n_particles) {
    const int d = z.size();
    Moments m(n_particles, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m.s(i, j) = dcat_expval_sij(z, n_particles, {i, j});
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) m.ss(i, j, k, l) = dcat_expval_quadratic(z, n_particles, {i, j}, {k, l});
            }
        }
    }
    return m;
}

Moments nodon_moments(int n_particles, int n_levels) {
    const int d = n_levels;
    const double n = n_particles;
    Moments m(n_particles, d);
    for (int i = 0; i < d; ++i) {
        m.s(i, i) = n / d;
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                // delta_il (delta_jk + (N-1) delta_ik delta_ij)
                const double v = (n / d) * ((j == k ? 1.0 : 0.0) + (n - 1.0) * ((i == k && i == j) ? 1.0 : 0.0));
                m.ss(i, j, k, i) = v;
            }
        }
    }
    return m;
}

}  // namespace symqudit
