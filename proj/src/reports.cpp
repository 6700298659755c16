#include "symqudit/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "symqudit/sweep.hpp"

namespace symqudit::reports {

namespace {

using sweep::format_number;

constexpr std::uint64_t kStateDimLimit = 2'000'000;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

void print_entropy(std::ostream& out, const std::string& label, const EntropyReport& e) {
    out << label << ": purity=" << format_number(e.purity) << " linear=" << format_number(e.linear_entropy)
        << " von_neumann=" << format_number(e.von_neumann_entropy) << '\n';
}

int level_of(SurfaceObservable o) {
    switch (o) {
        case SurfaceObservable::Level1:
            return 0;
        case SurfaceObservable::Level2:
            return 1;
        case SurfaceObservable::Level3:
            return 2;
        default:
            return -1;
    }
}

}  // namespace

PhaseReport phase_report(const lmg::LmgParams& params) {
    if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(params.lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    PhaseReport r;
    r.params = params;
    r.point = lmg::stationary_point(params);
    r.energy = lmg::thermo_energy(params);
    r.lambda_c1 = 0.5 * params.epsilon;
    r.lambda_c2 = 1.5 * params.epsilon;
    return r;
}

void print_phase(std::ostream& out, const PhaseReport& r) {
    out << "epsilon: " << format_number(r.params.epsilon) << '\n'
        << "lambda: " << format_number(r.params.lambda) << '\n'
        << "phase: " << lmg::phase_name(r.point.phase) << '\n'
        << "alpha0: " << format_number(r.point.alpha0) << '\n'
        << "beta0: " << format_number(r.point.beta0) << '\n'
        << "energy: " << format_number(r.energy) << '\n'
        << "lambda_c1: " << format_number(r.lambda_c1) << '\n'
        << "lambda_c2: " << format_number(r.lambda_c2) << '\n';
}

StateKind parse_state_kind(const std::string& name) {
    if (name == "dscs") return StateKind::Dscs;
    if (name == "dcat") return StateKind::Dcat;
    if (name == "nodon") return StateKind::Nodon;
    throw std::invalid_argument("unknown state kind '" + name + "' (dscs, dcat, nodon)");
}

const char* state_kind_name(StateKind k) {
    switch (k) {
        case StateKind::Dscs:
            return "dscs";
        case StateKind::Dcat:
            return "dcat";
        case StateKind::Nodon:
            return "nodon";
    }
    return "?";
}

double StateReport::max_deviation() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.deviation);
    return m;
}

StateReport state_report(const StateSpec& spec) {
    const int n = spec.n_particles;
    const int d = spec.n_levels;
    if (n < 1 || d < 2) throw std::invalid_argument("state needs N >= 1 and D >= 2");
    if (dimension(n, d) > kStateDimLimit) throw std::invalid_argument("state dimension too large for a report");
    const BasisPtr basis = make_basis(n, d);

    StateReport rep;
    rep.spec = spec;
    std::optional<SymmetricState> state;
    PhasePoint z = spec.z;
    switch (spec.kind) {
        case StateKind::Dscs:
            if (z.size() != d) throw std::invalid_argument("z needs one component per level");
            state = dscs(basis, z);
            break;
        case StateKind::Dcat: {
            if (z.size() != d) throw std::invalid_argument("z needs one component per level");
            if (z.z[0] == Complex{0.0, 0.0}) throw std::invalid_argument("dcat needs z_1 != 0");
            z = z.representative(0);
            rep.spec.z = z;
            double n2 = 0.0;
            state = dcat(basis, z, &n2);
            rep.checks.push_back({"norm2", std::abs(n2 - dcat_norm2(z, n))});
            break;
        }
        case StateKind::Nodon:
            if (static_cast<int>(spec.phases.phases.size()) != d)
                throw std::invalid_argument("nodon needs one phase per level");
            state = nodon(basis, spec.phases);
            break;
    }

    for (int i = 0; i < d; ++i) rep.level.push_back(entropies(level_rdm(*state, i), EntropyKind::Level, n, d));
    const Moments m = compute_moments(*state);
    const DensityMatrix rho1 = one_qudit_rdm(m);
    rep.one_atom = entropies(rho1, EntropyKind::OneAtom, n, d);
    std::optional<DensityMatrix> rho2;
    if (n >= 3) {
        rho2.emplace(two_qudit_rdm(m));
        rep.two_atom = entropies(*rho2, EntropyKind::TwoAtom, n, d);
    }
    rep.squeezing = squeezing(m);

    switch (spec.kind) {
        case StateKind::Dscs: {
            rep.checks.push_back({"moments", m.max_deviation(dscs_moments(z, n))});
            double lv = 0.0;
            for (int i = 0; i < d; ++i) {
                const double x = std::norm(z.z[static_cast<std::size_t>(i)]);
                lv = std::max(lv, std::abs(rep.level[static_cast<std::size_t>(i)].purity -
                                           dscs_level_purity(x, z.norm2() - x, n)));
            }
            rep.checks.push_back({"level_purity", lv});
            rep.checks.push_back({"one_atom_purity", std::abs(rep.one_atom.purity - 1.0)});
            if (rep.two_atom) rep.checks.push_back({"two_atom_purity", std::abs(rep.two_atom->purity - 1.0)});
            rep.checks.push_back({"xi2_total", std::abs(rep.squeezing.total - 1.0)});
            break;
        }
        case StateKind::Dcat:
            rep.checks.push_back({"moments", m.max_deviation(dcat_moments(z, n))});
            rep.checks.push_back({"one_atom_purity", std::abs(rep.one_atom.purity - dcat_one_qudit_purity(z, n))});
            if (rep.two_atom)
                rep.checks.push_back({"two_atom_purity", std::abs(rep.two_atom->purity - dcat_two_qudit_purity(z, n))});
            break;
        case StateKind::Nodon: {
            if (n >= 3) rep.checks.push_back({"moments", m.max_deviation(nodon_moments(n, d))});
            double lv = 0.0;
            for (const auto& e : rep.level) lv = std::max(lv, std::abs(e.purity - (1.0 - 2.0 * (d - 1.0) / (d * d))));
            rep.checks.push_back({"level_purity", lv});
            rep.checks.push_back(
                {"one_atom_rdm", max_abs(rho1.matrix() - Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d))});
            if (rep.two_atom)
                rep.checks.push_back(
                    {"two_atom_linear", std::abs(rep.two_atom->linear_entropy - static_cast<double>(d) / (d + 1))});
            rep.checks.push_back({"xi2_total", std::abs(rep.squeezing.total - 1.0)});
            break;
        }
    }
    return rep;
}

void print_state(std::ostream& out, const StateReport& r) {
    out << "state: " << state_kind_name(r.spec.kind) << '\n'
        << "N: " << r.spec.n_particles << '\n'
        << "D: " << r.spec.n_levels << '\n';
    for (std::size_t i = 0; i < r.level.size(); ++i) print_entropy(out, "level_" + std::to_string(i + 1), r.level[i]);
    print_entropy(out, "one_atom", r.one_atom);
    if (r.two_atom) print_entropy(out, "two_atom", *r.two_atom);
    for (const auto& [ij, v] : r.squeezing.pairwise)
        out << "xi2_" << ij.first + 1 << ij.second + 1 << ": " << format_number(v) << '\n';
    out << "xi2_total: " << format_number(r.squeezing.total) << '\n';
    for (const auto& c : r.checks) out << "check " << c.name << ": " << format_number(c.deviation) << '\n';
    out << "max_deviation: " << format_number(r.max_deviation()) << '\n';
}

SurfaceObservable parse_surface_observable(const std::string& name) {
    for (auto o : {SurfaceObservable::Level1, SurfaceObservable::Level2, SurfaceObservable::Level3,
                   SurfaceObservable::OneAtom, SurfaceObservable::TwoAtom, SurfaceObservable::Squeezing,
                   SurfaceObservable::Energy})
        if (name == surface_observable_name(o)) return o;
    throw std::invalid_argument("unknown surface observable '" + name + "'");
}

const char* surface_observable_name(SurfaceObservable o) {
    switch (o) {
        case SurfaceObservable::Level1:
            return "level_entropy_1";
        case SurfaceObservable::Level2:
            return "level_entropy_2";
        case SurfaceObservable::Level3:
            return "level_entropy_3";
        case SurfaceObservable::OneAtom:
            return "one_atom";
        case SurfaceObservable::TwoAtom:
            return "two_atom";
        case SurfaceObservable::Squeezing:
            return "squeezing_total";
        case SurfaceObservable::Energy:
            return "energy";
    }
    return "?";
}

void SurfaceConfig::validate() const {
    if (n_particles < 3) throw std::invalid_argument("surface needs N >= 3");
    if (dimension(n_particles, 3) > kStateDimLimit) throw std::invalid_argument("N too large for a surface");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (points < 2) throw std::invalid_argument("surface grid needs at least 2 points per axis");
    if (!std::isfinite(range_min) || !std::isfinite(range_max) || !(range_max > range_min))
        throw std::invalid_argument("surface range must satisfy range-min < range-max");
    if (state != StateKind::Dscs && state != StateKind::Dcat)
        throw std::invalid_argument("surface state must be dscs or dcat");
    if (coords == SurfaceCoords::XY) {
        if (state != StateKind::Dscs || level_of(observable) < 0)
            throw std::invalid_argument("(x, y) coordinates support the dscs level entropy only");
        if (range_min < 0.0) throw std::invalid_argument("x and y must be non-negative");
    }
    for (std::size_t k = 0; k < curve_lambdas.size(); ++k)
        if (curve_lambdas[k] < 0.0 || (k > 0 && !(curve_lambdas[k] > curve_lambdas[k - 1])))
            throw std::invalid_argument("stationary curve lambdas must be non-negative and increasing");
}

SurfaceTable surface_table(const SurfaceConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_particles;
    SurfaceTable t;
    t.value_name = surface_observable_name(cfg.observable);
    auto axis = [&](int k) {
        return k == cfg.points - 1 ? cfg.range_max
                                   : cfg.range_min + (cfg.range_max - cfg.range_min) * k / (cfg.points - 1.0);
    };

    if (cfg.coords == SurfaceCoords::XY) {
        t.x_name = "x";
        t.y_name = "y";
        for (int a = 0; a < cfg.points; ++a)
            for (int b = 0; b < cfg.points; ++b) {
                const double x = axis(a), y = axis(b);
                double v = 0.0;
                if (x + y > 0.0) v = linear_entropy(dscs_level_purity(x, y, n), EntropyKind::Level, n, 3);
                t.rows.push_back({x, y, v});
            }
        return t;
    }

    t.x_name = "alpha";
    t.y_name = "beta";
    const BasisPtr basis = make_basis(n, 3);
    const lmg::LmgParams params{cfg.epsilon, cfg.lambda, n};
    std::optional<kernels::CsrMatrix> h;
    if (cfg.observable == SurfaceObservable::Energy && cfg.state == StateKind::Dcat)
        h = lmg::build_hamiltonian(*basis, params);
    const int level = level_of(cfg.observable);

    for (int a = 0; a < cfg.points; ++a) {
        for (int b = 0; b < cfg.points; ++b) {
            const double alpha = axis(a), beta = axis(b);
            const PhasePoint z = PhasePoint::chart3(alpha, beta);
            double v = 0.0;
            if (cfg.state == StateKind::Dscs) {
                if (level >= 0) {
                    const double x = std::norm(z.z[static_cast<std::size_t>(level)]);
                    v = linear_entropy(dscs_level_purity(x, z.norm2() - x, n), EntropyKind::Level, n, 3);
                } else if (cfg.observable == SurfaceObservable::Energy) {
                    v = lmg::energy_surface(alpha, beta, params);
                } else {
                    const Moments m = dscs_moments(z, n);
                    if (cfg.observable == SurfaceObservable::OneAtom)
                        v = linear_entropy(one_qudit_purity(m), EntropyKind::OneAtom, n, 3);
                    else if (cfg.observable == SurfaceObservable::TwoAtom)
                        v = linear_entropy(two_qudit_purity(m), EntropyKind::TwoAtom, n, 3);
                    else
                        v = xi_total(m);
                }
            } else {
                if (level >= 0) {
                    v = linear_entropy(level_purity(dcat(basis, z), level), EntropyKind::Level, n, 3);
                } else if (cfg.observable == SurfaceObservable::Energy) {
                    v = lmg::energy_expval(*h, dcat(basis, z));
                } else if (cfg.observable == SurfaceObservable::OneAtom) {
                    v = linear_entropy(dcat_one_qudit_purity(z, n), EntropyKind::OneAtom, n, 3);
                } else if (cfg.observable == SurfaceObservable::TwoAtom) {
                    v = linear_entropy(dcat_two_qudit_purity(z, n), EntropyKind::TwoAtom, n, 3);
                } else {
                    v = xi_total(dcat_moments(z, n));
                }
            }
            t.rows.push_back({alpha, beta, v});
        }
    }
    return t;
}

std::vector<CurveRow> stationary_curve(double epsilon, const std::vector<double>& lambdas) {
    std::vector<CurveRow> rows;
    for (double l : lambdas) {
        const auto sp = lmg::stationary_point({epsilon, l, 3});
        rows.push_back({l, sp.alpha0, sp.beta0, sp.phase});
    }
    return rows;
}

void write_surface_csv(std::ostream& out, const SurfaceTable& t) {
    out << t.x_name << ',' << t.y_name << ',' << t.value_name << '\n';
    for (const auto& r : t.rows)
        out << format_number(r.x) << ',' << format_number(r.y) << ',' << format_number(r.value) << '\n';
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
    out << "lambda,alpha0,beta0,phase\n";
    for (const auto& r : rows)
        out << format_number(r.lambda) << ',' << format_number(r.alpha0) << ',' << format_number(r.beta0) << ','
            << lmg::phase_name(r.phase) << '\n';
}

}  // namespace symqudit::reports
