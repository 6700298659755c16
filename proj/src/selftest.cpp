#include "symqudit/selftest.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "symqudit/lmg.hpp"
#include "symqudit/moments.hpp"
#include "symqudit/rdm.hpp"
#include "symqudit/squeezing.hpp"
#include "symqudit/states.hpp"
#include "symqudit/sweep.hpp"

namespace symqudit::selftest {

namespace {

SymmetricState random_state(BasisPtr basis, std::mt19937_64& rng, bool even) {
    std::normal_distribution<double> g;
    SymmetricState s(basis);
    for (std::size_t k = 0; k < s.dim(); ++k) {
        bool keep = true;
        auto occ = basis->occupation(k);
        for (int l = 1; even && l < basis->n_levels(); ++l) keep = keep && occ[static_cast<std::size_t>(l)] % 2 == 0;
        if (keep) s[k] = {g(rng), g(rng)};
    }
    s.normalize();
    return s;
}

PhasePoint random_point(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    PhasePoint z;
    for (int i = 0; i < d; ++i) z.z.emplace_back(g(rng), g(rng));
    return z;
}

double rank_roundtrip() {
    double bad = 0.0;
    for (int d = 2; d <= 4; ++d) {
        SymmetricBasis b(6, d);
        for (std::size_t k = 0; k < b.dim(); ++k) {
            auto occ = b.unrank(k);
            if (b.rank(occ) != k) bad += 1.0;
            auto row = b.occupation(k);
            if (!std::equal(row.begin(), row.end(), occ.counts.begin())) bad += 1.0;
        }
    }
    return bad;
}

double apply_vs_dense(std::mt19937_64& rng) {
    auto b = make_basis(4, 3);
    auto psi = random_state(b, rng, false);
    const auto n = static_cast<Eigen::Index>(b->dim());
    double dev = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto out = apply_sij(psi, {i, j});
            for (Eigen::Index r = 0; r < n; ++r) {
                Complex ref = 0.0;
                for (Eigen::Index c = 0; c < n; ++c)
                    ref += matrix_element(b->occupation(static_cast<std::size_t>(r)),
                                          b->occupation(static_cast<std::size_t>(c)), {i, j}) *
                           psi[static_cast<std::size_t>(c)];
                dev = std::max(dev, std::abs(out[static_cast<std::size_t>(r)] - ref));
            }
        }
    return dev;
}

double casimir(std::mt19937_64& rng) {
    double dev = 0.0;
    for (int d : {2, 3, 4}) {
        const int n = 7;
        auto b = make_basis(n, d);
        for (int rep = 0; rep < 5; ++rep) {
            const Moments m = compute_moments(random_state(b, rng, false));
            Complex c2 = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) c2 += m.ss(i, j, j, i);
            dev = std::max(dev, std::abs(c2 - Complex(n * (n + d - 1.0))));
        }
    }
    return dev;
}

double dscs_closed(std::mt19937_64& rng) {
    double dev = 0.0;
    for (int d : {2, 3, 4}) {
        auto z = random_point(d, rng);
        dev = std::max(dev, compute_moments(dscs(make_basis(9, d), z)).max_deviation(dscs_moments(z, 9)));
    }
    return dev;
}

double dcat_closed() {
    const auto z = PhasePoint::chart3(0.7, 0.4);
    auto b = make_basis(6, 3);
    double n2 = 0.0;
    auto s = dcat(b, z, &n2);
    double dev = std::abs(n2 - cat3_norm2(0.7, 0.4, 6));
    dev = std::max(dev, compute_moments(s).max_deviation(dcat_moments(z, 6)));
    dev = std::max(dev, std::abs(one_qudit_rdm(s).purity() - dcat_one_qudit_purity(z, 6)));
    return dev;
}

double oracle(std::mt19937_64& rng) {
    double dev = 0.0;
    for (int d : {2, 3}) {
        auto b = make_basis(5, d);
        auto psi = random_state(b, rng, false);
        const Moments m = compute_moments(psi);
        dev = std::max(dev, (one_qudit_rdm(m).matrix() - partial_trace_oracle(psi, 1).matrix()).cwiseAbs().maxCoeff());
        dev = std::max(dev, (two_qudit_rdm(m).matrix() - partial_trace_oracle(psi, 2).matrix()).cwiseAbs().maxCoeff());
    }
    return dev;
}

double su2(std::mt19937_64& rng) {
    double dev = 0.0;
    auto b = make_basis(8, 2);
    for (int rep = 0; rep < 5; ++rep) {
        auto psi = random_state(b, rng, true);
        dev = std::max(dev, std::abs(xi_pair(psi, 1, 0) - su2_xi(psi)));
    }
    return dev;
}

double theta_grid(std::mt19937_64& rng) {
    auto psi = random_state(make_basis(8, 2), rng, true);
    return std::abs(su2_xi(psi) - su2_xi_theta_grid(psi, 10000));
}

double serial_parallel(std::mt19937_64& rng) {
    auto psi = random_state(make_basis(15, 3), rng, false);
    return compute_moments(psi, kernels::Exec::Serial).max_deviation(compute_moments(psi, kernels::Exec::Parallel));
}

double even_vs_full() {
    double dev = 0.0;
    auto b = make_basis(8, 3);
    for (double lambda : {0.3, 1.0, 2.5}) {
        lmg::SolverOptions full;
        full.sector = lmg::Sector::Full;
        dev = std::max(dev, std::abs(lmg::ground_state(b, {1.0, lambda, 8}).energy -
                                     lmg::ground_state(b, {1.0, lambda, 8}, full).energy));
    }
    return dev;
}

double lanczos_vs_dense() {
    auto b = make_basis(30, 3);
    lmg::SolverOptions opts;
    opts.force_lanczos = true;
    return std::abs(lmg::ground_state(b, {1.0, 1.2, 30}).energy - lmg::ground_state(b, {1.0, 1.2, 30}, opts).energy);
}

double thermo_continuity() {
    using lmg::Phase;
    return std::max(std::abs(lmg::thermo_energy_branch(Phase::I, 1.0, 0.5) - lmg::thermo_energy_branch(Phase::II, 1.0, 0.5)),
                    std::abs(lmg::thermo_energy_branch(Phase::II, 1.0, 1.5) -
                             lmg::thermo_energy_branch(Phase::III, 1.0, 1.5)));
}

}  // namespace

std::vector<CheckResult> run_all() {
    std::mt19937_64 rng(20240611);
    std::vector<CheckResult> out;
    out.push_back({"rank_unrank_roundtrip", rank_roundtrip(), 0.0});
    out.push_back({"apply_sij_vs_dense_matrix", apply_vs_dense(rng), 1e-12});
    out.push_back({"quadratic_casimir", casimir(rng), 1e-10});
    out.push_back({"dscs_closed_form_moments", dscs_closed(rng), 1e-10});
    out.push_back({"dcat_closed_forms", dcat_closed(), 1e-9});
    out.push_back({"rdm_vs_partial_trace", oracle(rng), 1e-10});
    out.push_back({"su2_reduction", su2(rng), 1e-10});
    out.push_back({"su2_theta_grid", theta_grid(rng), 1e-6});
    out.push_back({"serial_vs_parallel_moments", serial_parallel(rng), 0.0});
    out.push_back({"even_sector_vs_full_space", even_vs_full(), 1e-10});
    out.push_back({"lanczos_vs_dense", lanczos_vs_dense(), 1e-9});
    out.push_back({"thermo_energy_continuity", thermo_continuity(), 1e-14});
    return out;
}

bool report(std::ostream& out, const std::vector<CheckResult>& results) {
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed();
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " deviation=" << sweep::format_number(r.deviation)
            << " tolerance=" << sweep::format_number(r.tolerance) << '\n';
    }
    return ok;
}

}  // namespace symqudit::selftest
