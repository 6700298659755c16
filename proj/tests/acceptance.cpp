// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symqudit/cli.hpp"
#include "symqudit/lmg.hpp"
#include "symqudit/moments.hpp"
#include "symqudit/rdm.hpp"
#include "symqudit/squeezing.hpp"
#include "symqudit/states.hpp"
#include "symqudit/sweep.hpp"

using namespace symqudit;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "" : "FAILED ") + what);
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SymmetricState random_state(BasisPtr basis, std::mt19937_64& rng, bool even = false) {
    std::normal_distribution<double> g;
    SymmetricState s(basis);
    for (std::size_t k = 0; k < s.dim(); ++k) {
        auto occ = basis->occupation(k);
        bool keep = true;
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

double bloch_sum(const Moments& m) {
    double s = 0.0;
    for (int i = 0; i < m.n_levels; ++i)
        for (int j = 0; j < m.n_levels; ++j) s += std::norm(m.s(i, j));
    return s;
}

// ---------------------------------------------------------------------------

Verdict oracle_equivalence() {
    Verdict v;
    std::mt19937_64 rng(101);
    const auto t0 = Clock::now();
    double dev = 0.0;
    for (int n = 3; n <= 6; ++n)
        for (int d : {2, 3}) {
            auto b = make_basis(n, d);
            for (int rep = 0; rep < 25; ++rep) {
                auto psi = random_state(b, rng);
                const Moments m = compute_moments(psi);
                dev = std::max(dev, (one_qudit_rdm(m).matrix() - partial_trace_oracle(psi, 1).matrix()).cwiseAbs().maxCoeff());
                dev = std::max(dev, (two_qudit_rdm(m).matrix() - partial_trace_oracle(psi, 2).matrix()).cwiseAbs().maxCoeff());
            }
        }
    const double t = seconds_since(t0);
    v.require(dev <= 1e-10, "max entry deviation " + fmt("%.2e", dev) + " <= 1e-10");
    v.require(t < 30.0, "runtime " + fmt("%.2f", t) + " s < 30 s");
    return v;
}

Verdict casimir_bloch() {
    Verdict v;
    std::mt19937_64 rng(202);
    const auto t0 = Clock::now();
    double dev = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int d = 2 + rep % 3;
        const int n = 4 + rep % 7;
        const Moments m = compute_moments(random_state(make_basis(n, d), rng));
        Complex c2 = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) c2 += m.ss(i, j, j, i);
        dev = std::max(dev, std::abs(c2 - Complex(n * (n + d - 1.0))));
    }
    v.require(dev <= 1e-10, "Casimir deviation " + fmt("%.2e", dev) + " <= 1e-10");

    double coherent_dev = 0.0, cat_gap = 1e300;
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 2 + rep % 3;
        const int n = 10;
        auto b = make_basis(n, d);
        const auto z = random_point(d, rng);
        coherent_dev = std::max(coherent_dev, std::abs(bloch_sum(compute_moments(dscs(b, z))) - n * n) / (n * n));
        cat_gap = std::min(cat_gap, n * n - bloch_sum(compute_moments(dcat(b, z))));
    }
    const double t = seconds_since(t0);
    v.require(coherent_dev <= 1e-10, "coherent Bloch sum relative deviation " + fmt("%.2e", coherent_dev));
    v.require(cat_gap > 0.0, "cat N^2 - Bloch sum min " + fmt("%.4g", cat_gap) + " > 0");
    v.require(t < 10.0, "runtime " + fmt("%.2f", t) + " s < 10 s");
    return v;
}

Verdict closed_forms() {
    Verdict v;
    std::mt19937_64 rng(303);
    const int n = 10;
    double d_dscs = 0.0, d_norm = 0.0, d_cat_m = 0.0, d_pur = 0.0, d_nod = 0.0;
    for (int d : {2, 3, 4}) {
        auto b = make_basis(n, d);
        for (int rep = 0; rep < 3; ++rep) {
            const auto z = random_point(d, rng);
            d_dscs = std::max(d_dscs, compute_moments(dscs(b, z)).max_deviation(dscs_moments(z, n)));

            // projected norm of the normalized coherent state vs closed form
            const auto proj = project_even(dscs(b, z));
            d_norm = std::max(d_norm, std::abs(proj.norm2 - dcat_norm2(z, n)));
            PhasePoint zc;
            for (const auto& c : z.z) zc.z.push_back(c / z.z[0]);
            if (d == 2) d_norm = std::max(d_norm, std::abs(proj.norm2 - cat2_norm2(zc.z[1], n)));
            if (d == 3) d_norm = std::max(d_norm, std::abs(proj.norm2 - cat3_norm2(zc.z[1], zc.z[2], n)));

            auto cat = dcat(b, z);
            const Moments m = compute_moments(cat);
            d_cat_m = std::max(d_cat_m, m.max_deviation(dcat_moments(z, n)));
            d_pur = std::max(d_pur, std::abs(one_qudit_purity(m) - dcat_one_qudit_purity(z, n)));
            d_pur = std::max(d_pur, std::abs(one_qudit_rdm(cat).purity() - dcat_one_qudit_purity(z, n)));
            d_pur = std::max(d_pur, std::abs(two_qudit_purity(m) - dcat_two_qudit_purity(z, n)));
        }

        PhaseVector ph;
        for (int i = 0; i < d; ++i) ph.phases.push_back(std::uniform_real_distribution<double>(0, 6.28)(rng));
        auto nod = nodon(b, ph);
        const Moments m = compute_moments(nod);
        d_nod = std::max(d_nod, m.max_deviation(nodon_moments(n, d)));
        const auto rho1 = one_qudit_rdm(m).matrix();
        d_nod = std::max(d_nod, (rho1 - Eigen::MatrixXcd::Identity(d, d) / d).cwiseAbs().maxCoeff());
        const auto l2 = entropies(two_qudit_rdm(m), EntropyKind::TwoAtom, n, d).linear_entropy;
        d_nod = std::max(d_nod, std::abs(l2 - d / (d + 1.0)));
        d_nod = std::max(d_nod, std::abs(xi_total(m) - 1.0));
    }
    v.require(d_dscs <= 1e-9, "coherent moments " + fmt("%.2e", d_dscs));
    v.require(d_norm <= 1e-9, "cat norms " + fmt("%.2e", d_norm));
    v.require(d_cat_m <= 1e-9, "cat moments " + fmt("%.2e", d_cat_m));
    v.require(d_pur <= 1e-9, "cat purities " + fmt("%.2e", d_pur));
    v.require(d_nod <= 1e-9, "nodon values " + fmt("%.2e", d_nod));
    return v;
}

Verdict squeezing_reduction() {
    Verdict v;
    std::mt19937_64 rng(404);
    double d_pair = 0.0, d_grid = 0.0;
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 2 + rep % 11;
        auto psi = random_state(make_basis(n, 2), rng, true);
        const double xi = su2_xi(psi);
        d_pair = std::max(d_pair, std::abs(xi_pair(psi, 1, 0) - xi));
        d_grid = std::max(d_grid, std::abs(su2_xi_theta_grid(psi, 10000) - xi));
    }
    v.require(d_pair <= 1e-10, "pairwise vs SU(2) " + fmt("%.2e", d_pair) + " <= 1e-10");
    v.require(d_grid <= 1e-6, "theta grid vs SU(2) " + fmt("%.2e", d_grid) + " <= 1e-6");
    return v;
}

Verdict phase_diagram() {
    using lmg::Phase;
    Verdict v;
    for (double eps : {1.0, 2.0, 0.5}) {
        const double l1 = eps / 2, l2 = 1.5 * eps;
        const double a = lmg::thermo_energy_branch(Phase::I, eps, l1);
        const double b = lmg::thermo_energy_branch(Phase::II, eps, l1);
        const double c = lmg::thermo_energy_branch(Phase::II, eps, l2);
        const double e = lmg::thermo_energy_branch(Phase::III, eps, l2);
        // E = -eps at eps/2 and -4 eps/3 at 3 eps/2
        v.require(a == -eps && b == -eps, "continuity at eps/2 (eps=" + fmt("%g", eps) + ")");
        v.require(c == e && std::abs(c + 4.0 * eps / 3.0) <= 4e-16 * eps,
                  "continuity at 3eps/2 (eps=" + fmt("%g", eps) + ")");
        // first derivatives meet, second derivatives jump
        const double h = 1e-6 * eps;
        const double s1 = (lmg::thermo_energy_branch(Phase::II, eps, l1 + h) - b) / h;
        const double s2 = (c - lmg::thermo_energy_branch(Phase::II, eps, l2 - h)) / h;
        const double s3 = (lmg::thermo_energy_branch(Phase::III, eps, l2 + h) - e) / h;
        v.require(std::abs(s1) < 1e-5 && std::abs(s2 - s3) < 1e-5, "first derivatives continuous");
        const double j1 = lmg::thermo_energy_d2(Phase::II, eps, l1) - lmg::thermo_energy_d2(Phase::I, eps, l1);
        const double j2 = lmg::thermo_energy_d2(Phase::III, eps, l2) - lmg::thermo_energy_d2(Phase::II, eps, l2);
        v.require(std::abs(j1) > 1e-3 / eps && std::abs(j2) > 1e-3 / eps,
                  "second-derivative jumps " + fmt("%.4g", j1) + ", " + fmt("%.4g", j2));
    }
    for (double lambda : {0.25, 1.0, 3.0}) {
        const lmg::LmgParams p{1.0, lambda, 50};
        const double num = lmg::ground_state(p).energy;
        const double th = lmg::thermo_energy(p);
        v.require(std::abs(num - th) <= 0.02, "N=50 lambda=" + fmt("%g", lambda) + ": |E - E_th| = " +
                                                  fmt("%.4f", std::abs(num - th)) + " <= 0.02");
    }
    return v;
}

// sweep-based criteria share one N = 50 run
struct SweepData {
    std::vector<double> lambda;
    std::vector<sweep::SweepRecord> num, var;
    double seconds = 0.0;
};

SweepData run_default_sweep() {
    sweep::SweepConfig cfg;
    cfg.n_particles = 50;
    cfg.lambdas = sweep::default_grid();
    cfg.jobs = 1;
    omp_set_num_threads(1);
    const auto t0 = Clock::now();
    auto recs = sweep::run_sweep(cfg);
    SweepData out;
    out.seconds = seconds_since(t0);
    omp_set_num_threads(omp_get_num_procs());
    for (const auto& r : recs) {
        if (r.source == sweep::Source::Numerical) {
            out.num.push_back(r);
            out.lambda.push_back(r.lambda);
        } else {
            out.var.push_back(r);
        }
    }
    return out;
}

Verdict level_entropy_sweep(const SweepData& s) {
    Verdict v;
    double phase1 = 0.0, l3_var = 0.0, l3_num = 0.0;
    for (std::size_t k = 0; k < s.lambda.size(); ++k) {
        const double l = s.lambda[k];
        if (l < 0.5)
            for (const auto& x : s.var[k].L_level) phase1 = std::max(phase1, std::abs(*x));
        if (l > 0.5 && l <= 1.5) {
            l3_var = std::max(l3_var, *s.var[k].L_level[2]);
            l3_num = std::max(l3_num, *s.num[k].L_level[2]);
        }
    }
    v.require(phase1 <= 1e-12, "variational level entropies in phase I max " + fmt("%.2e", phase1));
    v.require(l3_var < 0.05, "variational level-3 entropy in phase II max " + fmt("%.3g", l3_var) + " < 0.05");
    v.notes.push_back("(numerical level-3 entropy in phase II max " + fmt("%.3f", l3_num) + ")");
    const double target = 1.0 - 2.0 / std::sqrt(std::numbers::pi * 50.0);
    for (int i = 0; i < 3; ++i) {
        const double l = *s.var.back().L_level[static_cast<std::size_t>(i)];
        v.require(std::abs(l - target) <= 0.03,
                  "lambda=6 level " + std::to_string(i + 1) + ": " + fmt("%.4f", l) + " vs " + fmt("%.4f", target));
    }
    v.require(s.lambda.size() == 121 && s.lambda.back() == 6.0, "121 lambda points on [0, 6]");
    v.require(s.seconds < 120.0, "single-threaded sweep " + fmt("%.1f", s.seconds) + " s < 120 s");
    return v;
}

double max_slope(const SweepData& s, const std::vector<sweep::SweepRecord>& r, double center) {
    double m = 0.0;
    for (std::size_t k = 1; k < s.lambda.size(); ++k)
        if (std::abs(s.lambda[k - 1] - center) <= 0.25 && std::abs(s.lambda[k] - center) <= 0.25)
            m = std::max(m, std::abs(*r[k].L1_atom - *r[k - 1].L1_atom) / (s.lambda[k] - s.lambda[k - 1]));
    return m;
}

Verdict atom_entropy_sweep(const SweepData& s) {
    Verdict v;
    for (const auto* src : {&s.num, &s.var}) {
        const char* name = src == &s.num ? "numerical" : "variational";
        const auto& last = src->back();
        v.require(*last.L1_atom > 0.95, std::string(name) + " one-atom " + fmt("%.4f", *last.L1_atom) + " > 0.95");
        v.require(std::abs(*last.L2_atom - 5.0 / 6.0) <= 0.03,
                  std::string(name) + " two-atom " + fmt("%.4f", *last.L2_atom) + " vs 5/6");
        const double a = max_slope(s, *src, 0.5), b = max_slope(s, *src, 1.5);
        v.require(a > b, std::string(name) + " max slope near 0.5 " + fmt("%.3f", a) + " > near 1.5 " + fmt("%.3f", b));
    }
    return v;
}

Verdict squeezing_sweep(const SweepData& s) {
    Verdict v;
    double worst = 0.0;
    std::vector<double> minima;
    const auto& n = s.num;
    for (std::size_t k = 0; k < s.lambda.size(); ++k) {
        if (s.lambda[k] <= 0.0) continue;
        worst = std::max(worst, *n[k].xi2_total);
        if (k + 1 < s.lambda.size() && *n[k].xi2_total < *n[k - 1].xi2_total && *n[k].xi2_total < *n[k + 1].xi2_total)
            minima.push_back(s.lambda[k]);
    }
    v.require(worst < 1.0, "numerical squeezing max over lambda > 0: " + fmt("%.4f", worst) + " < 1");
    std::string list;
    for (double m : minima) list += fmt(" %g", m);
    v.notes.push_back("(numerical local minima at" + list + ")");
    for (double c : {0.5, 1.5}) {
        const bool near = std::any_of(minima.begin(), minima.end(), [&](double m) { return std::abs(m - c) <= 0.1 + 1e-12; });
        v.require(near, "numerical local minimum within 0.1 of " + fmt("%g", c));
    }

    bool outside = false, hit1 = false, hit2 = false;
    double min_var = 1e300;
    for (std::size_t k = 0; k < s.lambda.size(); ++k) {
        const double l = s.lambda[k], x = *s.var[k].xi2_total;
        min_var = std::min(min_var, x);
        if (x >= 0.99) continue;
        if (std::abs(l - 0.5) <= 0.5) hit1 = true;
        else if (std::abs(l - 1.5) <= 0.5) hit2 = true;
        else outside = true;
    }
    v.require(hit1 && hit2, "variational squeezing (xi^2 < 0.99) seen near both critical points");
    v.require(!outside, "variational squeezing confined to |lambda - lambda_c| <= 0.5 (min " + fmt("%.4f", min_var) + ")");
    return v;
}

Verdict asymptotics() {
    Verdict v;
    const int n = 100;
    auto b = make_basis(n, 3);
    const double s = 1.0 / std::sqrt(2.0);
    const auto psi = dscs(b, PhasePoint{{1.0, s, s}});
    const double l = linear_entropy(level_purity(psi, 0), EntropyKind::Level, n, 3);
    const double lc = linear_entropy(dscs_level_purity(1.0, 1.0, n), EntropyKind::Level, n, 3);
    const double target = 1.0 - 1.0 / std::sqrt(std::numbers::pi * n);
    v.require(std::abs(l - target) <= 2.0 / n, "coherent level entropy at N=100 " + fmt("%.5f", l) + " vs " +
                                                  fmt("%.5f", target) + " (closed form " + fmt("%.5f", lc) + ")");

    const int n2 = 200;
    const auto cat = dcat(make_basis(n2, 3), PhasePoint::chart3(1.0, 1.0));
    const double s2 = entropies(two_qudit_rdm(compute_moments(cat)), EntropyKind::TwoAtom, n2, 3).von_neumann_entropy;
    v.require(std::abs(s2 - 0.62) <= 0.01, "cat two-atom von Neumann entropy at N=200 " + fmt("%.4f", s2) + " vs 0.62");
    return v;
}

Verdict determinism() {
    Verdict v;
    std::string tmpl = (fs::temp_directory_path() / "symqudit_accept_XXXXXX").string();
    const fs::path dir = mkdtemp(tmpl.data());
    auto sweep_to = [&](const std::string& name, const char* jobs) {
        const std::string path = (dir / name).string();
        std::vector<std::string> args{"symqudit", "sweep", "--jobs", jobs, "--out", path};
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        std::ifstream f(path, std::ios::binary);
        std::stringstream text;
        text << f.rdbuf();
        return std::make_pair(code, text.str());
    };
    const auto a = sweep_to("a.csv", "1");
    const auto b = sweep_to("b.csv", "1");
    const auto c = sweep_to("c.csv", "4");
    fs::remove_all(dir);
    v.require(a.first == 0 && b.first == 0 && c.first == 0, "default sweeps exit 0");
    v.require(!a.second.empty() && a.second == b.second, "repeat run byte-identical (" + std::to_string(a.second.size()) + " bytes)");
    v.require(a.second == c.second, "--jobs 1 vs --jobs 4 byte-identical");
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Verdict()> run;
    };
    SweepData sweep_data;
    bool have_sweep = false;
    auto data = [&]() -> const SweepData& {
        if (!have_sweep) sweep_data = run_default_sweep(), have_sweep = true;
        return sweep_data;
    };
    const std::vector<Criterion> criteria{
        {1, "RDMs from collective moments match the partial-trace oracle", oracle_equivalence},
        {2, "Casimir and Bloch-sum identities", casimir_bloch},
        {3, "closed forms for coherent, cat and nodon states at N=10", closed_forms},
        {4, "two-level squeezing reduction", squeezing_reduction},
        {5, "phase diagram and finite-N energies", phase_diagram},
        {6, "level entropies along the N=50 sweep", [&] { return level_entropy_sweep(data()); }},
        {7, "atom entropies along the N=50 sweep", [&] { return atom_entropy_sweep(data()); }},
        {8, "squeezing along the N=50 sweep", [&] { return squeezing_sweep(data()); }},
        {9, "large-N asymptotics", asymptotics},
        {10, "byte-identical sweep output", determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.notes.push_back(std::string("exception: ") + e.what());
        }
        if (!v.pass) ++failed;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << '\n';
        for (const auto& n : v.notes) std::cout << "    " << n << '\n';
        std::cout.flush();
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
