#include "helpers.hpp"

#include "symqudit/errors.hpp"
#include "symqudit/lmg.hpp"

using namespace symqudit;
using namespace symqudit::lmg;

namespace {

Eigen::MatrixXd dense(const kernels::CsrMatrix& h) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.rows), static_cast<Eigen::Index>(h.cols));
    for (std::size_t r = 0; r < h.rows; ++r)
        for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p)
            m(static_cast<Eigen::Index>(r), h.col[p]) += h.val[p];
    return m;
}

Eigen::MatrixXd parity_matrix(const SymmetricBasis& b, int level) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        p(k, k) = b.occupation(static_cast<std::size_t>(k))[static_cast<std::size_t>(level)] % 2 ? -1.0 : 1.0;
    return p;
}

double odd_gap(int n, double lambda) {
    auto b = make_basis(n, 3);
    const LmgParams p{1.0, lambda, n};
    const double even = sector_ground_energy(*b, p, ParityString{{0, 0}});
    double odd = std::numeric_limits<double>::infinity();
    for (auto bits : {ParityString{{1, 0}}, ParityString{{0, 1}}, ParityString{{1, 1}}})
        odd = std::min(odd, sector_ground_energy(*b, p, bits));
    return odd - even;
}

}  // namespace

TEST_CASE("hamiltonian against dense collective operators") {
    for (int n : {3, 5}) {
        auto b = make_basis(n, 3);
        const LmgParams p{1.3, 0.7, n};
        Eigen::MatrixXd ref = (p.epsilon / n) * (testing::dense_sij(*b, {2, 2}) - testing::dense_sij(*b, {0, 0}));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                Eigen::MatrixXd s = testing::dense_sij(*b, {i, j});
                ref -= p.lambda / (n * (n - 1.0)) * s * s;
            }
        const Eigen::MatrixXd h = dense(build_hamiltonian(*b, p));
        CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("hamiltonian structure") {
    const int n = 6;
    auto b = make_basis(n, 3);
    auto h = build_hamiltonian(*b, {1.0, 1.4, n});
    for (std::size_t r = 0; r < h.rows; ++r) {
        auto m = b->occupation(r);
        for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p) {
            CHECK(h.at(r, h.col[p]) == doctest::Approx(h.at(h.col[p], r)));
            auto c = b->occupation(h.col[p]);
            int moved = 0;
            bool ok = true;
            for (int l = 0; l < 3; ++l) {
                const int diff = m[static_cast<std::size_t>(l)] - c[static_cast<std::size_t>(l)];
                moved += std::abs(diff);
                ok = ok && (diff == 0 || std::abs(diff) == 2);
            }
            CHECK(ok);
            CHECK((moved == 0 || moved == 4));
        }
    }
    const Eigen::MatrixXd hd = dense(h);
    for (int j = 0; j < 3; ++j) {
        const Eigen::MatrixXd pj = parity_matrix(*b, j);
        CHECK((hd * pj - pj * hd).cwiseAbs().maxCoeff() < 1e-14);
    }

    auto h0 = build_hamiltonian(*b, {1.0, 0.0, n});
    for (std::size_t r = 0; r < h0.rows; ++r)
        for (std::size_t p = h0.row_ptr[r]; p < h0.row_ptr[r + 1]; ++p)
            if (h0.col[p] != r) CHECK(h0.val[p] == 0.0);

    CHECK_THROWS_AS(build_hamiltonian(SymmetricBasis(4, 2), {1.0, 1.0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(build_hamiltonian(SymmetricBasis(4, 3), {1.0, 1.0, 5}), std::invalid_argument);
}

TEST_CASE("non-interacting ground state") {
    auto gs = ground_state({1.0, 0.0, 10});
    CHECK(gs.energy == doctest::Approx(-1.0));
    CHECK(std::abs(gs.state[0] - Complex(1.0)) < 1e-12);
    for (double sgn : gs.parity_signature) CHECK(sgn == doctest::Approx(1.0));
}

TEST_CASE("even sector holds the full-space ground state") {
    for (int n : {3, 4, 7, 12}) {
        auto b = make_basis(n, 3);
        for (double lambda : {0.2, 0.5, 0.9, 1.5, 2.5, 6.0}) {
            const LmgParams p{1.0, lambda, n};
            auto even = ground_state(b, p);
            SolverOptions full;
            full.sector = Sector::Full;
            auto whole = ground_state(b, p, full);
            // Full-space oracle: plain dense diagonalization without any sector logic.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(build_hamiltonian(*b, p)));
            CHECK(even.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
            CHECK(whole.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
            CHECK(even.state.norm2() == doctest::Approx(1.0));
            for (std::size_t j = 1; j < even.parity_signature.size(); ++j)
                CHECK(std::abs(even.parity_signature[j] - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("lanczos agrees with the dense solver") {
    for (double lambda : {0.3, 1.0, 2.2}) {
        auto b = make_basis(40, 3);
        const LmgParams p{1.0, lambda, 40};
        auto dense_gs = ground_state(b, p);
        SolverOptions opts;
        opts.force_lanczos = true;
        auto lz = ground_state(b, p, opts);
        CHECK(lz.energy == doctest::Approx(dense_gs.energy).epsilon(1e-10));
        CHECK(testing::ray_distance(lz.state, dense_gs.state) < 1e-6);
        opts.exec = kernels::Exec::Serial;
        auto lz_serial = ground_state(b, p, opts);
        CHECK(lz_serial.energy == doctest::Approx(lz.energy).epsilon(1e-12));
    }
    auto h = restrict_to(build_hamiltonian(SymmetricBasis(60, 3), {1.0, 2.0, 60}),
                         parity_sector(SymmetricBasis(60, 3), ParityString{{0, 0}}));
    CHECK_THROWS_AS(lanczos_lowest(h, 1e-14, 3, kernels::Exec::Serial), ConvergenceError);
}

TEST_CASE("coupling lowers the ground energy") {
    auto b = make_basis(20, 3);
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda = 0.0; lambda <= 4.0; lambda += 0.25) {
        const double e = ground_state(b, {1.0, lambda, 20}).energy;
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}

TEST_CASE("finite-N energy approaches the thermodynamic limit") {
    for (double lambda : {0.25, 1.0, 3.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {10, 20, 40}) {
            const LmgParams p{1.0, lambda, n};
            const double gap = std::abs(ground_state(p).energy - thermo_energy(p));
            CHECK(gap < prev);
            prev = gap;
        }
    }
    const double e_inf = -103.0 / 30.0;
    CHECK(thermo_energy({1.0, 5.0, 50}) == doctest::Approx(e_inf));
    const double d25 = std::abs(ground_state({1.0, 5.0, 25}).energy - e_inf);
    const double d50 = std::abs(ground_state({1.0, 5.0, 50}).energy - e_inf);
    CHECK(d50 < 3.0 / 50);
    CHECK(d50 * 50 == doctest::Approx(d25 * 25).epsilon(0.15));
}

TEST_CASE("odd sectors close in on the even ground state") {
    for (double lambda : {1.0, 3.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {10, 20, 40}) {
            const double gap = odd_gap(n, lambda);
            CHECK(gap > 0.0);
            CHECK(gap < prev);
            prev = gap;
        }
    }
}

TEST_CASE("energy surface") {
    const LmgParams p{1.0, 1.7, 10};
    CHECK(energy_surface(0.0, 0.0, p) == doctest::Approx(-1.0));
    CHECK(energy_surface(0.0, 0.0, {2.5, 3.0, 10}) == doctest::Approx(-2.5));
    const Complex a(0.4, 0.3), bt(-0.8, 0.6);
    const double e = energy_surface(a, bt, p);
    CHECK(energy_surface(-a, bt, p) == doctest::Approx(e));
    CHECK(energy_surface(a, -bt, p) == doctest::Approx(e));
    CHECK(energy_surface(-a, -bt, p) == doctest::Approx(e));

    for (double lambda : {0.3, 0.5, 1.0, 1.5, 2.0, 7.0}) {
        const LmgParams q{1.0, lambda, 10};
        auto sp = stationary_point(q);
        CHECK(energy_surface(sp.alpha0, sp.beta0, q) == doctest::Approx(thermo_energy(q)).epsilon(1e-12));
    }
}

TEST_CASE("coarse grid confirms the stationary point") {
    for (double lambda : {0.3, 1.0, 2.5}) {
        const LmgParams q{1.0, lambda, 10};
        double best = std::numeric_limits<double>::infinity();
        double ba = 0.0, bb = 0.0;
        for (int i = 0; i <= 200; ++i)
            for (int j = 0; j <= 200; ++j) {
                const double a = 0.01 * i, b = 0.01 * j;
                const double e = energy_surface(a, b, q);
                if (e < best) best = e, ba = a, bb = b;
            }
        auto sp = stationary_point(q);
        CHECK(best >= thermo_energy(q) - 1e-12);
        CHECK(best - thermo_energy(q) < 1e-3);
        CHECK(std::abs(ba - sp.alpha0) <= 0.011);
        CHECK(std::abs(bb - sp.beta0) <= 0.011);
    }
}

TEST_CASE("stationary points and phases") {
    auto sp = stationary_point({1.0, 0.3, 10});
    CHECK(sp.phase == Phase::I);
    CHECK(sp.alpha0 == 0.0);
    CHECK(sp.beta0 == 0.0);

    sp = stationary_point({1.0, 1.0, 10});
    CHECK(sp.phase == Phase::II);
    CHECK(sp.alpha0 == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(sp.beta0 == 0.0);

    sp = stationary_point({1.0, 2.0, 10});
    CHECK(sp.phase == Phase::III);
    CHECK(sp.beta0 == doctest::Approx(std::sqrt(1.0 / 7.0)));

    sp = stationary_point({1.0, 1e7, 10});
    CHECK(sp.alpha0 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sp.beta0 == doctest::Approx(1.0).epsilon(1e-6));

    // Continuity across both boundaries.
    for (double lc : {0.5, 1.5}) {
        auto lo = stationary_point({1.0, lc - 1e-9, 10});
        auto hi = stationary_point({1.0, lc + 1e-9, 10});
        CHECK(lo.phase != hi.phase);
        CHECK(std::abs(lo.alpha0 - hi.alpha0) < 1e-4);
        CHECK(std::abs(lo.beta0 - hi.beta0) < 1e-4);
    }
    CHECK(std::string(phase_name(Phase::III)) == "III");
}

TEST_CASE("thermodynamic energy") {
    CHECK(thermo_energy({1.0, 0.0, 10}) == -1.0);
    CHECK(thermo_energy({1.0, 0.25, 10}) == doctest::Approx(-1.0));
    CHECK(thermo_energy_branch(Phase::II, 1.0, 0.5) == doctest::Approx(-1.0));
    CHECK(thermo_energy_branch(Phase::II, 1.0, 1.5) == doctest::Approx(-4.0 / 3.0));
    CHECK(thermo_energy_branch(Phase::III, 1.0, 1.5) == doctest::Approx(-4.0 / 3.0));
    CHECK(thermo_energy_d2(Phase::I, 1.0, 0.5) != doctest::Approx(thermo_energy_d2(Phase::II, 1.0, 0.5)));
    CHECK(thermo_energy_d2(Phase::II, 1.0, 1.5) != doctest::Approx(thermo_energy_d2(Phase::III, 1.0, 1.5)));

    // Analytic second derivatives against central differences.
    for (auto [ph, l] : {std::pair{Phase::II, 1.0}, std::pair{Phase::III, 2.5}}) {
        const double h = 1e-4;
        const double fd = (thermo_energy_branch(ph, 1.0, l + h) - 2 * thermo_energy_branch(ph, 1.0, l) +
                           thermo_energy_branch(ph, 1.0, l - h)) / (h * h);
        CHECK(thermo_energy_d2(ph, 1.0, l) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("variational cat") {
    auto b = make_basis(16, 3);
    auto cat = variational_cat(b, {1.0, 0.4, 16});
    CHECK(std::abs(cat[0] - Complex(1.0)) < 1e-12);
    for (double lambda : {0.3, 0.8, 1.5, 3.0, 6.0}) {
        const LmgParams p{1.0, lambda, 16};
        const double var = energy_expval(build_hamiltonian(*b, p), variational_cat(b, p));
        CHECK(var >= ground_state(b, p).energy - 1e-12);
    }
    CHECK_THROWS_AS(variational_cat(make_basis(4, 2), {1.0, 1.0, 4}), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(LmgParams({0.0, 1.0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LmgParams({1.0, -1.0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LmgParams({1.0, 1.0, 2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ground_state({1.0, 1.0, 2}), std::invalid_argument);
}
