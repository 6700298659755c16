#include "helpers.hpp"

#include <omp.h>

#include <cstring>

#include "symqudit/kernels.hpp"
#include "symqudit/lmg.hpp"
#include "symqudit/moments.hpp"

using namespace symqudit;
using kernels::Exec;

namespace {

bool bitwise_equal(std::span<const Complex> a, std::span<const Complex> b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

struct ThreadScope {
    int saved = omp_get_max_threads();
    explicit ThreadScope(int n) { omp_set_num_threads(n); }
    ~ThreadScope() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("apply_sij parallel gather equals serial scatter bitwise") {
    std::mt19937_64 rng(3);
    for (int d : {2, 3, 5}) {
        auto b = make_basis(12, d);
        auto psi = testing::random_state(b, rng);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                CVector s(b->dim()), p(b->dim());
                kernels::apply_sij(*b, psi.coeffs(), {i, j}, s, Exec::Serial);
                for (int threads : {1, 3, 7}) {
                    ThreadScope scope(threads);
                    kernels::apply_sij(*b, psi.coeffs(), {i, j}, p, Exec::Parallel);
                    CHECK(bitwise_equal(s, p));
                }
            }
    }
}

TEST_CASE("apply_all layout") {
    std::mt19937_64 rng(4);
    auto b = make_basis(5, 3);
    auto psi = testing::random_state(b, rng);
    auto all = kernels::apply_all(*b, psi.coeffs(), Exec::Parallel);
    REQUIRE(all.size() == 9 * b->dim());
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            auto one = apply_sij(psi, {k, l});
            std::span<const Complex> slot(all.data() + static_cast<std::size_t>(k * 3 + l) * b->dim(), b->dim());
            CHECK(bitwise_equal(slot, one.coeffs()));
        }
}

TEST_CASE("blocked reductions") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (std::size_t n : {0u, 1u, 511u, 512u, 513u, 5000u}) {
        CVector a(n), c(n);
        std::vector<double> x(n), y(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = {g(rng), g(rng)};
            c[k] = {g(rng), g(rng)};
            x[k] = g(rng);
            y[k] = g(rng);
        }
        const Complex s = kernels::inner(a, c, Exec::Serial);
        const double ds = kernels::dot(x, y, Exec::Serial);
        Complex p1, p7;
        double d1, d7;
        {
            ThreadScope scope(1);
            p1 = kernels::inner(a, c, Exec::Parallel);
            d1 = kernels::dot(x, y, Exec::Parallel);
        }
        {
            ThreadScope scope(7);
            p7 = kernels::inner(a, c, Exec::Parallel);
            d7 = kernels::dot(x, y, Exec::Parallel);
        }
        // Fixed block partition: identical for any thread count.
        CHECK(p1 == p7);
        CHECK(d1 == d7);
        CHECK(std::abs(p1 - s) <= 1e-12 * (1.0 + static_cast<double>(n)));
        CHECK(std::abs(d1 - ds) <= 1e-12 * (1.0 + static_cast<double>(n)));
    }
    CHECK_THROWS_AS(kernels::inner(CVector(2), CVector(3), Exec::Serial), std::invalid_argument);
}

TEST_CASE("moments do not depend on the execution path") {
    std::mt19937_64 rng(9);
    auto b = make_basis(20, 3);
    auto psi = testing::random_state(b, rng);
    const Moments serial = compute_moments(psi, Exec::Serial);
    for (int threads : {1, 4}) {
        ThreadScope scope(threads);
        const Moments par = compute_moments(psi, Exec::Parallel);
        CHECK(bitwise_equal(serial.linear, par.linear));
        CHECK(bitwise_equal(serial.quadratic, par.quadratic));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(serial.s(i, j) - expval_sij(psi, {i, j})) < 1e-12 * 20);
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    CHECK(std::abs(serial.ss(i, j, k, l) - expval_sij_skl(psi, {i, j}, {k, l})) < 1e-10);
        }
}

TEST_CASE("csr matvec") {
    auto b = make_basis(14, 3);
    auto h = lmg::build_hamiltonian(*b, {1.0, 0.8, 14});
    std::vector<double> x(h.cols);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::sin(0.3 * static_cast<double>(k) + 1.0);
    std::vector<double> ys(h.rows), yp(h.rows);
    kernels::matvec(h, x, ys, Exec::Serial);
    {
        ThreadScope scope(5);
        kernels::matvec(h, x, yp, Exec::Parallel);
    }
    CHECK(std::memcmp(ys.data(), yp.data(), ys.size() * sizeof(double)) == 0);
    for (std::size_t r = 0; r < h.rows; r += 7) {
        double ref = 0.0;
        for (std::size_t c = 0; c < h.cols; ++c) ref += h.at(r, c) * x[c];
        CHECK(ys[r] == doctest::Approx(ref).epsilon(1e-13));
    }
    std::vector<double> wrong(h.rows + 1);
    CHECK_THROWS_AS(kernels::matvec(h, wrong, ys, Exec::Serial), std::invalid_argument);
}
