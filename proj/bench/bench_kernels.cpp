// Serial vs OpenMP kernels. Usage: bench_kernels [N] [reps]
// Prints best-of-reps wall time per kernel and confirms the outputs agree.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "symqudit/kernels.hpp"
#include "symqudit/lmg.hpp"
#include "symqudit/moments.hpp"

using namespace symqudit;

namespace {

double best_ms(int reps, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-12s %10.3f %10.3f %8.2fx  %s\n", name, serial, parallel, serial / parallel, same ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 200;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    auto basis = make_basis(n, 3);
    std::printf("N=%d D=3 dim=%zu threads=%d reps=%d\n", n, basis->dim(), kernels::max_threads(), reps);
    std::printf("%-12s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    SymmetricState psi(basis);
    for (auto& c : psi.coeffs()) c = {g(rng), g(rng)};
    psi.normalize();
    const auto& v = psi.coeffs();

    std::vector<Complex> a(v.size()), b(v.size());
    const double s1 = best_ms(reps, [&] { kernels::apply_sij(*basis, v, {1, 2}, a, kernels::Exec::Serial); });
    const double p1 = best_ms(reps, [&] { kernels::apply_sij(*basis, v, {1, 2}, b, kernels::Exec::Parallel); });
    row("apply_sij", s1, p1, a == b);

    Complex ia, ib;
    const double s2 = best_ms(reps, [&] { ia = kernels::inner(v, a, kernels::Exec::Serial); });
    const double p2 = best_ms(reps, [&] { ib = kernels::inner(v, a, kernels::Exec::Parallel); });
    row("inner", s2, p2, std::abs(ia - ib) <= 1e-12 * (1.0 + std::abs(ia)));

    Moments ma, mb;
    const double s3 = best_ms(reps, [&] { ma = compute_moments(psi, kernels::Exec::Serial); });
    const double p3 = best_ms(reps, [&] { mb = compute_moments(psi, kernels::Exec::Parallel); });
    row("moments", s3, p3, ma.max_deviation(mb) == 0.0);

    const auto h = lmg::build_hamiltonian(*basis, {1.0, 2.0, n});
    std::vector<double> x(h.cols), ya(h.rows), yb(h.rows);
    for (auto& e : x) e = g(rng);
    const double s4 = best_ms(reps, [&] { kernels::matvec(h, x, ya, kernels::Exec::Serial); });
    const double p4 = best_ms(reps, [&] { kernels::matvec(h, x, yb, kernels::Exec::Parallel); });
    row("matvec", s4, p4, ya == yb);
    return 0;
}
