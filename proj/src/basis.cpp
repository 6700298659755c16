#include "symqudit/basis.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "symqudit/errors.hpp"
#include "symqudit/kernels.hpp"

namespace symqudit {

namespace {

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
    return __builtin_mul_overflow(a, b, &out);
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    // C(n, i) = C(n, i-1) * (n-i+1) / i; divide through the gcd first so the
    // intermediate product only overflows when the result is close to it.
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        std::uint64_t den = static_cast<std::uint64_t>(i);
        const std::uint64_t g1 = std::gcd(result, den);
        result /= g1;
        den /= g1;
        const std::uint64_t g2 = std::gcd(num, den);
        num /= g2;
        den /= g2;
        std::uint64_t next = 0;
        if (mul_overflows(result, num, next)) {
            throw CapacityError("binomial C(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds 64-bit range");
        }
        result = next / den;
    }
    return result;
}

std::uint64_t dimension(int n_particles, int n_levels) {
    if (n_particles < 0 || n_levels < 1) {
        throw std::invalid_argument("dimension requires N >= 0 and D >= 1");
    }
    return binomial(n_particles + n_levels - 1, n_levels - 1);
}

int Occupation::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::vector<Occupation> enumerate(int n_particles, int n_levels) {
    const SymmetricBasis basis(n_particles, n_levels);
    std::vector<Occupation> out;
    out.reserve(basis.dim());
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        auto occ = basis.occupation(k);
        out.push_back(Occupation{{occ.begin(), occ.end()}});
    }
    return out;
}

SymmetricBasis::SymmetricBasis(int n_particles, int n_levels)
    : n_particles_(n_particles), n_levels_(n_levels), dim_(0) {
    if (n_particles < 1 || n_levels < 2) {
        throw std::invalid_argument("SymmetricBasis requires N >= 1 and D >= 2");
    }
    const std::uint64_t dim = dimension(n_particles, n_levels);
    if (dim > max_dim) {
        throw CapacityError("symmetric sector dimension " + std::to_string(dim) +
                            " exceeds the supported 2^32 bound");
    }
    dim_ = static_cast<std::size_t>(dim);

    const int rows = n_particles + n_levels + 1;
    binom_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(n_levels + 1));
    for (int a = 0; a < rows; ++a) {
        for (int b = 0; b <= n_levels; ++b) {
            binom_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_levels + 1) +
                   static_cast<std::size_t>(b)] = binomial(a, b);
        }
    }

    // Walk the occupations in descending lexicographic order.
    table_.resize(dim_ * static_cast<std::size_t>(n_levels));
    std::vector<int> occ(static_cast<std::size_t>(n_levels), 0);
    occ[0] = n_particles;
    const auto last = static_cast<std::size_t>(n_levels - 1);
    for (std::size_t k = 0; k < dim_; ++k) {
        std::copy(occ.begin(), occ.end(), table_.begin() + static_cast<std::ptrdiff_t>(k * occ.size()));
        if (k + 1 == dim_) break;
        // Rightmost non-last level with a particle gives one to its right
        // neighbour, which collects everything that sat further right.
        std::size_t p = last - 1;
        while (occ[p] == 0) --p;
        const int tail = occ[last];
        occ[last] = 0;
        --occ[p];
        occ[p + 1] = tail + 1;
    }
}

template <typename Entry>
std::size_t SymmetricBasis::rank_impl(Entry entry) const {
    std::size_t index = 0;
    int remaining = n_particles_;
    for (int l = 0; l + 1 < n_levels_; ++l) {
        const int n = entry(l);
        const int m = n_levels_ - l - 1;
        // Occupations sharing the prefix but with more particles in level l:
        // at most remaining-n-1 particles spread over the m later levels.
        if (remaining > n) index += static_cast<std::size_t>(choose(remaining - n - 1 + m, m));
        remaining -= n;
    }
    return index;
}

std::size_t SymmetricBasis::rank(std::span<const int> counts) const {
    if (counts.size() != static_cast<std::size_t>(n_levels_)) {
        throw std::invalid_argument("occupation length does not match the number of levels");
    }
    int total = 0;
    for (const int c : counts) {
        if (c < 0) throw std::invalid_argument("occupation has a negative entry");
        total += c;
    }
    if (total != n_particles_) {
        throw std::invalid_argument("occupation total " + std::to_string(total) +
                                    " does not match N = " + std::to_string(n_particles_));
    }
    return rank_impl([&](int l) { return counts[static_cast<std::size_t>(l)]; });
}

Occupation SymmetricBasis::unrank(std::size_t index) const {
    if (index >= dim_) throw std::out_of_range("basis index out of range");
    Occupation occ{std::vector<int>(static_cast<std::size_t>(n_levels_), 0)};
    int remaining = n_particles_;
    for (int l = 0; l + 1 < n_levels_; ++l) {
        const int m = n_levels_ - l - 1;
        int v = remaining;
        for (;; --v) {
            // Block of occupations with n_l = v: remaining-v particles over m levels.
            const auto block = static_cast<std::size_t>(choose(remaining - v + m - 1, m - 1));
            if (index < block) break;
            index -= block;
        }
        occ.counts[static_cast<std::size_t>(l)] = v;
        remaining -= v;
    }
    occ.counts.back() = remaining;
    return occ;
}

std::size_t SymmetricBasis::shifted(std::size_t index, int to, int from, int amount) const {
    const auto occ = occupation(index);
    if (occ[static_cast<std::size_t>(from)] < amount) return npos;
    return rank_impl([&](int l) {
        int n = occ[static_cast<std::size_t>(l)];
        if (l == to) n += amount;
        if (l == from) n -= amount;
        return n;
    });
}

SymmetricState::SymmetricState(BasisPtr basis)
    : basis_(std::move(basis)), coeffs_(basis_->dim(), Complex{0.0, 0.0}) {}

SymmetricState::SymmetricState(BasisPtr basis, CVector coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_->dim()) {
        throw std::invalid_argument("coefficient vector length does not match basis dimension");
    }
}

SymmetricState SymmetricState::basis_ket(BasisPtr basis, const Occupation& occ) {
    SymmetricState state(std::move(basis));
    state.coeffs_[state.basis_->rank(occ)] = 1.0;
    return state;
}

double SymmetricState::norm2() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return s;
}

double SymmetricState::normalize() {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    for (auto& c : coeffs_) c /= n;
    return n;
}

Complex SymmetricState::inner(const SymmetricState& other) const {
    return kernels::inner(coeffs_, other.coeffs_, kernels::Exec::Serial);
}

double matrix_element(std::span<const int> m, std::span<const int> n, OperatorIndex op) {
    const auto i = static_cast<std::size_t>(op.i);
    const auto j = static_cast<std::size_t>(op.j);
    if (i == j) {
        for (std::size_t k = 0; k < n.size(); ++k) {
            if (m[k] != n[k]) return 0.0;
        }
        return n[i];
    }
    for (std::size_t k = 0; k < n.size(); ++k) {
        const int expected = n[k] + (k == i ? 1 : 0) - (k == j ? 1 : 0);
        if (m[k] != expected) return 0.0;
    }
    return std::sqrt(static_cast<double>(n[i] + 1) * static_cast<double>(n[j]));
}

SymmetricState apply_sij(const SymmetricState& state, OperatorIndex op) {
    SymmetricState out(state.basis_ptr());
    kernels::apply_sij(state.basis(), state.coeffs(), op, out.coeffs(), kernels::Exec::Serial);
    return out;
}

Complex expval_sij(const SymmetricState& state, OperatorIndex op) {
    const auto& basis = state.basis();
    const auto c = state.coeffs();
    if (op.i == op.j) {
        double s = 0.0;
        for (std::size_t k = 0; k < basis.dim(); ++k) {
            s += basis.occupation(k)[static_cast<std::size_t>(op.i)] * std::norm(c[k]);
        }
        return {s, 0.0};
    }
    // sum_n conj(c_{n_ij}) c_n sqrt((n_i+1) n_j)
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const std::size_t target = basis.shifted(k, op.i, op.j);
        if (target == SymmetricBasis::npos) continue;
        const auto occ = basis.occupation(k);
        const double w = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(op.i)] + 1) *
                                   occ[static_cast<std::size_t>(op.j)]);
        s += std::conj(c[target]) * c[k] * w;
    }
    return s;
}

Complex expval_sij_skl(const SymmetricState& state, OperatorIndex op1, OperatorIndex op2) {
    const SymmetricState left = apply_sij(state, op1.adjoint());
    const SymmetricState right = apply_sij(state, op2);
    return left.inner(right);
}

}  // namespace symqudit
