#include "entflow/lindblad.hpp"

#include "entflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace entflow {

namespace {

using qops::ComplexMatrix;
namespace ix = lindblad_index;

constexpr int kVec = kLindbladDim * kLindbladDim;

ComplexMatrix annihilation() {
    ComplexMatrix a = ComplexMatrix::Zero(kLindbladDim, kLindbladDim);
    a(ix::e0, ix::e1) = 1.0;
    a(ix::c0, ix::c1) = 1.0;
    a(ix::g0, ix::g1) = 1.0;
    return a;
}

// vec(A X B) = (B^T kron A) vec(X) with column stacking.
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

// One RK4 step of a linear ODE dy/dt = L y is y -> P y, P = sum_{k<=4} (hL)^k/k!.
ComplexMatrix rk4_step_matrix(const ComplexMatrix& l, double h) {
    const ComplexMatrix hl = h * l;
    ComplexMatrix term = ComplexMatrix::Identity(kVec, kVec);
    ComplexMatrix p = term;
    for (int k = 1; k <= 4; ++k) {
        term = (term * hl) / static_cast<double>(k);
        p += term;
    }
    return p;
}

ComplexMatrix matrix_power(ComplexMatrix base, long long n) {
    ComplexMatrix out = ComplexMatrix::Identity(base.rows(), base.cols());
    while (n > 0) {
        if (n & 1) out = out * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return out;
}

}  // namespace

double lindblad_max_step(const SystemParams& p) {
    const double scale = std::max({p.kappa(), std::abs(p.omega_bar()), p.detuning()});
    return 0.01 / scale;
}

ComplexMatrix lindblad_hamiltonian(const SystemParams& p) {
    ComplexMatrix h = ComplexMatrix::Zero(kLindbladDim, kLindbladDim);
    for (int n = 0; n < 2; ++n) {
        h(ix::e0 + n, ix::e0 + n) = -p.delta();
        h(ix::c0 + n, ix::c0 + n) = p.detuning();
        h(ix::e0 + n, ix::c0 + n) = h(ix::c0 + n, ix::e0 + n) = p.omega();
    }
    // g (a |c><g| + h.c.): |g,1> <-> |c,0>.
    h(ix::c0, ix::g1) = h(ix::g1, ix::c0) = p.g();
    return h;
}

ComplexMatrix liouvillian(const SystemParams& p, Dissipator dissipator) {
    const ComplexMatrix id = ComplexMatrix::Identity(kLindbladDim, kLindbladDim);
    const ComplexMatrix h = lindblad_hamiltonian(p);
    const ComplexMatrix a = annihilation();
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix n = ad * a;
    const std::complex<double> i(0.0, 1.0);

    ComplexMatrix l = -i * (kron(id, h) - kron(h.transpose(), id));
    const ComplexMatrix jump = dissipator == Dissipator::PhotonLoss
                                   ? kron(ad.transpose(), a)    // a rho a^+
                                   : kron(a.transpose(), ad);   // a^+ rho a
    l += 0.5 * p.kappa() * (2.0 * jump - kron(id, n) - kron(n.transpose(), id));
    return l;
}

std::vector<ComplexMatrix> lindblad_evolve(const SystemParams& p, std::span<const double> grid,
                                           const LindbladOptions& options) {
    if (grid.empty()) throw ValidationError("lindblad_evolve: empty grid");
    if (!(grid[0] >= 0.0)) throw ValidationError("lindblad_evolve: grid must start at t >= 0");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw ValidationError("lindblad_evolve: grid must be strictly increasing");
        }
    }
    const double bound = lindblad_max_step(p);
    const double h_max = options.step > 0.0 ? options.step : bound;
    if (h_max > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "lindblad_evolve: step " << h_max << " exceeds the RK4 bound " << bound;
        throw ConfigError(msg.str());
    }

    const ComplexMatrix l = liouvillian(p, options.dissipator);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(kVec);
    v(ix::e0 + kLindbladDim * ix::e0) = 1.0;

    // Step matrices per interval length; uniform grids reuse one entry.
    std::map<long long, ComplexMatrix> cache;
    auto advance = [&](double dt) {
        if (dt <= 0.0) return;
        const long long m = static_cast<long long>(std::ceil(dt / h_max - 1e-9));
        const double key_scale = 1e12;
        const long long key = std::llround(dt * key_scale);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const ComplexMatrix step = rk4_step_matrix(l, dt / static_cast<double>(m));
            it = cache.emplace(key, matrix_power(step, m)).first;
        }
        v = it->second * v;
    };

    std::vector<ComplexMatrix> out;
    out.reserve(grid.size());
    double t = 0.0;
    for (double tk : grid) {
        advance(tk - t);
        t = tk;
        out.push_back(Eigen::Map<const ComplexMatrix>(v.data(), kLindbladDim, kLindbladDim));
    }
    return out;
}

LindbladComparison compare_lindblad(const SystemParams& p, std::span<const double> grid,
                                    const LindbladOptions& options) {
    const auto rhos = lindblad_evolve(p, grid, options);
    LindbladComparison out;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& rho = rhos[k];
        const AmplitudeTriple a = amplitudes_exact(grid[k], p);
        const double errs[] = {
            std::abs(rho(ix::e0, ix::e0) - std::norm(a.E)),
            std::abs(rho(ix::g1, ix::g1) - std::norm(a.G)),
            std::abs(rho(ix::g0, ix::g0) - a.R * a.R),
            std::abs(rho(ix::e0, ix::g1) - a.E * std::conj(a.G)),
        };
        for (double e : errs) out.max_err = std::max(out.max_err, e);
        out.max_trace_defect = std::max(out.max_trace_defect, std::abs(rho.trace() - 1.0));
    }
    return out;
}

}  // namespace entflow
