#include "entflow/oracle.hpp"

#include "entflow/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace entflow {

namespace {

constexpr int kE = 0;
constexpr int kC = 1;
constexpr int kG1 = 2;
constexpr int kModes = 3;

constexpr double kBreakdownNorm = 1e-13;

void fill_atom_cavity(Eigen::MatrixXd& h, const SystemParams& p) {
    h(kE, kE) = -p.delta();
    h(kC, kC) = p.detuning();
    h(kE, kC) = h(kC, kE) = p.omega();
    h(kC, kG1) = h(kG1, kC) = p.g();
}

}  // namespace

ReservoirDiscretization::ReservoirDiscretization(int n_modes, double bandwidth, double kappa)
    : n_modes_(n_modes), bandwidth_(bandwidth), kappa_(kappa) {
    if (n_modes < 0) throw ValidationError("ReservoirDiscretization: n_modes must be >= 0");
    if (n_modes > 0 && (!std::isfinite(bandwidth) || bandwidth <= 0.0)) {
        throw ValidationError("ReservoirDiscretization: bandwidth must be > 0");
    }
    if (!std::isfinite(kappa) || kappa < 0.0) {
        throw ValidationError("ReservoirDiscretization: kappa must be >= 0");
    }
}

double ReservoirDiscretization::spacing() const noexcept {
    return n_modes_ > 0 ? bandwidth_ / n_modes_ : 0.0;
}

double ReservoirDiscretization::coupling() const noexcept {
    return std::sqrt(kappa_ * spacing() / (2.0 * std::numbers::pi));
}

double ReservoirDiscretization::mode_detuning(int k) const noexcept {
    return -0.5 * bandwidth_ + (k + 0.5) * spacing();
}

double ReservoirDiscretization::recurrence_time() const noexcept {
    if (n_modes_ == 0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi / spacing();
}

void ReservoirDiscretization::check(const SystemParams& p, double horizon) const {
    if (n_modes_ == 0) return;
    const double scale = std::max({kappa_, p.g_eff(), std::abs(p.omega_bar())});
    if (bandwidth_ < 20.0 * scale) {
        std::ostringstream msg;
        msg << "reservoir bandwidth " << bandwidth_ << " is below 20 max(kappa, g_eff, |Omegabar|) = "
            << 20.0 * scale;
        throw ConfigError(msg.str());
    }
    if (!(recurrence_time() > horizon)) {
        std::ostringstream msg;
        msg << "reservoir recurrence time " << recurrence_time() << " does not exceed horizon "
            << horizon;
        throw ConfigError(msg.str());
    }
}

Eigen::MatrixXd build_hamiltonian(const SystemParams& p, const ReservoirDiscretization& d) {
    if (d.kappa() != p.kappa()) {
        throw ConfigError("build_hamiltonian: discretization kappa differs from SystemParams kappa");
    }
    d.check(p, 0.0);
    const int n = d.n_modes();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kModes + n, kModes + n);
    fill_atom_cavity(h, p);
    const double gk = d.coupling();
    for (int k = 0; k < n; ++k) {
        h(kModes + k, kModes + k) = d.mode_detuning(k);
        h(kG1, kModes + k) = h(kModes + k, kG1) = gk;
    }
    return h;
}

SingleExcitationState excited_state(int n_modes) {
    if (n_modes < 0) throw ValidationError("excited_state: n_modes must be >= 0");
    qops::ComplexVector v = qops::ComplexVector::Zero(kModes + n_modes);
    v(kE) = 1.0;
    return SingleExcitationState(std::move(v));
}

Propagator::Propagator(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw ValidationError("Propagator: Hamiltonian must be square and non-empty");
    }
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw ValidationError("Propagator: Hamiltonian must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ValidationError("Propagator: eigendecomposition failed");
    }
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

qops::ComplexVector Propagator::evolve_vector(const qops::ComplexVector& psi0, double t) const {
    if (psi0.size() != values_.size()) {
        throw ValidationError("Propagator: state dimension mismatch");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("Propagator: time must be finite and non-negative");
    }
    // Real eigenvectors: act on real and imaginary parts separately.
    const Eigen::VectorXd re = vectors_.transpose() * psi0.real();
    const Eigen::VectorXd im = vectors_.transpose() * psi0.imag();
    Eigen::VectorXd out_re(re.size());
    Eigen::VectorXd out_im(re.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) {
        const Complex c = Complex(re(i), im(i)) * std::polar(1.0, -values_(i) * t);
        out_re(i) = c.real();
        out_im(i) = c.imag();
    }
    qops::ComplexVector out(re.size());
    out.real() = vectors_ * out_re;
    out.imag() = vectors_ * out_im;
    return out;
}

SingleExcitationState Propagator::evolve(const SingleExcitationState& psi0, double t) const {
    return SingleExcitationState(evolve_vector(psi0.amplitudes(), t));
}

OracleAmplitudes extract_amplitudes(const SingleExcitationState& psi) {
    const auto& v = psi.amplitudes();
    if (v.size() < kModes) {
        throw ValidationError("extract_amplitudes: state needs at least 3 components");
    }
    const double r2 = v.tail(v.size() - kModes).squaredNorm();
    return {v(kE), v(kC), v(kG1), std::sqrt(r2)};
}

OracleComparison compare_with_closed_form(const SystemParams& p,
                                          const ReservoirDiscretization& d, double horizon,
                                          int samples) {
    if (samples < 1) throw ValidationError("compare_with_closed_form: samples must be >= 1");
    d.check(p, horizon);
    const auto start = std::chrono::steady_clock::now();
    const Propagator prop(build_hamiltonian(p, d));
    const auto psi0 = excited_state(d.n_modes());

    OracleComparison out;
    for (int i = 0; i <= samples; ++i) {
        const double t = horizon * i / samples;
        qops::ComplexVector v = prop.evolve_vector(psi0.amplitudes(), t);
        const double norm2 = v.squaredNorm();
        out.max_norm_defect = std::max(out.max_norm_defect, std::abs(norm2 - 1.0));
        const double e2 = std::norm(v(kE));
        const double c2 = std::norm(v(kC));
        const double g2 = std::norm(v(kG1));
        const double r2 = v.tail(v.size() - kModes).squaredNorm();
        const SquaredAmplitudes ref = squared(amplitudes_exact(t, p));
        out.max_err_e2 = std::max(out.max_err_e2, std::abs(e2 - ref.e2));
        out.max_err_g2 = std::max(out.max_err_g2, std::abs(g2 - ref.g2));
        out.max_err_r2 = std::max(out.max_err_r2, std::abs(r2 - ref.r2));
        out.max_c2 = std::max(out.max_c2, c2);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

double leakage_bound(const SystemParams& p, const ReservoirDiscretization& d, double horizon,
                     int samples) {
    if (samples < 1) throw ValidationError("leakage_bound: samples must be >= 1");
    d.check(p, horizon);
    const Propagator prop(build_hamiltonian(p, d));
    const auto psi0 = excited_state(d.n_modes());
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const auto v = prop.evolve_vector(psi0.amplitudes(), horizon * i / samples);
        worst = std::max(worst, std::norm(v(kC)));
    }
    return worst;
}

CollectiveChain collective_chain(std::span<const double> couplings,
                                 std::span<const double> frequencies, int depth) {
    const auto n = static_cast<Eigen::Index>(couplings.size());
    if (n == 0 || static_cast<Eigen::Index>(frequencies.size()) != n) {
        throw ValidationError("collective_chain: couplings and frequencies must match and be non-empty");
    }
    if (depth < 1 || depth > n) {
        throw ValidationError("collective_chain: depth must lie in [1, N]");
    }
    const Eigen::Map<const Eigen::VectorXd> g(couplings.data(), n);
    const Eigen::Map<const Eigen::VectorXd> w(frequencies.data(), n);

    CollectiveChain chain;
    Eigen::MatrixXd vecs(n, depth);
    const double n0 = g.norm();
    if (n0 < kBreakdownNorm) throw ValidationError("collective_chain: couplings are all zero");
    vecs.col(0) = g / n0;
    chain.norms.push_back(n0);
    chain.onsite.push_back(vecs.col(0).dot(w.cwiseProduct(vecs.col(0))));

    int achieved = 1;
    for (int m = 1; m < depth; ++m) {
        Eigen::VectorXd phi = w.cwiseProduct(vecs.col(m - 1));
        // Two Gram-Schmidt passes keep orthogonality at machine level.
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < m; ++j) phi -= vecs.col(j).dot(phi) * vecs.col(j);
        }
        const double nm = phi.norm();
        if (nm < kBreakdownNorm) {
            chain.truncated = true;
            break;
        }
        vecs.col(m) = phi / nm;
        chain.norms.push_back(nm);
        chain.onsite.push_back(vecs.col(m).dot(w.cwiseProduct(vecs.col(m))));
        achieved = m + 1;
    }
    chain.vectors = vecs.leftCols(achieved);
    return chain;
}

CollectiveChain collective_chain(const ReservoirDiscretization& d, int depth) {
    const int n = d.n_modes();
    std::vector<double> g(n, d.coupling());
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) w[k] = d.mode_detuning(k);
    return collective_chain(g, w, depth);
}

Eigen::MatrixXd chain_hamiltonian(const SystemParams& p, const CollectiveChain& chain) {
    const int m = chain.depth();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kModes + m, kModes + m);
    fill_atom_cavity(h, p);
    if (m == 0) return h;
    // The cavity couples to mode 0 with strength N_0; W is tridiagonal in the
    // chain with hoppings N_1, N_2, ... and on-site terms <n|W|n>.
    h(kG1, kModes) = h(kModes, kG1) = chain.norms[0];
    for (int j = 0; j < m; ++j) {
        h(kModes + j, kModes + j) = chain.onsite[j];
        if (j + 1 < m) h(kModes + j, kModes + j + 1) = h(kModes + j + 1, kModes + j) = chain.norms[j + 1];
    }
    return h;
}

}  // namespace entflow
