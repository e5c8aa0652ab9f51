#include "entflow/qops.hpp"

#include "entflow/errors.hpp"
#include "entflow/detail/qops_detail.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace entflow::qops {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
    }
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw ValidationError(std::string(what) + ": matrix has non-finite entries");
    }
}

// Bits of `index` (width = keep.size()) scattered onto the positions listed
// in `qubits`, big-endian over n_qubits.
std::vector<Eigen::Index> scatter_table(int n_qubits, std::span<const int> qubits) {
    const auto width = static_cast<int>(qubits.size());
    std::vector<Eigen::Index> table(std::size_t{1} << width, 0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        Eigen::Index full = 0;
        for (int b = 0; b < width; ++b) {
            const bool bit = (idx >> (width - 1 - b)) & 1u;
            if (bit) {
                full |= Eigen::Index{1} << (n_qubits - 1 - qubits[static_cast<std::size_t>(b)]);
            }
        }
        table[idx] = full;
    }
    return table;
}

std::vector<int> complement(int n_qubits, std::span<const int> keep) {
    if (n_qubits <= 0 || n_qubits > 20) {
        throw ValidationError("qubit count out of range");
    }
    std::vector<bool> kept(static_cast<std::size_t>(n_qubits), false);
    for (int q : keep) {
        if (q < 0 || q >= n_qubits) {
            throw ValidationError("kept qubit index out of range");
        }
        if (kept[static_cast<std::size_t>(q)]) {
            throw ValidationError("kept qubit listed twice");
        }
        kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> env;
    for (int q = 0; q < n_qubits; ++q) {
        if (!kept[static_cast<std::size_t>(q)]) env.push_back(q);
    }
    return env;
}

ComplexMatrix spin_flip_4() {
    // sigma_y (x) sigma_y in the |00>,|01>,|10>,|11> basis.
    ComplexMatrix y = ComplexMatrix::Zero(4, 4);
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigen");
    require_finite(m, "hermitian_eigen");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_defect(m) > kEigenHermitianTol * scale) {
        throw ValidationError("hermitian_eigen: matrix is not Hermitian");
    }

    const Eigen::Index n = m.rows();
    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double frob = a.norm();
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        }
        if (off == 0.0 || std::sqrt(off) <= 1e-17 * frob) break;

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const Complex ph = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();

                // Real rotation zeroing the phase-rotated (p,q) entry.
                const double theta = (aqq - app) / (2.0 * r);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex phc = std::conj(ph);

                // a <- a U, U = diag(1, conj(ph)) * [[c, s], [-s, c]] on (p, q)
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * phc * akq;
                    a(k, q) = s * akp + c * phc * akq;
                }
                // a <- U^dagger a
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * ph * aqk;
                    a(q, k) = s * apk + c * ph * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * phc * vkq;
                    v(k, q) = s * vkp + c * phc * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = a(src, src).real();
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigen(m).values;
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw ValidationError("PureState: empty state vector");
    }
    if (!amplitudes_.allFinite()) {
        throw ValidationError("PureState: non-finite amplitudes");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw ValidationError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    require_finite(m_, "DensityMatrix");
    if (hermiticity_defect(m_) > kHermitianTol) {
        throw ValidationError("DensityMatrix: not Hermitian");
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
        throw ValidationError("DensityMatrix: trace is not 1");
    }
    if (hermitian_eigenvalues(m_).minCoeff() < kPositivityFloor) {
        throw ValidationError("DensityMatrix: not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    const auto& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint(), Trusted{});
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep, BipartiteDims dims) {
    if (dims.a <= 0 || dims.b <= 0 || rho.dim() != dims.a * dims.b) {
        throw ValidationError("partial_trace: dimension mismatch");
    }
    const auto& m = rho.matrix();
    if (keep == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(dims.a, dims.a);
        for (Eigen::Index i = 0; i < dims.a; ++i)
            for (Eigen::Index j = 0; j < dims.a; ++j)
                for (Eigen::Index k = 0; k < dims.b; ++k)
                    out(i, j) += m(i * dims.b + k, j * dims.b + k);
        return DensityMatrix(std::move(out));
    }
    ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
    for (Eigen::Index k = 0; k < dims.b; ++k)
        for (Eigen::Index l = 0; l < dims.b; ++l)
            for (Eigen::Index i = 0; i < dims.a; ++i)
                out(k, l) += m(i * dims.b + k, i * dims.b + l);
    return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace_qubits(const DensityMatrix& rho, int n_qubits,
                                   std::span<const int> keep) {
    const auto env = complement(n_qubits, keep);
    if (rho.dim() != (Eigen::Index{1} << n_qubits)) {
        throw ValidationError("partial_trace_qubits: dimension mismatch");
    }
    const auto kept_idx = scatter_table(n_qubits, keep);
    const auto env_idx = scatter_table(n_qubits, env);
    const auto dk = static_cast<Eigen::Index>(kept_idx.size());
    const auto& m = rho.matrix();
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j)
            for (auto e : env_idx)
                out(i, j) += m(kept_idx[static_cast<std::size_t>(i)] | e,
                               kept_idx[static_cast<std::size_t>(j)] | e);
    return DensityMatrix(std::move(out));
}

DensityMatrix reduce_pure_to_qubits(const PureState& psi, int n_qubits,
                                    std::span<const int> keep) {
    const auto env = complement(n_qubits, keep);
    if (psi.dim() != (Eigen::Index{1} << n_qubits)) {
        throw ValidationError("reduce_pure_to_qubits: dimension mismatch");
    }
    const auto kept_idx = scatter_table(n_qubits, keep);
    const auto env_idx = scatter_table(n_qubits, env);
    const auto dk = static_cast<Eigen::Index>(kept_idx.size());
    const auto& v = psi.amplitudes();
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (auto e : env_idx) {
        for (Eigen::Index i = 0; i < dk; ++i) {
            const Complex vi = v(kept_idx[static_cast<std::size_t>(i)] | e);
            if (vi == 0.0) continue;
            for (Eigen::Index j = 0; j < dk; ++j) {
                out(i, j) += vi * std::conj(v(kept_idx[static_cast<std::size_t>(j)] | e));
            }
        }
    }
    return DensityMatrix(std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem subsystem,
                                BipartiteDims dims) {
    require_square(rho, "partial_transpose");
    if (dims.a <= 0 || dims.b <= 0 || rho.rows() != dims.a * dims.b) {
        throw ValidationError("partial_transpose: dimension mismatch");
    }
    ComplexMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < dims.a; ++i)
        for (Eigen::Index k = 0; k < dims.b; ++k)
            for (Eigen::Index j = 0; j < dims.a; ++j)
                for (Eigen::Index l = 0; l < dims.b; ++l) {
                    const Eigen::Index row = i * dims.b + k;
                    const Eigen::Index col = j * dims.b + l;
                    out(row, col) = subsystem == Subsystem::B
                                        ? rho(i * dims.b + l, j * dims.b + k)
                                        : rho(j * dims.b + k, i * dims.b + l);
                }
    return out;
}

namespace detail {

bool is_x_form(const ComplexMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) return false;
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j)
            if (i != j && i + j != 3 && m(i, j) != 0.0) return false;
    return true;
}

double wootters_x_form(const ComplexMatrix& m) {
    const double r00 = std::max(0.0, m(0, 0).real());
    const double r11 = std::max(0.0, m(1, 1).real());
    const double r22 = std::max(0.0, m(2, 2).real());
    const double r33 = std::max(0.0, m(3, 3).real());
    const double c1 = std::abs(m(0, 3)) - std::sqrt(r11 * r22);
    const double c2 = std::abs(m(1, 2)) - std::sqrt(r00 * r33);
    return std::max({0.0, 2.0 * c1, 2.0 * c2});
}

double wootters_general(const ComplexMatrix& m) {
    // l_i are the singular values of sqrt(rho) Y conj(sqrt(rho)); read them
    // off the Hermitian dilation [[0, T], [T^dagger, 0]] whose spectrum is +-l_i.
    const auto eig = hermitian_eigen(m);
    RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix sqrt_rho = eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
    const ComplexMatrix t = sqrt_rho * spin_flip_4() * sqrt_rho.conjugate();

    ComplexMatrix dilation = ComplexMatrix::Zero(8, 8);
    dilation.topRightCorner(4, 4) = t;
    dilation.bottomLeftCorner(4, 4) = t.adjoint();
    const RealVector spec = hermitian_eigenvalues(dilation);

    std::array<double, 4> l{};
    for (int k = 0; k < 4; ++k) l[static_cast<std::size_t>(k)] = std::max(0.0, spec(7 - k));
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace detail

double wootters_concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw ValidationError("wootters_concurrence: two-qubit (4x4) state required");
    }
    const auto& m = rho.matrix();
    return detail::is_x_form(m) ? detail::wootters_x_form(m) : detail::wootters_general(m);
}

double negativity_concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw ValidationError("negativity_concurrence: two-qubit (4x4) state required");
    }
    const ComplexMatrix pt = partial_transpose(rho.matrix(), Subsystem::B, {2, 2});
    const double lmin = hermitian_eigenvalues(pt).minCoeff();
    return std::max(0.0, -2.0 * lmin);
}

double i_concurrence(const PureState& psi, BipartiteDims dims) {
    if (dims.a <= 0 || dims.b <= 0 || psi.dim() != dims.a * dims.b) {
        throw ValidationError("i_concurrence: dimension mismatch");
    }
    const auto& v = psi.amplitudes();
    // rho_A = M M^dagger with M the dA x dB reshape of psi (row-major).
    ComplexMatrix mat(dims.a, dims.b);
    for (Eigen::Index i = 0; i < dims.a; ++i)
        for (Eigen::Index k = 0; k < dims.b; ++k) mat(i, k) = v(i * dims.b + k);
    const ComplexMatrix rho_a = mat * mat.adjoint();
    const double purity = rho_a.cwiseAbs2().sum();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

}  // namespace entflow::qops
