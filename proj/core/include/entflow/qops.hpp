// qops.hpp: dense complex-matrix kernel for small Hermitian operators.
//
// Hermitian eigen-decomposition (cyclic Jacobi), partial trace and partial
// transpose over bipartite or multi-qubit spaces, and the two-qubit
// entanglement measures used throughout the library.
//
// Qubit ordering: basis index is big-endian over the listed qubits, i.e. the
// first qubit is the most significant bit. Bit value 1 means "excited"
// (|e>, one photon, one reservoir quantum).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>

namespace entflow::qops {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityFloor = -1e-10;
inline constexpr double kNormTol = 1e-12;
// Looser bound accepted by the eigen-solver itself.
inline constexpr double kEigenHermitianTol = 1e-10;

/// Max |m(i,j) - conj(m(j,i))|; 0 for an exactly Hermitian matrix.
double hermiticity_defect(const ComplexMatrix& m);

struct HermitianEigen {
    RealVector values;       // ascending
    ComplexMatrix vectors;   // column k belongs to values(k)
};

/// Cyclic complex Jacobi. Throws ValidationError if `m` is not square or not
/// Hermitian within kEigenHermitianTol (relative to its largest entry).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// Ascending real eigenvalues of a Hermitian matrix.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Normalized state vector.
class PureState {
public:
    /// Throws ValidationError when |psi|^2 deviates from 1 by more than kNormTol.
    explicit PureState(ComplexVector amplitudes);

    Eigen::Index dim() const noexcept { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

private:
    ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
public:
    /// Validates all three invariants; throws ValidationError on failure.
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix from_pure(const PureState& psi);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    struct Trusted {};
    DensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

enum class Subsystem { A, B };

struct BipartiteDims {
    Eigen::Index a;
    Eigen::Index b;
};

/// Reduce rho over A(x)B to the `keep` factor.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep, BipartiteDims dims);

/// Reduce an n-qubit density matrix to the listed qubits, in the listed order.
DensityMatrix partial_trace_qubits(const DensityMatrix& rho, int n_qubits,
                                   std::span<const int> keep);

/// Same reduction taken directly from a pure state (no 2^n x 2^n projector).
DensityMatrix reduce_pure_to_qubits(const PureState& psi, int n_qubits,
                                    std::span<const int> keep);

/// Transpose the indices of one factor. The result is Hermitian with unit
/// trace when the input is a density matrix, but not necessarily positive.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem subsystem,
                                BipartiteDims dims);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}, l_i the descending square
/// roots of the eigenvalues of rho (sy x sy) rho* (sy x sy). Evaluated through
/// the Hermitian form sqrt(rho) rho~ sqrt(rho).
double wootters_concurrence(const DensityMatrix& rho);

/// max{0, -2 * min eig of the partial transpose}. Equals the Wootters value
/// for X-form states.
double negativity_concurrence(const DensityMatrix& rho);

/// sqrt(2 (1 - Tr rho_A^2)) for a pure state over A(x)B.
double i_concurrence(const PureState& psi, BipartiteDims dims);

}  // namespace entflow::qops
