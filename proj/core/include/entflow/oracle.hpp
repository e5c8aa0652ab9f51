// oracle.hpp: brute-force single-chain dynamics with a discretized reservoir.
//
// Single-excitation basis of one chain (dimension 3 + N):
//   0: |e,0,0>   1: |c,0,0>   2: |g,1,0>   3 + k: |g,0,1_k>
// The reservoir is a flat band of N modes of width B centred on the cavity
// frequency with uniform couplings g_k = sqrt(kappa * dw / 2 pi).

#pragma once

#include "entflow/amplitudes.hpp"
#include "entflow/qops.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace entflow {

class ReservoirDiscretization {
public:
    /// Throws ValidationError unless n_modes >= 0, bandwidth > 0 (when
    /// n_modes > 0) and kappa >= 0.
    ReservoirDiscretization(int n_modes, double bandwidth, double kappa);

    int n_modes() const noexcept { return n_modes_; }
    double bandwidth() const noexcept { return bandwidth_; }
    double kappa() const noexcept { return kappa_; }
    double spacing() const noexcept;
    double coupling() const noexcept;
    /// w_k - w for mode k: -B/2 + (k + 1/2) dw.
    double mode_detuning(int k) const noexcept;
    /// 2 pi / dw (infinite without modes).
    double recurrence_time() const noexcept;

    /// Throws ConfigError unless B >= 20 max(kappa, g_eff, |Omegabar|) and
    /// 2 pi/dw > horizon. No-op for n_modes = 0.
    void check(const SystemParams& p, double horizon) const;

private:
    int n_modes_;
    double bandwidth_;
    double kappa_;
};

using SingleExcitationState = qops::PureState;

/// Real symmetric (3 + N)-dim Hamiltonian. Throws ConfigError when the
/// bandwidth invariant fails or d.kappa() differs from p.kappa().
Eigen::MatrixXd build_hamiltonian(const SystemParams& p, const ReservoirDiscretization& d);

/// |e,0,0> in dimension 3 + n_modes.
SingleExcitationState excited_state(int n_modes);

/// Diagonalize once, evolve to any t.
class Propagator {
public:
    /// Throws ValidationError unless `h` is square and symmetric.
    explicit Propagator(const Eigen::MatrixXd& h);

    Eigen::Index dim() const noexcept { return values_.size(); }
    const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }

    /// exp(-i H t) psi0. Throws ValidationError on dimension mismatch or t < 0.
    SingleExcitationState evolve(const SingleExcitationState& psi0, double t) const;
    /// Same without the norm check (the result of a unitary map up to rounding).
    qops::ComplexVector evolve_vector(const qops::ComplexVector& psi0, double t) const;

private:
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

struct OracleAmplitudes {
    Complex E;
    Complex C;
    Complex G;
    double R;  // sqrt of the summed reservoir probabilities
};

OracleAmplitudes extract_amplitudes(const SingleExcitationState& psi);

struct OracleComparison {
    double max_err_e2 = 0.0;
    double max_err_g2 = 0.0;
    double max_err_r2 = 0.0;
    double max_c2 = 0.0;
    double max_norm_defect = 0.0;
    double seconds = 0.0;
};

/// Evolve |e,0,0> on `samples` + 1 equally spaced points of [0, horizon] and
/// compare |E|^2, |G|^2, R^2 with amplitudes_exact. Runs d.check first.
OracleComparison compare_with_closed_form(const SystemParams& p,
                                          const ReservoirDiscretization& d, double horizon,
                                          int samples = 1000);

/// max |C_t|^2 over `samples` + 1 points of [0, horizon].
double leakage_bound(const SystemParams& p, const ReservoirDiscretization& d, double horizon,
                     int samples = 1000);

struct CollectiveChain {
    /// Column n is the n-th collective mode over the N bare modes.
    Eigen::MatrixXd vectors;
    /// N_0 = sqrt(sum g_k^2) and the Gram-Schmidt norms N_1, N_2, ...
    std::vector<double> norms;
    /// <n|W|n> with W = diag(w_k - w).
    std::vector<double> onsite;
    /// True when the recurrence broke down (norm < 1e-13) before the
    /// requested depth; vectors then holds the achieved depth.
    bool truncated = false;
    int depth() const noexcept { return static_cast<int>(vectors.cols()); }
};

/// Vector 0 = g_k / N_0; vector n = normalized (W v_{n-1} minus its
/// projections on all previous vectors). Throws ValidationError for
/// depth < 1, depth > N or mismatched inputs.
CollectiveChain collective_chain(std::span<const double> couplings,
                                 std::span<const double> frequencies, int depth);
CollectiveChain collective_chain(const ReservoirDiscretization& d, int depth);

/// Hamiltonian in the basis {e, c, g1, chain modes 0..depth-1}. With
/// depth = N it is unitarily equivalent to build_hamiltonian.
Eigen::MatrixXd chain_hamiltonian(const SystemParams& p, const CollectiveChain& chain);

}  // namespace entflow
