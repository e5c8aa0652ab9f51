// lindblad.hpp: master-equation integrator for one atom-cavity system.
//
// Space (e, c, g) x (0, 1 photon), index = 2 * level + photons:
//   0: |e,0>  1: |e,1>  2: |c,0>  3: |c,1>  4: |g,0>  5: |g,1>
// H' is the atom-cavity part of the chain Hamiltonian; the reservoir enters
// through the dissipator only.

#pragma once

#include "entflow/amplitudes.hpp"
#include "entflow/qops.hpp"

#include <span>
#include <vector>

namespace entflow {

inline constexpr int kLindbladDim = 6;

namespace lindblad_index {
inline constexpr int e0 = 0;
inline constexpr int e1 = 1;
inline constexpr int c0 = 2;
inline constexpr int c1 = 3;
inline constexpr int g0 = 4;
inline constexpr int g1 = 5;
}  // namespace lindblad_index

/// PhotonLoss: (kappa/2)(2 a rho a^+ - a^+a rho - rho a^+a).
/// LiteralGain: (kappa/2)(2 a^+ rho a - a^+a rho - rho a^+a), kept for comparison.
enum class Dissipator { PhotonLoss, LiteralGain };

struct LindbladOptions {
    Dissipator dissipator = Dissipator::PhotonLoss;
    /// RK4 step; 0 picks the stability bound 0.01 / max(kappa, |Omegabar|, Delta).
    double step = 0.0;
};

/// Largest admissible RK4 step for p.
double lindblad_max_step(const SystemParams& p);

/// 6x6 Hamiltonian H'.
qops::ComplexMatrix lindblad_hamiltonian(const SystemParams& p);

/// 36x36 Liouvillian acting on column-stacked rho.
qops::ComplexMatrix liouvillian(const SystemParams& p, Dissipator dissipator);

/// rho(t) on every grid point from rho(0) = |e,0><e,0|, by fixed-step RK4.
/// Throws ValidationError on an invalid grid and ConfigError when
/// options.step exceeds lindblad_max_step.
std::vector<qops::ComplexMatrix> lindblad_evolve(const SystemParams& p,
                                                 std::span<const double> grid,
                                                 const LindbladOptions& options = {});

/// Max deviation of rho(e0,e0), rho(g1,g1), rho(g0,g0) and rho(e0,g1) from
/// |E|^2, |G|^2, R^2 and E G^* over the grid; also the worst trace defect.
struct LindbladComparison {
    double max_err = 0.0;
    double max_trace_defect = 0.0;
};

LindbladComparison compare_lindblad(const SystemParams& p, std::span<const double> grid,
                                    const LindbladOptions& options = {});

}  // namespace entflow
