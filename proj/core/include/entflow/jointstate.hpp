// jointstate.hpp: the two-chain state and its bipartite reductions.
//
// Six effective qubits ordered a1, c1, r1, a2, c2, r2 (atom, cavity,
// collective reservoir mode; chain 1 first). Basis index is big-endian over
// that list with bit 1 = excited, so |e,0,0> of one chain is local index 4,
// |g,1,0> is 2 and |g,0,1> is 1.

#pragma once

#include "entflow/amplitudes.hpp"
#include "entflow/qops.hpp"

#include <array>
#include <string_view>

namespace entflow {

/// alpha|gg> + beta|ee> atomic superposition; alpha, beta >= 0.
class InitialAmplitudes {
public:
    /// Throws ValidationError unless alpha, beta >= 0 and alpha^2 + beta^2 = 1
    /// within 1e-12.
    InitialAmplitudes(double alpha, double beta);

    /// Normalized amplitudes with beta/alpha = ratio (ratio >= 0, finite).
    static InitialAmplitudes from_ratio(double beta_over_alpha);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

private:
    double alpha_;
    double beta_;
};

enum class Qubit : int { a1 = 0, c1, r1, a2, c2, r2 };

inline constexpr int kJointQubits = 6;
inline constexpr int kChainDim = 8;
inline constexpr int kJointDim = 64;

enum class PairLabel {
    a1a2, c1c2, r1r2,
    a1c1, c1r1, a1r1, a2c2, c2r2, a2r2,
    a1c2, a1r2, c1r2, a2c1, a2r1, c2r1,
};

inline constexpr std::array<PairLabel, 15> kAllPairs = {
    PairLabel::a1a2, PairLabel::c1c2, PairLabel::r1r2,
    PairLabel::a1c1, PairLabel::c1r1, PairLabel::a1r1,
    PairLabel::a2c2, PairLabel::c2r2, PairLabel::a2r2,
    PairLabel::a1c2, PairLabel::a1r2, PairLabel::c1r2,
    PairLabel::a2c1, PairLabel::a2r1, PairLabel::c2r1,
};

/// The two qubits of a pair, in label order.
std::array<Qubit, 2> pair_qubits(PairLabel pair) noexcept;
std::string_view to_string(PairLabel pair) noexcept;
/// Throws ValidationError on unknown labels.
PairLabel parse_pair(std::string_view label);
/// Label of the mirror pair under chain exchange 1 <-> 2.
PairLabel swap_chains(PairLabel pair) noexcept;
/// Both qubits in the same chain.
bool is_interacting(PairLabel pair) noexcept;
/// a1a2, c1c2 or r1r2.
bool is_same_kind(PairLabel pair) noexcept;

using JointPureState = qops::PureState;

/// alpha |g00>|g00> + beta |psi_t>|psi_t>.
JointPureState joint_state(const AmplitudeTriple& amps, const InitialAmplitudes& init);
JointPureState joint_state(double t, const InitialAmplitudes& init, const SystemParams& p,
                           Regime regime = Regime::Exact);

/// Two-qubit reduction, qubits in label order.
qops::DensityMatrix reduced_pair(const JointPureState& state, PairLabel pair);

/// Closed-form X matrices for a1a2, c1c2, r1r2. Coherences carry the complex
/// product alpha beta X^2, which is alpha beta |X|^2 up to a local phase.
qops::DensityMatrix rho_closed(PairLabel pair, const AmplitudeTriple& amps,
                               const InitialAmplitudes& init);

/// lambda_- = beta x (beta (1 - x) - alpha) with x = |E|^2, |G|^2 or R^2.
double lambda_minus_closed(PairLabel pair, const SquaredAmplitudes& sq,
                           const InitialAmplitudes& init);

/// max{0, -2 lambda_-} for a1a2, c1c2, r1r2.
double concurrence_closed(PairLabel pair, const AmplitudeTriple& amps,
                          const InitialAmplitudes& init);

/// Printed closed forms for a1c2, a1r2, c1r2:
///   max{0, 2 [alpha beta x y - sqrt(w(x, y))]},  w = alpha^4 x y^2 (1-x^2)(1-y^2)
/// with (x, y) = (|E|, |G|), (|E|, R), (|G|, R).
double cross_concurrence_closed(PairLabel pair, const AmplitudeTriple& amps,
                                const InitialAmplitudes& init);

/// Wootters concurrence of the partial-trace reduction.
double pair_concurrence(const JointPureState& state, PairLabel pair);

/// pair_concurrence for a same-chain pair (a1c1, c1r1, a1r1, a2c2, c2r2, a2r2).
double interacting_concurrence(PairLabel pair, double t, const InitialAmplitudes& init,
                               const SystemParams& p);

/// I-concurrence across (a1,c1,r1) | (a2,c2,r2); equals 2 alpha beta.
double global_tangle(double t, const InitialAmplitudes& init, const SystemParams& p);

}  // namespace entflow
