#include "entflow/jointstate.hpp"

#include "entflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entflow {

namespace {

constexpr int kExcitedLocal = 4;  // |e,0,0>
constexpr int kCavityLocal = 2;   // |g,1,0>
constexpr int kReservoirLocal = 1;  // |g,0,1>

struct PairInfo {
    PairLabel label;
    std::string_view name;
    Qubit first;
    Qubit second;
};

constexpr std::array<PairInfo, 15> kPairTable = {{
    {PairLabel::a1a2, "a1a2", Qubit::a1, Qubit::a2},
    {PairLabel::c1c2, "c1c2", Qubit::c1, Qubit::c2},
    {PairLabel::r1r2, "r1r2", Qubit::r1, Qubit::r2},
    {PairLabel::a1c1, "a1c1", Qubit::a1, Qubit::c1},
    {PairLabel::c1r1, "c1r1", Qubit::c1, Qubit::r1},
    {PairLabel::a1r1, "a1r1", Qubit::a1, Qubit::r1},
    {PairLabel::a2c2, "a2c2", Qubit::a2, Qubit::c2},
    {PairLabel::c2r2, "c2r2", Qubit::c2, Qubit::r2},
    {PairLabel::a2r2, "a2r2", Qubit::a2, Qubit::r2},
    {PairLabel::a1c2, "a1c2", Qubit::a1, Qubit::c2},
    {PairLabel::a1r2, "a1r2", Qubit::a1, Qubit::r2},
    {PairLabel::c1r2, "c1r2", Qubit::c1, Qubit::r2},
    {PairLabel::a2c1, "a2c1", Qubit::a2, Qubit::c1},
    {PairLabel::a2r1, "a2r1", Qubit::a2, Qubit::r1},
    {PairLabel::c2r1, "c2r1", Qubit::c2, Qubit::r1},
}};

const PairInfo& info(PairLabel pair) noexcept {
    return kPairTable[static_cast<std::size_t>(pair)];
}

int chain_of(Qubit q) noexcept { return static_cast<int>(q) < 3 ? 1 : 2; }

Qubit mirror(Qubit q) noexcept {
    return static_cast<Qubit>((static_cast<int>(q) + 3) % 6);
}

// Amplitude of the excited level for the subsystem kind of a same-kind pair.
Complex component(PairLabel pair, const AmplitudeTriple& amps) {
    switch (pair) {
        case PairLabel::a1a2: return amps.E;
        case PairLabel::c1c2: return amps.G;
        case PairLabel::r1r2: return Complex(amps.R, 0.0);
        default: break;
    }
    throw ValidationError("closed form available only for a1a2, c1c2, r1r2; got " +
                          std::string(to_string(pair)));
}

double squared_component(PairLabel pair, const SquaredAmplitudes& sq) {
    switch (pair) {
        case PairLabel::a1a2: return sq.e2;
        case PairLabel::c1c2: return sq.g2;
        case PairLabel::r1r2: return sq.r2;
        default: break;
    }
    throw ValidationError("closed form available only for a1a2, c1c2, r1r2; got " +
                          std::string(to_string(pair)));
}

}  // namespace

InitialAmplitudes::InitialAmplitudes(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || beta < 0.0) {
        throw ValidationError("InitialAmplitudes: alpha and beta must be finite and >= 0");
    }
    if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12) {
        throw ValidationError("InitialAmplitudes: alpha^2 + beta^2 must equal 1");
    }
}

InitialAmplitudes InitialAmplitudes::from_ratio(double beta_over_alpha) {
    if (!std::isfinite(beta_over_alpha) || beta_over_alpha < 0.0) {
        throw ValidationError("InitialAmplitudes: ratio beta/alpha must be finite and >= 0");
    }
    const double alpha = 1.0 / std::hypot(1.0, beta_over_alpha);
    return InitialAmplitudes(alpha, beta_over_alpha * alpha);
}

std::array<Qubit, 2> pair_qubits(PairLabel pair) noexcept {
    return {info(pair).first, info(pair).second};
}

std::string_view to_string(PairLabel pair) noexcept { return info(pair).name; }

PairLabel parse_pair(std::string_view label) {
    for (const auto& entry : kPairTable) {
        if (entry.name == label) return entry.label;
    }
    throw ValidationError("unknown pair label '" + std::string(label) + "'");
}

PairLabel swap_chains(PairLabel pair) noexcept {
    const Qubit a = mirror(info(pair).first);
    const Qubit b = mirror(info(pair).second);
    for (const auto& entry : kPairTable) {
        if ((entry.first == a && entry.second == b) || (entry.first == b && entry.second == a)) {
            return entry.label;
        }
    }
    return pair;
}

bool is_interacting(PairLabel pair) noexcept {
    return chain_of(info(pair).first) == chain_of(info(pair).second);
}

bool is_same_kind(PairLabel pair) noexcept {
    return pair == PairLabel::a1a2 || pair == PairLabel::c1c2 || pair == PairLabel::r1r2;
}

JointPureState joint_state(const AmplitudeTriple& amps, const InitialAmplitudes& init) {
    qops::ComplexVector chain = qops::ComplexVector::Zero(kChainDim);
    chain(kExcitedLocal) = amps.E;
    chain(kCavityLocal) = amps.G;
    chain(kReservoirLocal) = amps.R;

    qops::ComplexVector joint = qops::ComplexVector::Zero(kJointDim);
    for (int i = 0; i < kChainDim; ++i) {
        if (chain(i) == 0.0) continue;
        for (int j = 0; j < kChainDim; ++j) {
            joint(i * kChainDim + j) = init.beta() * chain(i) * chain(j);
        }
    }
    joint(0) += init.alpha();
    return JointPureState(std::move(joint));
}

JointPureState joint_state(double t, const InitialAmplitudes& init, const SystemParams& p,
                           Regime regime) {
    return joint_state(amplitudes(regime, t, p), init);
}

qops::DensityMatrix reduced_pair(const JointPureState& state, PairLabel pair) {
    if (state.dim() != kJointDim) {
        throw ValidationError("reduced_pair: joint state must be 64-dimensional");
    }
    const std::array<int, 2> keep = {static_cast<int>(info(pair).first),
                                     static_cast<int>(info(pair).second)};
    return qops::reduce_pure_to_qubits(state, kJointQubits, keep);
}

qops::DensityMatrix rho_closed(PairLabel pair, const AmplitudeTriple& amps,
                               const InitialAmplitudes& init) {
    const Complex x = component(pair, amps);
    const double e2 = std::norm(amps.E);
    const double g2 = std::norm(amps.G);
    const double r2 = amps.R * amps.R;
    const double x2 = std::norm(x);
    // Population left in the chain's other two levels.
    const double rest = e2 + g2 + r2 - x2;
    const double a = init.alpha();
    const double b = init.beta();

    // Basis |00>, |01>, |10>, |11>; bit 1 = excited.
    qops::ComplexMatrix m = qops::ComplexMatrix::Zero(4, 4);
    m(3, 3) = b * b * x2 * x2;
    m(3, 0) = a * b * x * x;
    m(0, 3) = std::conj(m(3, 0));
    m(1, 1) = b * b * x2 * rest;
    m(2, 2) = b * b * x2 * rest;
    m(0, 0) = a * a + b * b * rest * rest;
    return qops::DensityMatrix(std::move(m));
}

double lambda_minus_closed(PairLabel pair, const SquaredAmplitudes& sq,
                           const InitialAmplitudes& init) {
    const double x2 = squared_component(pair, sq);
    const double b = init.beta();
    return b * x2 * (b * (1.0 - x2) - init.alpha());
}

double concurrence_closed(PairLabel pair, const AmplitudeTriple& amps,
                          const InitialAmplitudes& init) {
    return std::max(0.0, -2.0 * lambda_minus_closed(pair, squared(amps), init));
}

double cross_concurrence_closed(PairLabel pair, const AmplitudeTriple& amps,
                                const InitialAmplitudes& init) {
    const double e = std::abs(amps.E);
    const double g = std::abs(amps.G);
    const double r = amps.R;
    double x = 0.0;
    double y = 0.0;
    switch (pair) {
        case PairLabel::a1c2: x = e; y = g; break;
        case PairLabel::a1r2: x = e; y = r; break;
        case PairLabel::c1r2: x = g; y = r; break;
        default:
            throw ValidationError("printed cross concurrence exists only for a1c2, a1r2, c1r2");
    }
    const double a = init.alpha();
    const double b = init.beta();
    const double w = a * a * a * a * x * y * y * (1.0 - x * x) * (1.0 - y * y);
    return std::max(0.0, 2.0 * (a * b * x * y - std::sqrt(std::max(0.0, w))));
}

double pair_concurrence(const JointPureState& state, PairLabel pair) {
    return qops::wootters_concurrence(reduced_pair(state, pair));
}

double interacting_concurrence(PairLabel pair, double t, const InitialAmplitudes& init,
                               const SystemParams& p) {
    if (!is_interacting(pair)) {
        throw ValidationError("interacting_concurrence: '" + std::string(to_string(pair)) +
                              "' spans both chains");
    }
    return pair_concurrence(joint_state(t, init, p), pair);
}

double global_tangle(double t, const InitialAmplitudes& init, const SystemParams& p) {
    return qops::i_concurrence(joint_state(t, init, p), {kChainDim, kChainDim});
}

}  // namespace entflow
