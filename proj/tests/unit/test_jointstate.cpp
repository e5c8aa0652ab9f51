#include "entflow/errors.hpp"
#include "entflow/events.hpp"
#include "entflow/jointstate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace entflow;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

InitialAmplitudes random_init(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 0.5 * 3.141592653589793);
    const double th = u(rng);
    return InitialAmplitudes(std::cos(th), std::sin(th));
}

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> lg(-2.0, 1.0);
    return SystemParams::from_effective(std::pow(10.0, lg(rng)), 1.0);
}

}  // namespace

TEST(InitialAmplitudes, Validation) {
    EXPECT_NO_THROW(InitialAmplitudes(0.6, 0.8));
    EXPECT_THROW(InitialAmplitudes(0.6, 0.7), ValidationError);
    EXPECT_THROW(InitialAmplitudes(-0.6, 0.8), ValidationError);
    const InitialAmplitudes r = InitialAmplitudes::from_ratio(3.0);
    EXPECT_NEAR(r.beta() / r.alpha(), 3.0, 1e-14);
    EXPECT_THROW(InitialAmplitudes::from_ratio(-1.0), ValidationError);
}

TEST(PairLabels, NamesSwapAndKinds) {
    for (PairLabel p : kAllPairs) {
        EXPECT_EQ(parse_pair(to_string(p)), p);
        EXPECT_EQ(swap_chains(swap_chains(p)), p);
        const auto q = pair_qubits(p);
        EXPECT_NE(q[0], q[1]);
    }
    EXPECT_EQ(swap_chains(PairLabel::a1c1), PairLabel::a2c2);
    EXPECT_EQ(swap_chains(PairLabel::a1c2), PairLabel::a2c1);
    EXPECT_EQ(swap_chains(PairLabel::a1a2), PairLabel::a1a2);
    EXPECT_TRUE(is_interacting(PairLabel::c2r2));
    EXPECT_FALSE(is_interacting(PairLabel::c1r2));
    EXPECT_TRUE(is_same_kind(PairLabel::r1r2));
    EXPECT_THROW(parse_pair("a1b2"), ValidationError);
}

TEST(JointState, InitialComponents) {
    const InitialAmplitudes init(0.6, 0.8);
    const JointPureState psi = joint_state(0.0, init, SystemParams::from_effective(5.0, 1.0));
    EXPECT_EQ(psi.dim(), kJointDim);
    EXPECT_DOUBLE_EQ(psi[0].real(), 0.6);
    EXPECT_DOUBLE_EQ(psi[4 * kChainDim + 4].real(), 0.8);
    EXPECT_NEAR(psi.amplitudes().squaredNorm(), 1.0, 1e-15);
}

TEST(JointState, NoExcitationIsStationary) {
    const InitialAmplitudes init(1.0, 0.0);
    const SystemParams p = SystemParams::from_effective(5.0, 1.0);
    for (double t : {0.0, 0.3, 7.0}) {
        const JointPureState psi = joint_state(t, init, p);
        EXPECT_EQ(psi[0], Complex(1.0, 0.0));
        EXPECT_NEAR(psi.amplitudes().squaredNorm(), 1.0, 0.0);
    }
}

TEST(JointState, NormalizedAndInsideSector) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ut(0.0, 30.0);
    for (int rep = 0; rep < 100; ++rep) {
        const JointPureState psi = joint_state(ut(rng), random_init(rng), random_params(rng));
        EXPECT_NEAR(psi.amplitudes().squaredNorm(), 1.0, 1e-12);
        for (int i = 0; i < kJointDim; ++i) {
            const int c1 = i / kChainDim;
            const int c2 = i % kChainDim;
            const bool single = (c1 == 0 || c1 == 1 || c1 == 2 || c1 == 4) &&
                                (c2 == 0 || c2 == 1 || c2 == 2 || c2 == 4);
            if (!single) EXPECT_EQ(psi[i], Complex(0.0, 0.0));
        }
    }
}

TEST(ReducedPair, InitialReductions) {
    const InitialAmplitudes init(kInvSqrt2, kInvSqrt2);
    const JointPureState psi = joint_state(0.0, init, SystemParams::from_effective(5.0, 1.0));
    const auto aa = reduced_pair(psi, PairLabel::a1a2);
    EXPECT_NEAR(aa(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(aa(3, 3).real(), 0.5, 1e-15);
    EXPECT_NEAR(aa(0, 3).real(), 0.5, 1e-15);
    const auto rr = reduced_pair(psi, PairLabel::r1r2);
    EXPECT_NEAR(rr(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(rr.matrix().cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(ReducedPair, CavityPairMatchesClosedForm) {
    const InitialAmplitudes init(kInvSqrt2, kInvSqrt2);
    const SystemParams p = SystemParams::from_effective(5.0, 1.0);
    const AmplitudeTriple a = amplitudes_exact(0.3, p);
    const auto brute = reduced_pair(joint_state(a, init), PairLabel::c1c2);
    const auto closed = rho_closed(PairLabel::c1c2, a, init);
    EXPECT_LT((brute.matrix() - closed.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ReducedPair, ClosedFormsMatchPartialTraceEverywhere) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    for (int rep = 0; rep < 400; ++rep) {
        const InitialAmplitudes init = random_init(rng);
        const AmplitudeTriple a = amplitudes_exact(ut(rng), random_params(rng));
        const JointPureState psi = joint_state(a, init);
        for (PairLabel pl : {PairLabel::a1a2, PairLabel::c1c2, PairLabel::r1r2}) {
            const auto brute = reduced_pair(psi, pl);
            const auto closed = rho_closed(pl, a, init);
            EXPECT_LT((brute.matrix() - closed.matrix()).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_NEAR(concurrence_closed(pl, a, init), qops::wootters_concurrence(brute), 1e-10);
            EXPECT_NEAR(closed.matrix().trace().real(), 1.0, 1e-12);
        }
    }
    EXPECT_THROW(rho_closed(PairLabel::a1c1, amplitudes_exact(0.0, random_params(rng)),
                            InitialAmplitudes(1.0, 0.0)),
                 ValidationError);
}

TEST(ReducedPair, WoottersEqualsNegativityOnSymmetricXStates) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    int cases = 0;
    for (int rep = 0; rep < 400; ++rep) {
        const InitialAmplitudes init = random_init(rng);
        const JointPureState psi = joint_state(ut(rng), init, random_params(rng));
        for (PairLabel pl : {PairLabel::a1a2, PairLabel::c1c2, PairLabel::r1r2}) {
            const auto rho = reduced_pair(psi, pl);
            EXPECT_NEAR(qops::wootters_concurrence(rho), qops::negativity_concurrence(rho), 1e-10);
            ++cases;
        }
    }
    EXPECT_GE(cases, 1000);
}

TEST(ReducedPair, EveryReductionIsAValidDensityMatrix) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    for (int rep = 0; rep < 50; ++rep) {
        const JointPureState psi = joint_state(ut(rng), random_init(rng), random_params(rng));
        for (PairLabel pl : kAllPairs) {
            const auto rho = reduced_pair(psi, pl);
            EXPECT_LT(qops::hermiticity_defect(rho.matrix()), 1e-12);
            EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
            EXPECT_GE(qops::hermitian_eigenvalues(rho.matrix()).minCoeff(), -1e-10);
        }
    }
}

TEST(Concurrence, ChainSwapSymmetry) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    for (int rep = 0; rep < 50; ++rep) {
        const JointPureState psi = joint_state(ut(rng), random_init(rng), random_params(rng));
        for (PairLabel pl : kAllPairs) {
            EXPECT_NEAR(pair_concurrence(psi, pl), pair_concurrence(psi, swap_chains(pl)), 1e-12);
        }
    }
}

TEST(Concurrence, InitialValues) {
    const InitialAmplitudes init(0.6, 0.8);
    const JointPureState psi = joint_state(0.0, init, SystemParams::from_effective(5.0, 1.0));
    for (PairLabel pl : kAllPairs) {
        const double expected = pl == PairLabel::a1a2 ? 2.0 * 0.6 * 0.8 : 0.0;
        EXPECT_NEAR(pair_concurrence(psi, pl), expected, 1e-15) << to_string(pl);
    }
}

TEST(Concurrence, CompleteTransferAsymptotics) {
    const InitialAmplitudes init(0.6, 0.8);
    const JointPureState psi = joint_state(80.0, init, SystemParams::from_effective(5.0, 1.0));
    for (PairLabel pl : kAllPairs) {
        const double expected = pl == PairLabel::r1r2 ? 0.96 : 0.0;
        EXPECT_NEAR(pair_concurrence(psi, pl), expected, 1e-8) << to_string(pl);
    }
}

TEST(Concurrence, InteractingPairs) {
    const SystemParams p = SystemParams::from_effective(0.1, 1.0);
    for (PairLabel pl : {PairLabel::a1c1, PairLabel::c1r1, PairLabel::a1r1}) {
        EXPECT_EQ(interacting_concurrence(pl, 0.0, InitialAmplitudes(0.6, 0.8), p), 0.0);
        for (double t : {1.0, 10.0, 30.0}) {
            EXPECT_EQ(interacting_concurrence(pl, t, InitialAmplitudes(1.0, 0.0), p), 0.0);
        }
    }
    EXPECT_THROW(interacting_concurrence(PairLabel::a1c2, 1.0, InitialAmplitudes(0.6, 0.8), p),
                 ValidationError);
}

TEST(Concurrence, InteractingPairsCarryEntanglementInsideDeadWindow) {
    const InitialAmplitudes init = InitialAmplitudes::from_ratio(3.0);
    const SystemParams p = SystemParams::from_effective(0.1, 1.0);
    const auto w = dead_window(init, p, 100.0);
    ASSERT_TRUE(w.has_value());
    double best_ac = 0.0;
    double best_cr = 0.0;
    for (int i = 1; i < 50; ++i) {
        const double t = w->first + (w->second - w->first) * i / 50.0;
        best_ac = std::max(best_ac, interacting_concurrence(PairLabel::a1c1, t, init, p));
        best_cr = std::max(best_cr, interacting_concurrence(PairLabel::c1r1, t, init, p));
    }
    EXPECT_GT(best_ac, 0.0);
    EXPECT_GT(best_cr, 0.0);
}

TEST(GlobalTangle, ConservedAcrossChains) {
    const SystemParams p = SystemParams::from_effective(5.0, 1.0);
    for (double t : {0.0, 0.5, 2.0, 9.0}) {
        EXPECT_NEAR(global_tangle(t, InitialAmplitudes(kInvSqrt2, kInvSqrt2), p), 1.0, 1e-12);
        EXPECT_EQ(global_tangle(t, InitialAmplitudes(1.0, 0.0), p), 0.0);
    }
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ut(0.0, 50.0);
    for (int rep = 0; rep < 20; ++rep) {
        EXPECT_NEAR(global_tangle(ut(rng), InitialAmplitudes(0.6, 0.8), random_params(rng)), 0.96,
                    1e-10);
    }
}

TEST(CrossConcurrence, PrintedFormulaEvaluation) {
    // x = |E|, y = |G| chosen by hand: w = alpha^4 x y^2 (1 - x^2)(1 - y^2).
    const InitialAmplitudes init(0.6, 0.8);
    const AmplitudeTriple a{Complex(0.5, 0.0), Complex(0.0, 0.5), std::sqrt(0.5)};
    const double w = std::pow(0.6, 4) * 0.5 * 0.25 * 0.75 * 0.75;
    const double expected = std::max(0.0, 2.0 * (0.48 * 0.25 - std::sqrt(w)));
    EXPECT_NEAR(cross_concurrence_closed(PairLabel::a1c2, a, init), expected, 1e-15);
    EXPECT_THROW(cross_concurrence_closed(PairLabel::a1a2, a, init), ValidationError);
}

TEST(CrossConcurrence, BruteForceMatchesDerivedXStateValue) {
    // For the asymmetric cross X-states the brute-force value is
    // 2 max{0, beta x y (alpha - beta sqrt((1 - x^2)(1 - y^2)))}.
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    for (int rep = 0; rep < 200; ++rep) {
        const InitialAmplitudes init = random_init(rng);
        const AmplitudeTriple a = amplitudes_exact(ut(rng), random_params(rng));
        const JointPureState psi = joint_state(a, init);
        const double e = std::abs(a.E);
        const double g = std::abs(a.G);
        const double r = a.R;
        const struct { PairLabel pl; double x; double y; } cases[] = {
            {PairLabel::a1c2, e, g}, {PairLabel::a1r2, e, r}, {PairLabel::c1r2, g, r}};
        for (const auto& c : cases) {
            const double b = init.beta();
            const double expected = 2.0 * std::max(
                0.0, b * c.x * c.y * (init.alpha() - b * std::sqrt((1 - c.x * c.x) * (1 - c.y * c.y))));
            EXPECT_NEAR(pair_concurrence(psi, c.pl), expected, 1e-10);
        }
    }
}
