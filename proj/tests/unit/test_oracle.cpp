#include "entflow/errors.hpp"
#include "entflow/oracle.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

using namespace entflow;

namespace {

// g = Omega = sqrt(1e5), Delta = 2e4: g_eff = 5, far detuned.
SystemParams far_detuned() { return SystemParams(std::sqrt(1e5), std::sqrt(1e5), 2e4, 1.0); }

}  // namespace

TEST(ReservoirDiscretization, Geometry) {
    const ReservoirDiscretization d(4, 8.0, 1.0);
    EXPECT_DOUBLE_EQ(d.spacing(), 2.0);
    EXPECT_DOUBLE_EQ(d.coupling(), std::sqrt(2.0 / (2.0 * M_PI)));
    EXPECT_DOUBLE_EQ(d.mode_detuning(0), -3.0);
    EXPECT_DOUBLE_EQ(d.mode_detuning(3), 3.0);
    EXPECT_DOUBLE_EQ(d.recurrence_time(), M_PI);
    EXPECT_TRUE(std::isinf(ReservoirDiscretization(0, 1.0, 0.0).recurrence_time()));
    EXPECT_THROW(ReservoirDiscretization(-1, 1.0, 1.0), ValidationError);
    EXPECT_THROW(ReservoirDiscretization(4, 0.0, 1.0), ValidationError);
    EXPECT_THROW(ReservoirDiscretization(4, 1.0, -1.0), ValidationError);
}

TEST(ReservoirDiscretization, CheckRejectsNarrowBandAndShortRecurrence) {
    const SystemParams p = far_detuned();
    EXPECT_THROW(ReservoirDiscretization(400, 60.0, 1.0).check(p, 1.0), ConfigError);
    // dw = 1: recurrence 2 pi < 10.
    EXPECT_THROW(ReservoirDiscretization(240, 240.0, 1.0).check(p, 10.0), ConfigError);
    EXPECT_NO_THROW(ReservoirDiscretization(960, 240.0, 1.0).check(p, 10.0));
    EXPECT_NO_THROW(ReservoirDiscretization(0, 1.0, 1.0).check(p, 10.0));
}

TEST(Hamiltonian, NoModesIsThreeLevel) {
    const SystemParams p(2.0, 3.0, 10.0, 0.0);
    const Eigen::MatrixXd h = build_hamiltonian(p, ReservoirDiscretization(0, 1.0, 0.0));
    ASSERT_EQ(h.rows(), 3);
    EXPECT_DOUBLE_EQ(h(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(h(1, 2), 2.0);
    EXPECT_DOUBLE_EQ(h(0, 2), 0.0);
    EXPECT_DOUBLE_EQ(h(1, 1), 10.0);
    EXPECT_DOUBLE_EQ((h - h.transpose()).norm(), 0.0);
    EXPECT_THROW(build_hamiltonian(p, ReservoirDiscretization(0, 1.0, 1.0)), ConfigError);
}

TEST(Hamiltonian, SymmetricWithUniformCouplings) {
    const SystemParams p = far_detuned();
    const ReservoirDiscretization d(960, 240.0, 1.0);
    const Eigen::MatrixXd h = build_hamiltonian(p, d);
    ASSERT_EQ(h.rows(), 963);
    EXPECT_DOUBLE_EQ((h - h.transpose()).norm(), 0.0);
    for (int k = 0; k < 960; ++k) {
        EXPECT_DOUBLE_EQ(h(2, 3 + k), d.coupling());
        EXPECT_DOUBLE_EQ(h(3 + k, 3 + k), d.mode_detuning(k));
    }
}

TEST(Propagator, LosslessThreeLevelMatchesMatrixExponential) {
    const SystemParams p(2.0, 3.0, 10.0, 0.0);
    const Eigen::MatrixXd h = build_hamiltonian(p, ReservoirDiscretization(0, 1.0, 0.0));
    const Propagator prop(h);
    const SingleExcitationState psi0 = excited_state(0);
    for (double t : {0.0, 0.3, 1.7, 12.5}) {
        const qops::ComplexMatrix u = (qops::ComplexMatrix(h.cast<Complex>()) * Complex(0.0, -t)).exp();
        const qops::ComplexVector ref = u * psi0.amplitudes();
        const SingleExcitationState psi = prop.evolve(psi0, t);
        EXPECT_LT((psi.amplitudes() - ref).norm(), 1e-12) << t;
    }
    EXPECT_THROW(prop.evolve(psi0, -1.0), ValidationError);
    EXPECT_THROW(prop.evolve(excited_state(2), 1.0), ValidationError);
}

TEST(Propagator, IdentityAtOriginAndNormPreserved) {
    const SystemParams p = far_detuned();
    const Propagator prop(build_hamiltonian(p, ReservoirDiscretization(960, 240.0, 1.0)));
    const SingleExcitationState psi0 = excited_state(960);
    EXPECT_LT((prop.evolve(psi0, 0.0).amplitudes() - psi0.amplitudes()).norm(), 1e-12);
    for (double t : {0.5, 3.0, 9.0}) {
        EXPECT_NEAR(prop.evolve_vector(psi0.amplitudes(), t).squaredNorm(), 1.0, 1e-10);
    }
    Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
    asym(0, 1) = 1.0;
    EXPECT_THROW(Propagator{asym}, ValidationError);
}

TEST(ExtractAmplitudes, SplitsBasis) {
    qops::ComplexVector v(5);
    v << Complex(0.5, 0.0), Complex(0.0, 0.1), Complex(0.0, 0.5), Complex(0.3, 0.0),
        Complex(0.0, 0.0);
    v /= v.norm();
    const OracleAmplitudes a = extract_amplitudes(SingleExcitationState(v));
    EXPECT_EQ(a.E, v(0));
    EXPECT_EQ(a.C, v(1));
    EXPECT_EQ(a.G, v(2));
    EXPECT_NEAR(a.R, std::abs(v(3)), 1e-15);
}

TEST(Comparison, FarDetunedAgreesWithClosedForm) {
    const OracleComparison c =
        compare_with_closed_form(far_detuned(), ReservoirDiscretization(960, 240.0, 1.0), 10.0, 500);
    EXPECT_LT(c.max_err_e2, 0.02);
    EXPECT_LT(c.max_err_g2, 0.02);
    EXPECT_LT(c.max_err_r2, 0.02);
    EXPECT_LT(c.max_norm_defect, 1e-10);
    EXPECT_LT(c.max_c2, 1e-3);
}

TEST(Comparison, ErrorFallsAsBandWidens) {
    // Fixed spacing 0.25, so the recurrence time stays at 8 pi.
    const SystemParams p = far_detuned();
    double prev = 1.0;
    for (int n : {480, 960, 1920}) {
        const double b = 0.25 * n;
        const OracleComparison c = compare_with_closed_form(p, ReservoirDiscretization(n, b, 1.0), 10.0, 300);
        const double err = std::max({c.max_err_e2, c.max_err_g2, c.max_err_r2});
        EXPECT_LT(err, prev) << n;
        prev = err;
    }
}

TEST(Leakage, ScalesWithDetuning) {
    // Lossless, g = Omega: peak |C|^2 = 4 g^2 / (Delta^2 + 8 g^2).
    const ReservoirDiscretization none(0, 1.0, 0.0);
    const SystemParams p10(1.0, 1.0, 10.0, 0.0);
    const double l10 = leakage_bound(p10, none, 20.0, 20000);
    EXPECT_NEAR(l10, 4.0 / 108.0, 2e-3);
    const double l100 = leakage_bound(SystemParams(1.0, 1.0, 100.0, 0.0), none, 20.0, 200000);
    EXPECT_NEAR(l10 / l100, 100.0, 10.0);
    EXPECT_EQ(leakage_bound(SystemParams(0.0, 0.0, 10.0, 0.0), none, 20.0), 0.0);
}

TEST(CollectiveChain, HandComputedFourModes) {
    const std::vector<double> g{1.0, 1.0, 1.0, 1.0};
    const std::vector<double> w{-3.0, -1.0, 1.0, 3.0};
    const CollectiveChain c = collective_chain(g, w, 2);
    ASSERT_EQ(c.depth(), 2);
    EXPECT_NEAR(c.norms[0], 2.0, 1e-14);
    EXPECT_NEAR(c.norms[1], std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(c.onsite[0], 0.0, 1e-14);
    EXPECT_NEAR(c.onsite[1], 0.0, 1e-14);
    EXPECT_NEAR(c.vectors(0, 0), 0.5, 1e-14);
    EXPECT_NEAR(c.vectors(3, 1), 3.0 / (2.0 * std::sqrt(5.0)), 1e-14);
    EXPECT_FALSE(c.truncated);
    EXPECT_THROW(collective_chain(g, w, 0), ValidationError);
    EXPECT_THROW(collective_chain(g, w, 5), ValidationError);
    const std::vector<double> short_w{1.0};
    EXPECT_THROW(collective_chain(g, short_w, 1), ValidationError);
}

TEST(CollectiveChain, OrthonormalAndTridiagonal) {
    const ReservoirDiscretization d(400, 100.0, 1.0);
    const CollectiveChain c = collective_chain(d, 10);
    ASSERT_EQ(c.depth(), 10);
    const Eigen::MatrixXd gram = c.vectors.transpose() * c.vectors;
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(10, 10)).norm(), 1e-12);
    for (double o : c.onsite) EXPECT_NEAR(o, 0.0, 1e-10);
    Eigen::VectorXd w(400);
    for (int k = 0; k < 400; ++k) w(k) = d.mode_detuning(k);
    const Eigen::MatrixXd proj = c.vectors.transpose() * w.asDiagonal() * c.vectors;
    double off = 0.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if (std::abs(i - j) > 1) off = std::max(off, std::abs(proj(i, j)));
    EXPECT_LT(off, 1e-9);
    for (int i = 0; i + 1 < 10; ++i) EXPECT_NEAR(std::abs(proj(i, i + 1)), c.norms[i + 1], 1e-9);
}

TEST(CollectiveChain, TruncatesOnDegenerateSpectrum) {
    const std::vector<double> g{1.0, 2.0, 3.0};
    const std::vector<double> w{0.5, 0.5, 0.5};
    const CollectiveChain c = collective_chain(g, w, 3);
    EXPECT_TRUE(c.truncated);
    EXPECT_EQ(c.depth(), 1);
}

TEST(CollectiveChain, FullDepthHamiltonianIsEquivalent) {
    const SystemParams p(3.0, 2.0, 40.0, 1.0);
    const ReservoirDiscretization d(12, 60.0, 1.0);
    const CollectiveChain c = collective_chain(d, 12);
    ASSERT_FALSE(c.truncated);
    const Eigen::MatrixXd hc = chain_hamiltonian(p, c);
    const Eigen::MatrixXd hb = build_hamiltonian(p, d);
    ASSERT_EQ(hc.rows(), hb.rows());
    EXPECT_NEAR(hc(2, 3), c.norms[0], 1e-14);
    const Eigen::VectorXd ec = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hc).eigenvalues();
    const Eigen::VectorXd eb = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hb).eigenvalues();
    EXPECT_LT((ec - eb).cwiseAbs().maxCoeff(), 1e-10);
}
