#include "oracles.hpp"

#include <krein/module.hpp>

#include <gtest/gtest.h>

using namespace krein;

namespace {

Mat unit_col(Eigen::Index d, Eigen::Index i)
{
    Mat e = Mat::Zero(d, 1);
    e(i, 0) = 1.0;
    return e;
}

Mat m2(cplx a, cplx b, cplx c, cplx d)
{
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

TEST(KreinInnerProduct, KreinSpaceExamples)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    EXPECT_EQ(K.inner(unit_col(2, 0), unit_col(2, 0))(0, 0), cplx(1.0));
    EXPECT_EQ(K.inner(unit_col(2, 1), unit_col(2, 1))(0, 0), cplx(-1.0));
    EXPECT_EQ(K.inner(unit_col(2, 0), unit_col(2, 1))(0, 0), cplx(0.0));
}

TEST(KreinInnerProduct, RankTwoOverMatricesMatchesBlockExpansion)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const Mat x = M.random_vector(rng), y = M.random_vector(rng);
        const Mat expected = x.topRows(2).adjoint() * y.topRows(2) - x.bottomRows(2).adjoint() * y.bottomRows(2);
        EXPECT_LT((M.inner(x, y) - expected).norm(), 1e-12);
        const Mat a = M.random_base_element(rng);
        // right linear, conjugate-linear on the left
        EXPECT_LT((M.inner(x, M.act(y, a)) - M.inner(x, y) * a).norm(), 1e-10);
        EXPECT_LT((M.inner(M.act(x, a), y) - a.adjoint() * M.inner(x, y)).norm(), 1e-10);
        EXPECT_LT((M.inner(x, y).adjoint() - M.inner(y, x)).norm(), 1e-12);
    }
}

TEST(KreinModule, AntimoduleFlipsTheForm)
{
    const KreinModule K = KreinModule::krein_space(2, 1);
    const KreinModule A = K.antimodule();
    EXPECT_EQ(A.inner(unit_col(3, 0), unit_col(3, 0))(0, 0), cplx(-1.0));
    EXPECT_EQ(A.inner(unit_col(3, 2), unit_col(3, 2))(0, 0), cplx(1.0));
    EXPECT_EQ(A.antimodule().gram(), K.gram());
}

TEST(KreinModule, RejectsDegenerateGram)
{
    EXPECT_THROW(KreinModule(BlockAlgebra{}, 2, Mat::Zero(2, 2)), std::invalid_argument);
    EXPECT_THROW(KreinModule(BlockAlgebra{}, 2, m2(1, 1, 1, 1)), std::invalid_argument);
    EXPECT_THROW(KreinModule(BlockAlgebra{}, 2, m2(1, 1, 0, -1)), std::invalid_argument);
    EXPECT_THROW(KreinModule(BlockAlgebra{}, 0, Mat(0, 0)), std::invalid_argument);
}

TEST(FundamentalDecomposition, StandardSymmetry)
{
    const KreinModule K = KreinModule::krein_space(2, 1);
    const auto dec = fundamental_decomposition(K, standard_symmetry(K));
    EXPECT_EQ(dec.plus.dim(), 2);
    EXPECT_EQ(dec.minus.dim(), 1);
    EXPECT_LT(dec.minus.distance(Subspace::range_of(unit_col(3, 2))), 1e-12);
}

TEST(FundamentalDecomposition, PositiveDefiniteGramHasTrivialMinus)
{
    const KreinModule K = KreinModule::krein_space(3, 0);
    const FundamentalSymmetry J = standard_symmetry(K);
    EXPECT_EQ(J.op, identity(3));
    const auto dec = fundamental_decomposition(K, J);
    EXPECT_EQ(dec.plus.dim(), 3);
    EXPECT_EQ(dec.minus.dim(), 0);
}

TEST(FundamentalDecomposition, HyperbolicSymmetryTiltsTheAxes)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    const FundamentalSymmetry J = hyperbolic_symmetry(0.3);
    const auto dec = fundamental_decomposition(K, J);
    ASSERT_EQ(dec.plus.dim(), 1);
    const Vec v = dec.plus.basis().col(0);
    // positive axis rotated to (cosh t, sinh t)
    EXPECT_NEAR(std::abs(v(1) / v(0)), std::tanh(0.3), 1e-12);
    EXPECT_GT(K.inner(Mat(v), Mat(v))(0, 0).real(), 0.0);
}

TEST(FundamentalDecomposition, RejectsNonSymmetry)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    EXPECT_THROW(fundamental_decomposition(K, {identity(2)}), std::invalid_argument);
    EXPECT_THROW(fundamental_decomposition(K, {identity(3)}), std::invalid_argument);
}

TEST(Hilbertification, GramIsPositive)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra({2, 1}), {1, -1});
    Rng rng(2);
    for (int k = 0; k < 10; ++k) {
        const KreinModule H = hilbertify(M, random_symmetry(M, rng));
        for (double e : oracle::jacobi_eigenvalues(H.gram()))
            EXPECT_GT(e, 0.0);
    }
}

TEST(KreinAdjoint, Examples)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    EXPECT_LT((krein_adjoint(K, m2(0, 1, 0, 0)) - m2(0, 0, -1, 0)).norm(), 1e-15);
    const FundamentalSymmetry J = standard_symmetry(K);
    EXPECT_LT((krein_adjoint(K, J.op) - J.op).norm(), 1e-15);
}

TEST(KreinAdjoint, DictionaryAgainstHilbertAdjoint)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const FundamentalSymmetry J = random_symmetry(M, rng);
        const Mat T = M.random_operator(rng);
        const Mat lhs = krein_adjoint(M, T), rhs = J.op * hilbert_adjoint(M, J, T) * J.op;
        EXPECT_LT((lhs - rhs).norm(), 1e-9 * T.norm());
    }
}

TEST(RandomKreinUnitary, PreservesTheForm)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra({2, 1}), {1, 1, -1});
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        const Mat U = random_krein_unitary(M, rng);
        EXPECT_LT((krein_adjoint(M, U) * U - identity(M.ref_dim())).norm(), 1e-10);
        EXPECT_LT(M.operator_membership_defect(U), 1e-12);
    }
}

TEST(SymmetryChecker, PassesOnStandardAndRandomSymmetries)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
    EXPECT_TRUE(check_symmetry(M, standard_symmetry(M), 100, 5).passed());
    Rng rng(6);
    for (int k = 0; k < 20; ++k) {
        const Report r = check_symmetry(M, random_symmetry(M, rng), 50, 7 + k);
        EXPECT_TRUE(r.passed()) << "sample " << k;
        EXPECT_EQ(r.records().size(), 6u);
    }
}

TEST(SymmetryChecker, NonInvolutionFails)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    FundamentalSymmetry J = standard_symmetry(K);
    J.op *= 1.1;
    const Report r = check_symmetry(K, J, 20, 8);
    EXPECT_TRUE(r.find("symmetry involutive")->violated());
    EXPECT_TRUE(r.find("symmetry isometric")->violated());
    EXPECT_FALSE(r.find("symmetry additive")->violated());
}

TEST(DecompositionChecker, Passes)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra({2, 1}), {1, -1});
    Rng rng(9);
    EXPECT_TRUE(check_decomposition(M, random_symmetry(M, rng), 100, 10).passed());
    EXPECT_TRUE(check_decomposition(M, standard_symmetry(M), 100, 11).passed());
}

TEST(Transition, EqualSymmetriesGiveIdentity)
{
    const KreinModule K = KreinModule::krein_space(2, 2);
    const FundamentalSymmetry J = standard_symmetry(K);
    const TransitionMaps t = transition_maps(K, J, J);
    EXPECT_LT((t.plus - identity(2)).norm(), 1e-12);
    EXPECT_LT((t.minus - identity(2)).norm(), 1e-12);
    EXPECT_LT((intertwiner(K, J, J) - identity(4)).norm(), 1e-12);
    const auto [c, C] = norm_equivalence_constants(K, J, J);
    EXPECT_NEAR(c, 1.0, 1e-12);
    EXPECT_NEAR(C, 1.0, 1e-12);
}

TEST(Transition, HyperbolicNormConstants)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    const auto [c, C] = norm_equivalence_constants(K, standard_symmetry(K), hyperbolic_symmetry(0.3));
    EXPECT_NEAR(c, std::exp(-0.3), 1e-6);
    EXPECT_NEAR(C, std::exp(0.3), 1e-6);
}

TEST(Transition, NormConstantsBoundRandomVectors)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra({2, 1}), {1, -1});
    Rng rng(12);
    const FundamentalSymmetry J1 = random_symmetry(M, rng), J2 = random_symmetry(M, rng);
    const auto [c, C] = norm_equivalence_constants(M, J1, J2);
    const KreinModule H1 = hilbertify(M, J1), H2 = hilbertify(M, J2);
    for (int k = 0; k < 100; ++k) {
        const Mat x = M.random_vector(rng);
        const double n1 = std::sqrt(operator_norm(H1.inner(x, x)));
        const double n2 = std::sqrt(operator_norm(H2.inner(x, x)));
        EXPECT_LE(n2, C * n1 * (1 + 1e-9));
        EXPECT_GE(n2, c * n1 * (1 - 1e-9));
    }
}

TEST(Transition, RandomPairsPassTheChecker)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
    Rng rng(13);
    for (int k = 0; k < 10; ++k) {
        const FundamentalSymmetry J1 = random_symmetry(M, rng), J2 = random_symmetry(M, rng);
        EXPECT_TRUE(check_transition(M, J1, J2, 30, 14 + k).passed()) << "pair " << k;
    }
}

TEST(Intertwiner, UnitaryAndIntertwining)
{
    const KreinModule K = KreinModule::krein_space(2, 1);
    Rng rng(15);
    const FundamentalSymmetry J1 = random_symmetry(K, rng), J2 = random_symmetry(K, rng);
    const Mat U = intertwiner(K, J1, J2);
    EXPECT_LT((U * J1.op - J2.op * U).norm(), 1e-9);
    EXPECT_LT((krein_adjoint(K, U) * U - identity(3)).norm(), 1e-9);
}

TEST(Intertwiner, TransitionSumAloneIsNotUnitary)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    EXPECT_GT(transition_sum_unitarity_defect(K, standard_symmetry(K), hyperbolic_symmetry(0.3)), 1e-3);
    EXPECT_LT(transition_sum_unitarity_defect(K, standard_symmetry(K), standard_symmetry(K)), 1e-12);
}

TEST(Intertwiner, ScaledMapFailsTheChecker)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    const FundamentalSymmetry J1 = standard_symmetry(K), J2 = hyperbolic_symmetry(0.3);
    const TransitionMaps t = transition_maps(K, J1, J2);
    const Mat bad = t.plus_op + 1.5 * t.minus_op;
    const Report r = check_intertwiner(K, J1, J2, bad);
    EXPECT_TRUE(r.find("intertwiner U* U = 1")->violated());
    EXPECT_FALSE(r.find("intertwiner U J1 = J2 U")->violated());
}

TEST(AdjointableAlgebra, KreinSpaceGivesTheMatrixAlgebra)
{
    const KreinModule K = KreinModule::krein_space(1, 1);
    const KreinAlgebra A = adjointable_algebra(K, standard_symmetry(K));
    const KreinAlgebra B = KreinAlgebra::full(1, 1);
    Rng rng(16);
    for (int k = 0; k < 10; ++k) {
        const Mat a = B.random(rng);
        EXPECT_LT((A.star(a) - B.star(a)).norm(), 1e-12);
        EXPECT_LT((A.alpha(a) - B.alpha(a)).norm(), 1e-12);
        EXPECT_NEAR(A.norm(a), B.norm(a), 1e-10 * B.norm(a));
    }
}

TEST(AdjointableAlgebra, SatisfiesTheAxiomsForRandomSymmetry)
{
    const KreinModule M = KreinModule::diagonal(BlockAlgebra({1, 1}), {1, -1});
    Rng rng(17);
    EXPECT_TRUE(check_krein_cstar_axioms(adjointable_algebra(M, random_symmetry(M, rng)), 200, 18).passed());
}
