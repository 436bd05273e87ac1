#include "oracles.hpp"

#include <krein/algebra.hpp>

#include <gtest/gtest.h>

using namespace krein;

namespace {

Mat m2(cplx a, cplx b, cplx c, cplx d)
{
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

const Mat nilpotent = m2(0, 1, 0, 0);

// Largest singular value through the Jacobi oracle, in the eta model.
double oracle_norm(const Mat& a) { return oracle::largest_singular_value(a); }

} // namespace

TEST(BlockAlgebra, Dimensions)
{
    EXPECT_EQ(BlockAlgebra({2, 1}).dim(), 5);
    EXPECT_EQ(BlockAlgebra({2, 1}).ref_dim(), 3);
    EXPECT_EQ(BlockAlgebra::functions(16).dim(), 16);
    EXPECT_EQ(BlockAlgebra::matrices(3).basis().size(), 9u);
    EXPECT_THROW(BlockAlgebra(std::vector<int>{}), std::invalid_argument);
    EXPECT_THROW(BlockAlgebra({2, 0}), std::invalid_argument);
}

TEST(BlockAlgebra, ProjectionIsBlockDiagonal)
{
    const BlockAlgebra b({2, 1});
    Rng rng(1);
    const Mat a = b.project(rng.gaussian(3, 3));
    EXPECT_EQ(a(0, 2), cplx(0.0));
    EXPECT_EQ(a(2, 1), cplx(0.0));
    EXPECT_NE(a(0, 1), cplx(0.0));
}

TEST(KreinInvolution, Examples)
{
    const KreinAlgebra A = KreinAlgebra::full(1, 1);
    EXPECT_EQ(A.star(A.one()), A.one());
    EXPECT_EQ(A.star(nilpotent), m2(0, 0, -1, 0));
    const Mat diag_h = m2(2.0, 0, 0, -3.0);
    EXPECT_EQ(A.star(diag_h), diag_h);
}

TEST(KreinInvolution, AdjointForTheIndefiniteForm)
{
    const KreinAlgebra A = KreinAlgebra::full(2, 1);
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        const Mat a = A.random(rng);
        const Vec x = rng.gaussian_vector(3), y = rng.gaussian_vector(3);
        const cplx lhs = (a * x).dot(A.eta() * y);
        const cplx rhs = x.dot(A.eta() * A.star(a) * y);
        EXPECT_LT(std::abs(lhs - rhs), 1e-12);
    }
}

TEST(FundamentalSymmetry, Examples)
{
    const KreinAlgebra A = KreinAlgebra::full(1, 1);
    EXPECT_EQ(A.alpha(A.eta()), A.eta());
    EXPECT_EQ(A.alpha(nilpotent), m2(0, -1, 0, 0));
    const Mat d = m2(5.0, 0, 0, 7.0);
    EXPECT_EQ(A.alpha(d), d);
}

TEST(FundamentalSymmetry, AlphaOfStarIsTheAdjoint)
{
    const KreinAlgebra A = KreinAlgebra::full(2, 2);
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const Mat a = A.random(rng);
        EXPECT_LT((A.alpha(A.star(a)) - a.adjoint()).norm(), 1e-12);
        EXPECT_LT((A.alpha(A.star(a)) - A.star(A.alpha(a))).norm(), 1e-10);
    }
}

TEST(CStarNorm, Examples)
{
    EXPECT_NEAR(KreinAlgebra::full(2, 2).norm(identity(4)), 1.0, 1e-14);
    EXPECT_NEAR(KreinAlgebra::full(1, 1).norm(m2(0, 2, 0, 0)), 2.0, 1e-14);
}

TEST(CStarNorm, IdentityOnRandomSweep)
{
    const KreinAlgebra A = KreinAlgebra::full(2, 1);
    Rng rng(4);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Mat a = A.random(rng);
        const double n = A.norm(a);
        worst = std::max(worst, std::abs(A.norm(A.alpha(A.star(a)) * a) - n * n) / (n * n));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(CStarNorm, MatchesJacobiOracle)
{
    const KreinAlgebra A = KreinAlgebra::full(2, 2);
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const Mat a = A.random(rng);
        EXPECT_NEAR(A.norm(a), oracle_norm(a), 1e-9 * oracle_norm(a));
    }
}

TEST(EvenOddSplit, Examples)
{
    const KreinAlgebra A = KreinAlgebra::full(1, 1);
    auto [e1, o1] = even_odd_split(A, A.eta());
    EXPECT_EQ(e1, A.eta());
    EXPECT_EQ(o1, Mat::Zero(2, 2));
    const Mat flip = m2(0, 1, 1, 0);
    auto [e2, o2] = even_odd_split(A, flip);
    EXPECT_EQ(e2, Mat::Zero(2, 2));
    EXPECT_EQ(o2, flip);
    auto [e3, o3] = even_odd_split(A, A.one());
    EXPECT_EQ(e3, A.one());
    EXPECT_EQ(o3, Mat::Zero(2, 2));
}

TEST(EvenOddSplit, GradedProducts)
{
    const KreinAlgebra A = KreinAlgebra::full(2, 2);
    Rng rng(6);
    for (int k = 0; k < 50; ++k) {
        const auto [e1, o1] = even_odd_split(A, A.random(rng));
        const auto [e2, o2] = even_odd_split(A, A.random(rng));
        EXPECT_LT(A.split(e1 * e2).second.norm(), 1e-10 * e1.norm() * e2.norm());
        EXPECT_LT(A.split(o1 * o2).second.norm(), 1e-10 * o1.norm() * o2.norm());
        EXPECT_LT(A.split(e1 * o2).first.norm(), 1e-10 * e1.norm() * o2.norm());
    }
}

TEST(AxiomChecker, PassesOnFullAlgebras)
{
    for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 0}, {0, 2}}) {
        const Report r = check_krein_cstar_axioms(KreinAlgebra::full(p, q), 500, 7);
        EXPECT_TRUE(r.passed()) << p << "," << q;
    }
}

TEST(AxiomChecker, PlainCStarAlgebraHasTrivialAlpha)
{
    const KreinAlgebra A = KreinAlgebra::c_star(BlockAlgebra({2, 1}));
    EXPECT_TRUE(check_krein_cstar_axioms(A, 200, 8).passed());
    Rng rng(9);
    const Mat a = A.random(rng);
    EXPECT_EQ(A.alpha(a), a);
}

TEST(AxiomChecker, KreinBlocks)
{
    Mat eta = Mat::Zero(3, 3);
    eta(0, 0) = 1;
    eta(1, 1) = -1;
    eta(2, 2) = 1;
    EXPECT_TRUE(check_krein_cstar_axioms(KreinAlgebra::on_blocks(BlockAlgebra({2, 1}), eta), 200, 10).passed());
}

TEST(AxiomChecker, BrokenEtaFailsInvolutivity)
{
    const Report r = check_krein_cstar_axioms(KreinAlgebra::full(m2(1, 0, 0, -2)), 100, 11);
    const CheckRecord* rec = r.find("eta involutive");
    ASSERT_NE(rec, nullptr);
    EXPECT_TRUE(rec->violated());
    EXPECT_FALSE(r.find("eta hermitian")->violated());
}

TEST(AxiomChecker, RejectsZeroSamples)
{
    EXPECT_THROW(check_krein_cstar_axioms(KreinAlgebra::full(1, 1), 0, 1), std::invalid_argument);
}

TEST(AxiomChecker, DeterministicForFixedSeed)
{
    const KreinAlgebra A = KreinAlgebra::full(2, 1);
    const Report a = check_krein_cstar_axioms(A, 50, 12), b = check_krein_cstar_axioms(A, 50, 12);
    ASSERT_EQ(a.records().size(), b.records().size());
    for (std::size_t i = 0; i < a.records().size(); ++i)
        EXPECT_EQ(a.records()[i].max_violation, b.records()[i].max_violation);
}

TEST(NonDiagonalEta, CanonicalizeRecoversSignature)
{
    Rng rng(13);
    const Mat w = rng.gaussian(4, 4).householderQr().householderQ();
    const Mat eta = w * KreinAlgebra::standard_eta(1, 3) * w.adjoint();
    const CanonicalForm c = canonicalize(eta);
    EXPECT_EQ(c.p, 1);
    EXPECT_EQ(c.q, 3);
    EXPECT_LT((c.unitary.adjoint() * eta * c.unitary - KreinAlgebra::standard_eta(1, 3)).norm(), 1e-10);
    EXPECT_TRUE(check_krein_cstar_axioms(KreinAlgebra::full(eta), 200, 14).passed());
}

TEST(GeneralForm, KreinUnitaryConjugateSymmetry)
{
    // same algebra and star, symmetry conjugated by a hyperbolic rotation
    Mat w(2, 2);
    const double t = 0.3;
    w << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
    const KreinAlgebra A = KreinAlgebra::full(1, 1);
    const KreinAlgebra B = KreinAlgebra::with_form(A.basis(), A.form(), Mat(w * A.eta() * w.inverse()));
    EXPECT_TRUE(check_krein_cstar_axioms(B, 300, 15).passed());
    const auto [c, C] = norm_equivalence_constants(A, B);
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-12);
    EXPECT_GE(C, 1.0 - 1e-12);
    Rng rng(16);
    for (int k = 0; k < 50; ++k) {
        const Mat a = A.random(rng);
        const double r = B.norm(a) / A.norm(a);
        EXPECT_GE(r, c * (1 - 1e-9));
        EXPECT_LE(r, C * (1 + 1e-9));
    }
}

TEST(OrthonormalSpan, SpansAndIsOrthonormal)
{
    Rng rng(17);
    std::vector<Mat> fam = {rng.gaussian(2, 2), rng.gaussian(2, 2)};
    fam.push_back(fam[0] + 2.0 * fam[1]);
    const auto basis = orthonormal_span(fam);
    EXPECT_EQ(basis.size(), 2u);
    EXPECT_NEAR(std::abs((basis[0].adjoint() * basis[1]).trace()), 0.0, 1e-12);
}

TEST(SameAlgebra, DetectsDifferentEta)
{
    EXPECT_TRUE(same_algebra(KreinAlgebra::full(1, 1), KreinAlgebra::full(1, 1)));
    EXPECT_FALSE(same_algebra(KreinAlgebra::full(1, 1), KreinAlgebra::full(2, 0)));
}

TEST(KreinAlgebra, RejectsNonOrthonormalBasis)
{
    EXPECT_THROW(KreinAlgebra::with_eta({2.0 * identity(2)}, identity(2)), std::invalid_argument);
}
