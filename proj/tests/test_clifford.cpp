#include "oracles.hpp"

#include <krein/clifford.hpp>

#include <gtest/gtest.h>

using namespace krein;

namespace {

std::vector<cplx> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

MultiVector wedge_all(const PseudoEuclidean& sp, const std::vector<Vec>& vs)
{
    MultiVector out = MultiVector::scalar(sp, 1.0);
    for (const Vec& v : vs)
        out = wedge(out, MultiVector::vector(sp, v));
    return out;
}

cplx metric_pairing(const PseudoEuclidean& sp, const Vec& v, const Vec& w)
{
    cplx s = 0.0;
    for (int i = 0; i < sp.n(); ++i)
        s += std::conj(v(i)) * sp.metric(i) * w(i);
    return s;
}

Blade bits(std::initializer_list<int> idx)
{
    Blade b = 0;
    for (int i : idx)
        b |= Blade(1) << i;
    return b;
}

} // namespace

TEST(ReorderSign, MatchesPermutationParity)
{
    for (Blade s = 0; s < 32; ++s)
        for (Blade t = 0; t < 32; ++t) {
            if (s & t)
                continue;
            std::vector<int> seq;
            for (int i = 0; i < 5; ++i)
                if (s >> i & 1)
                    seq.push_back(i);
            for (int i = 0; i < 5; ++i)
                if (t >> i & 1)
                    seq.push_back(i);
            EXPECT_EQ(reorder_sign(s, t), double(oracle::permutation_sign(seq))) << s << " " << t;
        }
}

TEST(Wedge, Examples)
{
    const PseudoEuclidean sp(2, 1);
    const auto e0 = MultiVector::generator(sp, 0), e1 = MultiVector::generator(sp, 1),
               e2 = MultiVector::generator(sp, 2);
    EXPECT_EQ(wedge(e0, e1)[bits({0, 1})], cplx(1.0));
    EXPECT_EQ(wedge(e1, e0)[bits({0, 1})], cplx(-1.0));
    EXPECT_EQ(wedge(e0, e0).coeffs().norm(), 0.0);
    const auto w = wedge(e0 + e1, e2);
    EXPECT_EQ(w[bits({0, 2})], cplx(1.0));
    EXPECT_EQ(w[bits({1, 2})], cplx(1.0));
}

TEST(Wedge, MatchesAlternationOracle)
{
    const PseudoEuclidean sp(2, 2);
    Rng rng(1);
    for (int k = 1; k <= 4; ++k) {
        std::vector<Vec> vs;
        std::vector<std::vector<cplx>> raw;
        for (int i = 0; i < k; ++i) {
            vs.push_back(rng.gaussian_vector(4));
            raw.push_back(to_std(vs.back()));
        }
        const auto expected = oracle::alternation(raw, 4);
        const MultiVector w = wedge_all(sp, vs);
        for (Eigen::Index s = 0; s < 16; ++s)
            EXPECT_LT(std::abs(w.coeffs()(s) - expected[std::size_t(s)]), 1e-12) << "k " << k;
    }
}

TEST(GrassmannInner, Examples)
{
    const PseudoEuclidean sp(1, 1);
    const auto e01 = MultiVector::blade(sp, bits({0, 1}));
    EXPECT_EQ(grassmann_inner(e01, e01), cplx(-1.0));
    EXPECT_EQ(grassmann_inner(MultiVector::scalar(sp, 1.0), MultiVector::scalar(sp, 1.0)), cplx(1.0));
    EXPECT_EQ(grassmann_inner(MultiVector::generator(sp, 0), e01), cplx(0.0));
}

TEST(GrassmannInner, GramDeterminantOnDecomposables)
{
    const PseudoEuclidean sp(2, 1);
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + trial % 3;
        std::vector<Vec> vs, ws;
        for (int i = 0; i < k; ++i) {
            vs.push_back(rng.gaussian_vector(3));
            ws.push_back(rng.gaussian_vector(3));
        }
        Mat g(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                g(i, j) = metric_pairing(sp, vs[std::size_t(i)], ws[std::size_t(j)]);
        const cplx ref = oracle::laplace_det(g);
        const cplx got = grassmann_inner(wedge_all(sp, vs), wedge_all(sp, ws));
        EXPECT_LT(std::abs(got - ref), 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST(SecondQuantization, SignsInSignatureOneOne)
{
    const PseudoEuclidean sp(1, 1);
    const Mat J = second_quantized_J(sp);
    EXPECT_EQ(J(0, 0), cplx(1.0));
    EXPECT_EQ(J(1, 1), cplx(1.0));
    EXPECT_EQ(J(2, 2), cplx(-1.0));
    EXPECT_EQ(J(3, 3), cplx(-1.0));
    EXPECT_EQ((J * J - identity(4)).norm(), 0.0);
}

TEST(CliffordProduct, DefiningRelations)
{
    const PseudoEuclidean sp(2, 2);
    for (int i = 0; i < 4; ++i) {
        const auto ei = MultiVector::generator(sp, i);
        const auto sq = clifford_product(ei, ei);
        EXPECT_EQ(sq[0], cplx(sp.metric(i)));
        EXPECT_EQ((sq - MultiVector::scalar(sp, sp.metric(i))).coeffs().norm(), 0.0);
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                continue;
            const auto ej = MultiVector::generator(sp, j);
            const auto ac = clifford_product(ei, ej) + clifford_product(ej, ei);
            EXPECT_EQ(ac.coeffs().norm(), 0.0);
        }
    }
}

TEST(CliffordProduct, Associative)
{
    const PseudoEuclidean sp(2, 2);
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const auto a = MultiVector::random(sp, rng), b = MultiVector::random(sp, rng),
                   c = MultiVector::random(sp, rng);
        const auto lhs = clifford_product(clifford_product(a, b), c);
        const auto rhs = clifford_product(a, clifford_product(b, c));
        EXPECT_LT((lhs - rhs).coeffs().norm(), 1e-10 * lhs.coeffs().norm());
    }
}

TEST(CliffordAction, Examples)
{
    const PseudoEuclidean sp(1, 1);
    const auto one = MultiVector::scalar(sp, 1.0);
    const auto e0 = MultiVector::generator(sp, 0), e1 = MultiVector::generator(sp, 1);
    EXPECT_EQ((clifford_action(0, one) - e0).coeffs().norm(), 0.0);
    EXPECT_EQ((clifford_action(0, e0) - one).coeffs().norm(), 0.0);
    EXPECT_EQ((clifford_action(1, e1) + one).coeffs().norm(), 0.0);
}

TEST(CliffordAction, AgreesWithLeftMultiplication)
{
    const PseudoEuclidean sp(2, 1);
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const auto a = MultiVector::random(sp, rng), w = MultiVector::random(sp, rng);
        EXPECT_LT((clifford_action(a, w) - clifford_product(a, w)).coeffs().norm(), 1e-10);
        EXPECT_LT((clifford_symbol(sp, clifford_action(a)) - a).coeffs().norm(), 1e-12);
    }
}

TEST(CliffordAction, AnticommutatorsExact)
{
    for (auto [p, q] : {std::pair{1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 3}})
        EXPECT_LT(anticommutator_defect(clifford_generators(PseudoEuclidean(p, q)), PseudoEuclidean(p, q)), 1e-12);
}

TEST(CliffordAlgebra, TrivialSpaceIsScalars)
{
    const KreinAlgebra A = clifford_krein_algebra(PseudoEuclidean(0, 0));
    EXPECT_EQ(A.dim(), 1);
    EXPECT_TRUE(check_krein_cstar_axioms(A, 20, 5).passed());
}

TEST(CliffordAlgebra, GeneratorsAreKreinSelfAdjoint)
{
    const PseudoEuclidean sp(1, 1);
    const KreinAlgebra A = clifford_krein_algebra(sp);
    for (int i = 0; i < 2; ++i) {
        const Mat c = clifford_generator(sp, i);
        EXPECT_LT((A.star(c) - c).norm(), 1e-12);
        EXPECT_LT((A.alpha(c) - sp.metric(i) * c).norm(), 1e-12);
    }
    EXPECT_TRUE(check_krein_cstar_axioms(A, 100, 6).passed());
}

TEST(CliffordAlgebra, StarIsConjugateReversal)
{
    const PseudoEuclidean sp(2, 1);
    const KreinAlgebra A = clifford_krein_algebra(sp);
    Rng rng(7);
    const auto a = MultiVector::random(sp, rng);
    EXPECT_LT((A.star(clifford_action(a)) - clifford_action(clifford_star(a))).norm(), 1e-10);
    EXPECT_LT((A.alpha(clifford_action(a)) - clifford_action(clifford_alpha(a))).norm(), 1e-10);
}

TEST(CliffordChecker, PassesUpToFourDimensions)
{
    for (auto [p, q] : {std::pair{1, 0}, {1, 1}, {2, 1}, {2, 2}, {1, 3}}) {
        const Report r = check_clifford(PseudoEuclidean(p, q), 20, 8);
        EXPECT_TRUE(r.passed()) << p << "," << q;
        EXPECT_FALSE(r.find("representation faithful (rank 2^n)")->violated());
    }
}

TEST(Spinors, SignatureExamples)
{
    EXPECT_EQ(spinor_signature(gamma_rep(PseudoEuclidean(1, 1))), std::make_pair(1, 1));
    EXPECT_EQ(spinor_signature(gamma_rep(PseudoEuclidean(1, 3))), std::make_pair(2, 2));
    EXPECT_EQ(gamma_rep(PseudoEuclidean(2, 0)).spinor_dim(), 2);
}

TEST(Spinors, GammasAndSymmetry)
{
    for (auto [p, q] : {std::pair{1, 1}, {2, 2}, {1, 3}, {0, 2}, {3, 1}}) {
        const PseudoEuclidean sp(p, q);
        const GammaRep g = gamma_rep(sp);
        EXPECT_LT(anticommutator_defect(g.gammas, sp), 1e-12);
        const auto d = g.spinor_dim();
        EXPECT_LT((g.A * g.A - identity(d)).norm(), 1e-12);
        EXPECT_LT((g.A - g.A.adjoint()).norm(), 1e-12);
        for (int i = 0; i < sp.n(); ++i) {
            // conjugation by A lifts the metric symmetry on generators
            const Mat& gi = g.gammas[std::size_t(i)];
            EXPECT_LT((g.A * gi.adjoint() * g.A - gi).norm(), 1e-12) << p << "," << q << " i " << i;
        }
    }
}

TEST(Spinors, CheckerPasses)
{
    for (auto [p, q] : {std::pair{1, 1}, {2, 2}, {1, 3}}) {
        const Report r = check_spinor(PseudoEuclidean(p, q), 20, 9);
        EXPECT_TRUE(r.passed()) << p << "," << q;
        EXPECT_FALSE(r.find("spinor signature")->violated());
    }
}

TEST(Spinors, ModuleIsAFullBimodule)
{
    const Bimodule S = spinor_module(PseudoEuclidean(1, 1));
    EXPECT_EQ(S.dim, 2);
    const Fullness f = fullness(S);
    EXPECT_EQ(f.left_rank, 4);
    EXPECT_EQ(f.right_rank, 1);
    EXPECT_TRUE(check_bimodule(S, 30, 10).passed());
}

TEST(Spinors, OddDimensionRejected)
{
    EXPECT_THROW(gamma_rep(PseudoEuclidean(2, 1)), std::invalid_argument);
    EXPECT_THROW(PseudoEuclidean(-1, 2), std::invalid_argument);
}
