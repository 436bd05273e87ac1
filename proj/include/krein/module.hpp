#pragma once
// Krein C*-modules over finite-dimensional C*-algebras: free modules A^n with
// an indefinite A-valued inner product, their fundamental symmetries, the
// associated Hilbert modules and the maps relating two symmetries.

#include "algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace krein {

enum class Side { right, left };

// Free module A^n with <x, y> = sum_ij x_i^* G_ij y_j, G in M_n(A).
//
// Vectors are stored as (n*k) x k matrices whose k x k blocks lie in A, and
// module operators as elements of M_n(A) acting from the left.  A left module
// uses the same storage for x^*, so that the left action a.x is stored as
// X a^* and every formula below serves both sides.
class KreinModule {
public:
    KreinModule(BlockAlgebra base, int rank, Mat gram, Side side = Side::right)
        : base_(std::move(base)), rank_(rank), gram_(std::move(gram)), side_(side)
    {
        if (rank_ < 1)
            throw std::invalid_argument("KreinModule: rank must be positive");
        if (gram_.rows() != ref_dim() || gram_.cols() != ref_dim())
            throw std::invalid_argument("KreinModule: gram has the wrong size");
        checked(gram_);
        const GramDefects d = gram_defects(base_, rank_, gram_);
        if (d.membership > 1e-12)
            throw std::invalid_argument("KreinModule: gram entries are not in the base algebra");
        if (d.hermitian > 1e-10)
            throw std::invalid_argument("KreinModule: gram is not hermitian");
        if (d.rank_deficit > 0)
            throw std::invalid_argument("KreinModule: degenerate gram");
    }

    // C^{p,q} as a module over the complex numbers.
    static KreinModule krein_space(int p, int q)
    {
        return KreinModule(BlockAlgebra{}, p + q, KreinAlgebra::standard_eta(p, q));
    }

    // A^n with gram diag(signs) tensored with the unit of A.
    static KreinModule diagonal(const BlockAlgebra& base, const std::vector<int>& signs,
                                Side side = Side::right)
    {
        const int n = int(signs.size());
        Mat d = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            d(i, i) = double(signs[std::size_t(i)]);
        return KreinModule(base, n, kron(d, identity(base.ref_dim())), side);
    }

    struct GramDefects {
        double membership = 0, hermitian = 0;
        Eigen::Index rank_deficit = 0;
    };

    static GramDefects gram_defects(const BlockAlgebra& base, int rank, const Mat& gram)
    {
        const Mat mask = kron(Mat::Ones(rank, rank), base.mask());
        GramDefects d;
        d.membership = (gram - gram.cwiseProduct(mask)).norm();
        d.hermitian = (gram - gram.adjoint()).norm() / std::max(1.0, gram.norm());
        d.rank_deficit = gram.rows() - numerical_rank(gram);
        return d;
    }

    const BlockAlgebra& base() const { return base_; }
    int rank() const { return rank_; }
    Side side() const { return side_; }
    Eigen::Index ref_dim() const { return Eigen::Index(rank_) * base_.ref_dim(); }
    const Mat& gram() const { return gram_; }

    Mat inner(const Mat& x, const Mat& y) const { return x.adjoint() * gram_ * y; }

    // Module action of a base element: x.a on the right, a.x on the left.
    Mat act(const Mat& x, const Mat& a) const { return side_ == Side::right ? Mat(x * a) : Mat(x * a.adjoint()); }

    Mat vector_mask() const { return kron(Mat::Ones(rank_, 1), base_.mask()); }
    Mat operator_mask() const { return kron(Mat::Ones(rank_, rank_), base_.mask()); }

    Mat random_vector(Rng& rng) const
    {
        return rng.gaussian(ref_dim(), base_.ref_dim()).cwiseProduct(vector_mask());
    }

    Mat random_operator(Rng& rng) const { return rng.gaussian(ref_dim(), ref_dim()).cwiseProduct(operator_mask()); }

    Mat random_base_element(Rng& rng) const { return base_.project(rng.gaussian(base_.ref_dim(), base_.ref_dim())); }

    double operator_membership_defect(const Mat& t) const { return (t - t.cwiseProduct(operator_mask())).norm(); }

    KreinModule antimodule() const { return KreinModule(base_, rank_, -gram_, side_); }

private:
    BlockAlgebra base_;
    int rank_;
    Mat gram_;
    Side side_;
};

struct FundamentalSymmetry {
    Mat op;
};

// Deterministic structural defects of a candidate symmetry: J^2 = 1, G J
// hermitian, G J positive definite.
struct SymmetryDefects {
    double involution = 0, selfadjoint = 0, positivity = 0, membership = 0;
    double worst() const { return std::max({involution, selfadjoint, positivity, membership}); }
};

inline SymmetryDefects symmetry_defects(const KreinModule& M, const Mat& J)
{
    SymmetryDefects d;
    const Mat I = identity(M.ref_dim());
    d.involution = (J * J - I).norm();
    const Mat gj = M.gram() * J;
    d.selfadjoint = (gj - gj.adjoint()).norm() / std::max(1.0, gj.norm());
    d.positivity = std::max(0.0, -normalized_min_eigenvalue(gj));
    if (normalized_min_eigenvalue(gj) <= 1e-12)
        d.positivity = std::max(d.positivity, 1.0);
    d.membership = M.operator_membership_defect(J);
    return d;
}

inline void validate_symmetry(const KreinModule& M, const FundamentalSymmetry& J)
{
    if (J.op.rows() != M.ref_dim() || J.op.cols() != M.ref_dim())
        throw std::invalid_argument("fundamental symmetry has the wrong size");
    if (symmetry_defects(M, J.op).worst() > 1e-8)
        throw std::invalid_argument("operator is not a fundamental symmetry of the module");
}

// sign(G), the symmetry whose decomposition diagonalizes the gram.
inline FundamentalSymmetry standard_symmetry(const KreinModule& M)
{
    return {sign_of(M.gram()).cwiseProduct(M.operator_mask())};
}

inline Mat krein_adjoint(const KreinModule& M, const Mat& T)
{
    return M.gram().inverse() * T.adjoint() * M.gram();
}

// Adjoint in the Hilbert module |K|^J.
inline Mat hilbert_adjoint(const KreinModule& M, const FundamentalSymmetry& J, const Mat& T)
{
    const Mat metric = hermitian_part(M.gram() * J.op);
    return metric.inverse() * T.adjoint() * metric;
}

// exp(G^{-1} H) with H anti-hermitian in M_n(A): unitary for the indefinite form.
inline Mat random_krein_unitary(const KreinModule& M, Rng& rng, double scale = 0.6)
{
    Mat h = M.random_operator(rng);
    h = Mat(0.5 * (h - h.adjoint()));
    const double nh = operator_norm(h);
    if (nh > 0)
        h *= scale / nh;
    const Mat k = M.gram().inverse() * h;
    return k.exp();
}

inline FundamentalSymmetry random_symmetry(const KreinModule& M, Rng& rng, double scale = 0.6)
{
    const Mat u = random_krein_unitary(M, rng, scale);
    return {u * standard_symmetry(M).op * u.inverse()};
}

// J' = W J W^{-1} with the hyperbolic rotation W = [[cosh t, sinh t], [sinh t, cosh t]]
// on C^{1,1}.
inline FundamentalSymmetry hyperbolic_symmetry(double t)
{
    Mat w(2, 2);
    w << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
    return {w * KreinAlgebra::standard_eta(1, 1) * w.inverse()};
}

struct FundamentalDecomposition {
    Subspace plus, minus;
};

inline FundamentalDecomposition fundamental_decomposition(const KreinModule& M, const FundamentalSymmetry& J)
{
    validate_symmetry(M, J);
    const Mat I = identity(M.ref_dim());
    return {Subspace::range_of_idempotent(0.5 * (I + J.op)), Subspace::range_of_idempotent(0.5 * (I - J.op))};
}

// |K|^J: same carrier with <x, y>' = <J x, y>.
inline KreinModule hilbertify(const KreinModule& M, const FundamentalSymmetry& J)
{
    validate_symmetry(M, J);
    return KreinModule(M.base(), M.rank(), hermitian_part(M.gram() * J.op), M.side());
}

// T_+ : K_+(J1) -> K_+(J2) and T_- : K_-(J1) -> K_-(J2), x -> ((1 +- J2)/2) x.
struct TransitionMaps {
    FundamentalDecomposition from, to;
    Mat plus, minus;           // in orthonormal coordinates of the subspaces
    Mat plus_back, minus_back; // the transitions J2 -> J1, their adjoints
    Mat plus_op, minus_op;     // as module operators P2 P1
};

inline TransitionMaps transition_maps(const KreinModule& M, const FundamentalSymmetry& J1,
                                      const FundamentalSymmetry& J2)
{
    TransitionMaps t;
    t.from = fundamental_decomposition(M, J1);
    t.to = fundamental_decomposition(M, J2);
    const Mat I = identity(M.ref_dim());
    const Mat p1 = 0.5 * (I + J1.op), m1 = 0.5 * (I - J1.op);
    const Mat p2 = 0.5 * (I + J2.op), m2 = 0.5 * (I - J2.op);
    t.plus = t.to.plus.basis().adjoint() * p2 * t.from.plus.basis();
    t.minus = t.to.minus.basis().adjoint() * m2 * t.from.minus.basis();
    t.plus_back = t.from.plus.basis().adjoint() * p1 * t.to.plus.basis();
    t.minus_back = t.from.minus.basis().adjoint() * m1 * t.to.minus.basis();
    t.plus_op = p2 * p1;
    t.minus_op = m2 * m1;
    return t;
}

// Best constants c, C with c |x|_{J1} <= |x|_{J2} <= C |x|_{J1}.
inline std::pair<double, double> norm_equivalence_constants(const KreinModule& M, const FundamentalSymmetry& J1,
                                                            const FundamentalSymmetry& J2)
{
    validate_symmetry(M, J1);
    validate_symmetry(M, J2);
    const Mat s1 = sqrt_psd(M.gram() * J1.op);
    const Mat s2 = sqrt_psd(M.gram() * J2.op);
    const RealVec sv = singular_values(s2 * s1.inverse());
    return {sv(sv.size() - 1), sv(0)};
}

// T_+ (+) T_-, the literal direct sum of the transition maps.
inline Mat transition_sum(const KreinModule& M, const FundamentalSymmetry& J1, const FundamentalSymmetry& J2)
{
    const TransitionMaps t = transition_maps(M, J1, J2);
    return t.plus_op + t.minus_op;
}

// Unitary intertwiner U with U J1 = J2 U and U^* U = 1: the unitary part of
// the transition sum V, namely V (V^* V)^{-1/2}.  V itself is not unitary
// once J1 != J2 (see transition_sum_unitarity_defect).
inline Mat intertwiner(const KreinModule& M, const FundamentalSymmetry& J1, const FundamentalSymmetry& J2)
{
    const Mat v = transition_sum(M, J1, J2);
    const Mat q = krein_adjoint(M, v) * v; // positive in |K|^{J1}
    const Mat s = sqrt_psd(M.gram() * J1.op);
    const Mat s_inv = s.inverse();
    const Mat q_frame = hermitian_part(s * q * s_inv);
    return v * (s_inv * inv_sqrt_pd(q_frame) * s);
}

inline double transition_sum_unitarity_defect(const KreinModule& M, const FundamentalSymmetry& J1,
                                              const FundamentalSymmetry& J2)
{
    const Mat v = transition_sum(M, J1, J2);
    return (krein_adjoint(M, v) * v - identity(M.ref_dim())).norm();
}

// All module operators M_n(A) as a Krein C*-algebra: star is the Krein
// adjoint, alpha is conjugation by J, the norm is that of |K|^J.
inline KreinAlgebra adjointable_algebra(const KreinModule& M, const FundamentalSymmetry& J)
{
    validate_symmetry(M, J);
    std::vector<Mat> basis;
    const auto base_basis = M.base().basis();
    for (int j = 0; j < M.rank(); ++j)
        for (int i = 0; i < M.rank(); ++i) {
            Mat e = Mat::Zero(M.rank(), M.rank());
            e(i, j) = 1.0;
            for (const Mat& b : base_basis)
                basis.push_back(kron(e, b));
        }
    return KreinAlgebra::with_form(std::move(basis), M.gram(), J.op);
}

// The six listed properties of a fundamental symmetry, on random samples.
inline Report check_symmetry(const KreinModule& M, const FundamentalSymmetry& J, int samples,
                             std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    const std::string anchor = "fundamental symmetry proposition";
    Report rep("fundamental-symmetry");
    Rng rng(seed);
    const Mat I = identity(M.ref_dim());
    Worst additive, linear, selfadj, isometric, positive;
    for (int s = 0; s < samples; ++s) {
        const Mat x = M.random_vector(rng), y = M.random_vector(rng);
        const Mat a = M.random_base_element(rng);
        const double nx = x.norm(), ny = y.norm();
        additive.update((J.op * (x + y) - J.op * x - J.op * y).norm() / (nx + ny));
        linear.update((J.op * M.act(x, a) - M.act(J.op * x, a)).norm() / (nx * std::max(1e-300, a.norm())));
        selfadj.update((M.inner(J.op * x, y) - M.inner(x, J.op * y)).norm() / (nx * ny));
        isometric.update((M.inner(J.op * x, J.op * y) - M.inner(x, y)).norm() / (nx * ny));
        for (double sign : {1.0, -1.0}) {
            const Mat z = (I + sign * J.op) * x;
            const Mat val = sign * M.inner(z, z);
            if (val.norm() > 1e-14 * nx * nx)
                positive.update(std::max(0.0, -normalized_min_eigenvalue(val)));
        }
    }
    rep.add("symmetry additive", anchor, additive.value(), tight);
    rep.add("symmetry base-linear", anchor, linear.value(), tight);
    rep.add("symmetry involutive", anchor, (J.op * J.op - I).norm(), tight);
    rep.add("symmetry self-adjoint", anchor, selfadj.value(), tight);
    rep.add("symmetry isometric", anchor, isometric.value(), tight);
    rep.add("symmetry positivity", anchor, positive.value(), tol);
    return rep;
}

// Decomposition, Hilbertification and adjoint dictionary for one symmetry.
inline Report check_decomposition(const KreinModule& M, const FundamentalSymmetry& J, int samples,
                                  std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    Report rep("fundamental-decomposition");
    const auto dec = fundamental_decomposition(M, J);
    const KreinModule H = hilbertify(M, J);
    const Mat I = identity(M.ref_dim());
    const Mat pp = 0.5 * (I + J.op), pm = 0.5 * (I - J.op);

    rep.add_count("decomposition dimensions add up", "fundamental symmetry proposition",
            double(std::abs(dec.plus.dim() + dec.minus.dim() - M.ref_dim())));
    rep.add("decomposition projections idempotent", "fundamental symmetry proposition",
            std::max((pp * pp - pp).norm(), (pm * pm - pm).norm()), tight);
    rep.add("hilbertified gram positive definite", "hilbertification",
            std::max(0.0, -normalized_min_eigenvalue(H.gram())) +
                (normalized_min_eigenvalue(H.gram()) > 1e-12 ? 0.0 : 1.0),
            tight);

    Rng rng(seed);
    Worst semidef, orth, kk1, kk2, adj_pair, adj_dict, adj_inv, adj_anti;
    for (int s = 0; s < samples; ++s) {
        const Mat x = M.random_vector(rng), y = M.random_vector(rng);
        const double nxy = x.norm() * y.norm();
        const Mat xp = pp * x, xm = pm * x, ym = pm * y;
        if (xp.norm() > 1e-14)
            semidef.update(std::max(0.0, -normalized_min_eigenvalue(M.inner(xp, xp))));
        if (xm.norm() > 1e-14)
            semidef.update(std::max(0.0, normalized_max_eigenvalue(M.inner(xm, xm))));
        orth.update(M.inner(xp, ym).norm() / nxy);
        kk1.update((M.inner(x, y) - H.inner(J.op * x, y)).norm() / nxy);
        kk2.update((M.inner(J.op * x, y) - H.inner(x, y)).norm() / nxy);

        const Mat T = M.random_operator(rng), S = M.random_operator(rng);
        const Mat Ts = krein_adjoint(M, T);
        const double nT = T.norm();
        adj_pair.update((M.inner(T * x, y) - M.inner(x, Ts * y)).norm() / (nT * nxy));
        adj_dict.update(std::max((Ts - J.op * hilbert_adjoint(M, J, T) * J.op).norm(),
                                 (hilbert_adjoint(M, J, T) - J.op * Ts * J.op).norm()) /
                        nT);
        adj_inv.update((krein_adjoint(M, Ts) - T).norm() / nT);
        adj_anti.update((krein_adjoint(M, T * S) - krein_adjoint(M, S) * Ts).norm() / (nT * S.norm()));
    }
    rep.add("decomposition semidefinite parts", "fundamental symmetry proposition", semidef.value(), tol);
    rep.add("decomposition orthogonal", "fundamental symmetry proposition", orth.value(), tol);
    rep.add("hilbertification relation <x,y> = <Jx,y>_J", "hilbertification", kk1.value(), tight);
    rep.add("hilbertification relation <Jx,y> = <x,y>_J", "hilbertification", kk2.value(), tight);
    rep.add("krein adjoint pairing", "adjoint dictionary", adj_pair.value(), tight);
    rep.add("krein adjoint dictionary T* = J T^J J", "adjoint dictionary", adj_dict.value(), tol);
    rep.add("krein adjoint involutive", "adjoint dictionary", adj_inv.value(), tight);
    rep.add("krein adjoint antimultiplicative", "adjoint dictionary", adj_anti.value(), tight);
    return rep;
}

// The two defining identities of a unitary intertwiner, and U J1 U^-1 = J2.
inline Report check_intertwiner(const KreinModule& M, const FundamentalSymmetry& J1, const FundamentalSymmetry& J2,
                                const Mat& U, double tol = default_tol)
{
    const std::string anchor = "unitary equivalence of symmetries";
    Report rep("intertwiner");
    const Mat I = identity(M.ref_dim());
    rep.add("intertwiner U J1 = J2 U", anchor, (U * J1.op - J2.op * U).norm(), tol);
    rep.add("intertwiner U* U = 1", anchor, (krein_adjoint(M, U) * U - I).norm(), tol);
    rep.add("intertwiner U J1 U^-1 = J2", anchor, (U * J1.op * U.inverse() - J2.op).norm(), tol);
    return rep;
}

// Transition maps, norm equivalence and the unitary intertwiner for a pair.
inline Report check_transition(const KreinModule& M, const FundamentalSymmetry& J1, const FundamentalSymmetry& J2,
                               int samples, std::uint64_t seed, double tol = default_tol)
{
    Report rep("transition");
    const TransitionMaps t = transition_maps(M, J1, J2);
    const bool same_dims = t.from.plus.dim() == t.to.plus.dim() && t.from.minus.dim() == t.to.minus.dim();
    Eigen::Index deficit = same_dims ? 0 : 1;
    if (same_dims) {
        deficit += t.plus.rows() - (t.plus.size() ? numerical_rank(t.plus) : 0);
        deficit += t.minus.rows() - (t.minus.size() ? numerical_rank(t.minus) : 0);
    }
    rep.add_count("transition maps bijective", "transition map theorem", double(deficit));

    const Mat I = identity(M.ref_dim());
    const Mat p1 = 0.5 * (I + J1.op), p2 = 0.5 * (I + J2.op);
    const Mat m1 = 0.5 * (I - J1.op), m2 = 0.5 * (I - J2.op);
    Rng rng(seed);
    Worst pairing, injectivity;
    for (int s = 0; s < samples; ++s) {
        const Mat x = M.random_vector(rng), y = M.random_vector(rng);
        const Mat xp = p1 * x, yp = p2 * y, xm = m1 * x, ym = m2 * y;
        const double nxy = std::max(1e-300, x.norm() * y.norm());
        pairing.update((M.inner(t.plus_op * xp, yp) - M.inner(xp, p1 * yp)).norm() / nxy);
        pairing.update((M.inner(t.minus_op * xm, ym) - M.inner(xm, m1 * ym)).norm() / nxy);
        const double before = operator_norm(M.inner(xp, xp));
        const double after = operator_norm(M.inner(t.plus_op * xp, t.plus_op * xp));
        injectivity.update(std::max(0.0, before - after) / std::max(1e-300, x.norm() * x.norm()));
    }
    rep.add("transition adjoint pairing", "transition map theorem", pairing.value(), tol);
    rep.add("transition injectivity inequality", "transition map theorem", injectivity.value(), tol);

    const auto [c, C] = norm_equivalence_constants(M, J1, J2);
    rep.add_count("norm equivalence constants ordered", "strong topology theorem",
            (c > 0 && c <= C * (1 + 1e-12) && std::isfinite(C)) ? 0.0 : 1.0,
            "c=" + std::to_string(c) + " C=" + std::to_string(C));

    rep.append(check_intertwiner(M, J1, J2, intertwiner(M, J1, J2), tol));
    return rep;
}

} // namespace krein
