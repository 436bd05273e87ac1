#pragma once
// Finite-dimensional C*-algebras and Krein C*-algebras, realized as matrix
// algebras acting on a reference space with an indefinite form.

#include "linalg.hpp"
#include "report.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace krein {

// Direct sum of full matrix algebras M_{k_1} + ... + M_{k_r}, acting
// block-diagonally on C^{k_1 + ... + k_r}.
class BlockAlgebra {
public:
    BlockAlgebra() : BlockAlgebra(std::vector<int>{1}) {}
    explicit BlockAlgebra(std::vector<int> blocks) : blocks_(std::move(blocks))
    {
        if (blocks_.empty())
            throw std::invalid_argument("BlockAlgebra: need at least one block");
        for (int k : blocks_)
            if (k <= 0)
                throw std::invalid_argument("BlockAlgebra: block sizes must be positive");
        offsets_.resize(blocks_.size());
        int off = 0;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            offsets_[i] = off;
            off += blocks_[i];
        }
        ref_dim_ = off;
    }

    static BlockAlgebra matrices(int k) { return BlockAlgebra({k}); }
    // Functions on a finite set of `points` points.
    static BlockAlgebra functions(int points) { return BlockAlgebra(std::vector<int>(points, 1)); }

    const std::vector<int>& blocks() const { return blocks_; }
    int ref_dim() const { return ref_dim_; }
    int dim() const
    {
        return std::accumulate(blocks_.begin(), blocks_.end(), 0, [](int s, int k) { return s + k * k; });
    }

    Mat mask() const
    {
        Mat m = Mat::Zero(ref_dim_, ref_dim_);
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            m.block(offsets_[i], offsets_[i], blocks_[i], blocks_[i]).setOnes();
        return m;
    }

    Mat project(const Mat& a) const { return a.cwiseProduct(mask()); }

    // Matrix units of every block; orthonormal for the Frobenius pairing.
    std::vector<Mat> basis() const
    {
        std::vector<Mat> out;
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (int j = 0; j < blocks_[b]; ++j)
                for (int i = 0; i < blocks_[b]; ++i) {
                    Mat e = Mat::Zero(ref_dim_, ref_dim_);
                    e(offsets_[b] + i, offsets_[b] + j) = 1.0;
                    out.push_back(std::move(e));
                }
        return out;
    }

    bool operator==(const BlockAlgebra& o) const { return blocks_ == o.blocks_; }

private:
    std::vector<int> blocks_;
    std::vector<int> offsets_;
    int ref_dim_ = 0;
};

// A unital *-subalgebra of M_n with
//   star(a)  = form^{-1} a^H form     (adjoint for the indefinite form)
//   alpha(a) = sym a sym              (fundamental symmetry)
// and C*-norm the operator norm for the positive metric form*sym.  When both
// form and symmetry are one hermitian involution eta this is the concrete
// algebra of operators on the Krein space C^{p,q}.
class KreinAlgebra {
public:
    static KreinAlgebra full(const Mat& eta)
    {
        const auto n = eta.rows();
        std::vector<Mat> basis;
        basis.reserve(std::size_t(n * n));
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                Mat e = Mat::Zero(n, n);
                e(i, j) = 1.0;
                basis.push_back(std::move(e));
            }
        KreinAlgebra a = with_eta(std::move(basis), eta);
        a.full_ = true;
        return a;
    }

    static KreinAlgebra full(int p, int q) { return full(standard_eta(p, q)); }

    static KreinAlgebra on_blocks(const BlockAlgebra& blocks, const Mat& eta)
    {
        KreinAlgebra a = with_eta(blocks.basis(), eta);
        a.blocks_ = blocks;
        return a;
    }

    // A plain C*-algebra viewed as a Krein C*-algebra with trivial alpha.
    static KreinAlgebra c_star(const BlockAlgebra& blocks)
    {
        return on_blocks(blocks, identity(blocks.ref_dim()));
    }

    static KreinAlgebra scalars() { return c_star(BlockAlgebra{}); }

    // Subalgebra spanned by an orthonormal (Frobenius) family, with star and
    // alpha both induced by the hermitian involution eta.
    static KreinAlgebra with_eta(std::vector<Mat> orthonormal_basis, const Mat& eta)
    {
        KreinAlgebra a;
        a.n_ = eta.rows();
        a.form_ = checked(eta);
        a.form_inv_ = eta;
        a.sym_ = eta;
        a.metric_sqrt_ = identity(a.n_);
        a.metric_sqrt_inv_ = identity(a.n_);
        a.eta_model_ = true;
        a.set_basis(std::move(orthonormal_basis));
        return a;
    }

    // General form/symmetry pair; form*sym must be positive definite.
    static KreinAlgebra with_form(std::vector<Mat> orthonormal_basis, const Mat& form, const Mat& sym)
    {
        KreinAlgebra a;
        a.n_ = form.rows();
        a.form_ = checked(form);
        a.form_inv_ = form.inverse();
        a.sym_ = checked(sym);
        const Mat metric = hermitian_part(form * sym);
        a.metric_sqrt_ = sqrt_psd(metric);
        a.metric_sqrt_inv_ = inv_sqrt_pd(metric);
        a.set_basis(std::move(orthonormal_basis));
        return a;
    }

    static Mat standard_eta(int p, int q)
    {
        Mat eta = Mat::Zero(p + q, p + q);
        for (int i = 0; i < p + q; ++i)
            eta(i, i) = i < p ? 1.0 : -1.0;
        return eta;
    }

    Eigen::Index ref_dim() const { return n_; }
    Eigen::Index dim() const { return Eigen::Index(basis_.size()); }
    const std::vector<Mat>& basis() const { return basis_; }
    const Mat& form() const { return form_; }
    const Mat& symmetry() const { return sym_; }
    // For the eta model: the matrix eta itself.
    const Mat& eta() const { return sym_; }
    bool eta_model() const { return eta_model_; }
    bool is_full() const { return full_; }
    const std::optional<BlockAlgebra>& blocks() const { return blocks_; }

    Mat one() const { return identity(n_); }

    Mat star(const Mat& a) const { return form_inv_ * a.adjoint() * form_; }
    Mat alpha(const Mat& a) const { return sym_ * a * sym_; }

    // The C*-involution a -> alpha(star(a)) of the associated C*-algebra.
    Mat hilbert_adjoint(const Mat& a) const
    {
        if (eta_model_)
            return a.adjoint();
        return metric_sqrt_inv_ * metric_sqrt_inv_ * a.adjoint() * metric_sqrt_ * metric_sqrt_;
    }

    // Conjugation into the frame where the C*-involution is the plain adjoint.
    Mat to_metric_frame(const Mat& a) const
    {
        if (eta_model_)
            return a;
        return metric_sqrt_ * a * metric_sqrt_inv_;
    }

    double norm(const Mat& a) const { return operator_norm(to_metric_frame(a)); }

    // Positive square root of form * symmetry; the identity for the eta model.
    const Mat& metric_sqrt() const { return metric_sqrt_; }

    std::pair<Mat, Mat> split(const Mat& a) const
    {
        const Mat al = alpha(a);
        return {0.5 * (a + al), 0.5 * (a - al)};
    }

    Vec coords(const Mat& a) const
    {
        if (full_)
            return vec(a);
        return basis_matrix_.adjoint() * vec(a);
    }

    Mat element(const Vec& c) const
    {
        if (full_)
            return unvec(c, n_, n_);
        return unvec(basis_matrix_ * c, n_, n_);
    }

    Mat project(const Mat& a) const
    {
        if (full_)
            return a;
        if (blocks_)
            return blocks_->project(a);
        return element(coords(a));
    }

    double membership_defect(const Mat& a) const { return (a - project(a)).norm() / std::max(1.0, a.norm()); }

    Mat random(Rng& rng) const { return project(rng.gaussian(n_, n_)); }

    // Positivity in the associated C*-algebra, with the floating-point slack
    // measured against the spectral radius.
    double positivity_defect(const Mat& a) const
    {
        const Mat f = to_metric_frame(a);
        const double herm = (f - f.adjoint()).norm() / std::max(1e-300, f.norm());
        return std::max(0.0, -normalized_min_eigenvalue(f)) + herm;
    }

    // Sum of basis traces, the coefficients of the faithful trace in coordinates.
    Vec trace_functional() const
    {
        Vec t(dim());
        for (Eigen::Index i = 0; i < dim(); ++i)
            t(i) = basis_[std::size_t(i)].trace();
        return t;
    }

private:
    KreinAlgebra() = default;

    void set_basis(std::vector<Mat> basis)
    {
        basis_ = std::move(basis);
        basis_matrix_.resize(n_ * n_, Eigen::Index(basis_.size()));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].rows() != n_ || basis_[i].cols() != n_)
                throw std::invalid_argument("KreinAlgebra: basis element has the wrong size");
            basis_matrix_.col(Eigen::Index(i)) = vec(basis_[i]);
        }
        const Mat gram = basis_matrix_.adjoint() * basis_matrix_;
        if ((gram - identity(gram.rows())).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("KreinAlgebra: basis is not Frobenius-orthonormal");
    }

    Eigen::Index n_ = 0;
    Mat form_, form_inv_, sym_;
    Mat metric_sqrt_, metric_sqrt_inv_;
    bool eta_model_ = false;
    bool full_ = false;
    std::optional<BlockAlgebra> blocks_;
    std::vector<Mat> basis_;
    Mat basis_matrix_;
};

// Orthonormalize an arbitrary spanning family of matrices.
inline std::vector<Mat> orthonormal_span(const std::vector<Mat>& family, double tol = default_rank_tol)
{
    if (family.empty())
        return {};
    const auto n = family.front().rows();
    Mat cols(n * n, Eigen::Index(family.size()));
    for (std::size_t i = 0; i < family.size(); ++i)
        cols.col(Eigen::Index(i)) = vec(family[i]);
    const Subspace s = Subspace::range_of(cols, tol);
    std::vector<Mat> out;
    for (Eigen::Index j = 0; j < s.dim(); ++j)
        out.push_back(unvec(s.basis().col(j), n, n));
    return out;
}

inline bool same_algebra(const KreinAlgebra& a, const KreinAlgebra& b, double tol = 1e-10)
{
    if (a.ref_dim() != b.ref_dim() || a.dim() != b.dim())
        return false;
    if ((a.form() - b.form()).norm() > tol || (a.symmetry() - b.symmetry()).norm() > tol)
        return false;
    for (const Mat& x : b.basis())
        if (a.membership_defect(x) > tol)
            return false;
    return true;
}

// Constants c <= C with c |a|_1 <= |a|_2 <= C |a|_1 for the norms of two
// structures on the same carrier: the extreme values of |K X K^-1| / |X|
// are bounded by the condition number of K = S_2 S_1^-1.
inline std::pair<double, double> norm_equivalence_constants(const KreinAlgebra& a1, const KreinAlgebra& a2)
{
    if (a1.ref_dim() != a2.ref_dim())
        throw std::invalid_argument("norm_equivalence_constants: reference dimensions differ");
    const RealVec sv = singular_values(a2.metric_sqrt() * a1.metric_sqrt().inverse());
    const double cond = sv(0) / sv(sv.size() - 1);
    return {1.0 / cond, cond};
}

// Unitary change of basis bringing a hermitian involution to
// diag(+1 x p, -1 x q).
struct CanonicalForm {
    Mat unitary;
    int p = 0, q = 0;
};

inline CanonicalForm canonicalize(const Mat& eta)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(eta));
    const RealVec& ev = es.eigenvalues();
    const auto n = ev.size();
    CanonicalForm c;
    c.unitary.resize(n, n);
    // eigenvalues ascend: the negative ones come first
    for (Eigen::Index i = 0; i < n; ++i)
        if (ev(i) < 0)
            ++c.q;
    c.p = int(n) - c.q;
    for (Eigen::Index i = 0; i < n; ++i)
        c.unitary.col(i) = es.eigenvectors().col(i < c.p ? c.q + i : i - c.p);
    return c;
}

struct EvenOdd {
    Mat even, odd;
};

inline EvenOdd even_odd_split(const KreinAlgebra& A, const Mat& a)
{
    auto [e, o] = A.split(a);
    return {std::move(e), std::move(o)};
}

// Randomized verification of the Krein C*-algebra axioms.
inline Report check_krein_cstar_axioms(const KreinAlgebra& A, int samples, std::uint64_t seed,
                                       double tol = default_tol)
{
    if (samples < 1)
        throw std::invalid_argument("check_krein_cstar_axioms: samples must be >= 1");
    constexpr double tight = 1e-10;
    const std::string anchor = "Krein C*-algebra definition";
    Report rep("krein-algebra");
    const auto n = A.ref_dim();
    const Mat I = identity(n);

    rep.add("eta hermitian", anchor, (A.form() - A.form().adjoint()).norm(), tight);
    rep.add("eta involutive", anchor, (A.symmetry() * A.symmetry() - I).norm(), tight);

    // closure of the carrier on a basis
    Worst closure;
    const auto& basis = A.basis();
    for (const Mat& b : basis) {
        closure.update(A.membership_defect(A.star(b)));
        closure.update(A.membership_defect(A.alpha(b)));
    }
    const std::size_t product_cap = 24;
    for (std::size_t i = 0; i < std::min(basis.size(), product_cap); ++i)
        for (std::size_t j = 0; j < std::min(basis.size(), product_cap); ++j)
            closure.update(A.membership_defect(basis[i] * basis[j]));
    rep.add("carrier closed under star, alpha and products", anchor, closure.value(), tight);

    Rng rng(seed);
    Worst star_inv, star_conj, star_anti, alpha_inv, alpha_mult, alpha_star_commute,
        alpha_star_adjoint, cstar, submult, split_sum, split_parity, graded;
    for (int s = 0; s < samples; ++s) {
        const Mat a = A.random(rng);
        const Mat b = A.random(rng);
        const cplx lambda = rng.gauss();
        const double na = std::max(1e-300, a.norm());
        const double nb = std::max(1e-300, b.norm());

        star_inv.update((A.star(A.star(a)) - a).norm() / na);
        star_conj.update((A.star(lambda * a + b) - (std::conj(lambda) * A.star(a) + A.star(b))).norm() /
                         (std::abs(lambda) * na + nb));
        star_anti.update((A.star(a * b) - A.star(b) * A.star(a)).norm() / (na * nb));
        alpha_inv.update((A.alpha(A.alpha(a)) - a).norm() / na);
        alpha_mult.update((A.alpha(a * b) - A.alpha(a) * A.alpha(b)).norm() / (na * nb));
        alpha_star_commute.update((A.alpha(A.star(a)) - A.star(A.alpha(a))).norm() / na);
        alpha_star_adjoint.update((A.alpha(A.star(a)) - A.hilbert_adjoint(a)).norm() / na);

        const double norm_a = A.norm(a);
        const double lhs = A.norm(A.alpha(A.star(a)) * a);
        cstar.update(std::abs(lhs - norm_a * norm_a) / std::max(1e-300, norm_a * norm_a));
        const double nab = A.norm(a * b);
        const double bound = norm_a * A.norm(b);
        submult.update(std::max(0.0, nab - bound) / std::max(1e-300, bound));

        const auto [ev, od] = A.split(a);
        split_sum.update((ev + od - a).norm() / na);
        split_parity.update(std::max((A.alpha(ev) - ev).norm(), (A.alpha(od) + od).norm()) / na);
        const auto [ev2, od2] = A.split(b);
        const auto scale = na * nb;
        graded.update(A.split(ev * ev2).second.norm() / scale);
        graded.update(A.split(od * od2).second.norm() / scale);
        graded.update(A.split(ev * od2).first.norm() / scale);
        graded.update(A.split(od * ev2).first.norm() / scale);
    }
    rep.add("star involutive", anchor, star_inv.value(), tight);
    rep.add("star conjugate-linear", anchor, star_conj.value(), tight);
    rep.add("star antimultiplicative", anchor, star_anti.value(), tight);
    rep.add("alpha involutive", anchor, alpha_inv.value(), tight);
    rep.add("alpha multiplicative", anchor, alpha_mult.value(), tight);
    rep.add("alpha commutes with star", anchor, alpha_star_commute.value(), tight);
    rep.add("alpha of star is the hilbert adjoint", "norm remark", alpha_star_adjoint.value(), tight);
    rep.add("C*-identity", anchor, cstar.value(), tol);
    rep.add("norm submultiplicative", anchor, submult.value(), tol);
    rep.add("even/odd reconstruction", "even and odd parts", split_sum.value(), tight);
    rep.add("even/odd parity under alpha", "even and odd parts", split_parity.value(), tight);
    rep.add("even/odd grading of products", "even and odd parts", graded.value(), tight);
    return rep;
}

} // namespace krein
