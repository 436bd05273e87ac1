#pragma once
// Krein modules and bimodules over Krein C*-algebras on a concrete carrier
// C^d: actions and inner products are stored as matrices against the
// orthonormal bases of the two algebras.

#include "algebra.hpp"
#include "module.hpp"

#include <functional>

namespace krein {

// Carrier C^d with
//   left action   a.x = L(a) x            L linear and multiplicative
//   right action  x.b = R(b) x            R linear and anti-multiplicative
//   right product <x, y>_B  = sum_j (x^H F_j y) b_j
//   left product  _A<x, y>  = sum_i (y^H E_i x) a_i
//   symmetry J
// where a_i, b_j are the orthonormal bases of the two algebras.  A right
// module has the scalars on the left, a left module the scalars on the right.
struct Bimodule {
    KreinAlgebra left = KreinAlgebra::scalars();
    KreinAlgebra right = KreinAlgebra::scalars();
    Eigen::Index dim = 0;
    std::vector<Mat> left_action;
    std::vector<Mat> right_action;
    std::vector<Mat> right_form;
    std::vector<Mat> left_form;
    Mat J;

    bool has_right_form() const { return !right_form.empty(); }
    bool has_left_form() const { return !left_form.empty(); }

    Mat L(const Mat& a) const { return combine(left_action, left.coords(a)); }
    Mat R(const Mat& b) const { return combine(right_action, right.coords(b)); }

    Mat right_inner(const Vec& x, const Vec& y) const
    {
        Vec c(right.dim());
        for (Eigen::Index j = 0; j < right.dim(); ++j)
            c(j) = x.dot(right_form[std::size_t(j)] * y);
        return right.element(c);
    }

    Mat left_inner(const Vec& x, const Vec& y) const
    {
        Vec c(left.dim());
        for (Eigen::Index i = 0; i < left.dim(); ++i)
            c(i) = y.dot(left_form[std::size_t(i)] * x);
        return left.element(c);
    }

    Vec random_vector(Rng& rng) const { return rng.gaussian_vector(dim); }

    static Mat combine(const std::vector<Mat>& mats, const Vec& c)
    {
        if (mats.empty())
            throw std::logic_error("Bimodule: action or form not available");
        Mat out = Mat::Zero(mats.front().rows(), mats.front().cols());
        for (std::size_t i = 0; i < mats.size(); ++i)
            if (c(Eigen::Index(i)) != cplx(0.0))
                out += c(Eigen::Index(i)) * mats[i];
        return out;
    }
};

using KreinModuleOverKrein = Bimodule;
using KreinBimodule = Bimodule;

inline Vec unit_vector(Eigen::Index d, Eigen::Index i)
{
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    return e;
}

inline Mat operator_matrix(Eigen::Index d, const std::function<Vec(const Vec&)>& f)
{
    Mat m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        m.col(i) = f(unit_vector(d, i));
    return m;
}

// F_j(u, v) = coordinate j of f(e_u, e_v).
inline std::vector<Mat> tabulate_right_form(Eigen::Index d, const KreinAlgebra& B,
                                            const std::function<Mat(Eigen::Index, Eigen::Index)>& f)
{
    std::vector<Mat> forms(std::size_t(B.dim()), Mat::Zero(d, d));
    for (Eigen::Index u = 0; u < d; ++u)
        for (Eigen::Index v = 0; v < d; ++v) {
            const Vec c = B.coords(f(u, v));
            for (Eigen::Index j = 0; j < B.dim(); ++j)
                forms[std::size_t(j)](u, v) = c(j);
        }
    return forms;
}

// E_i(v, u) = coordinate i of f(e_u, e_v).
inline std::vector<Mat> tabulate_left_form(Eigen::Index d, const KreinAlgebra& A,
                                           const std::function<Mat(Eigen::Index, Eigen::Index)>& f)
{
    std::vector<Mat> forms(std::size_t(A.dim()), Mat::Zero(d, d));
    for (Eigen::Index u = 0; u < d; ++u)
        for (Eigen::Index v = 0; v < d; ++v) {
            const Vec c = A.coords(f(u, v));
            for (Eigen::Index i = 0; i < A.dim(); ++i)
                forms[std::size_t(i)](v, u) = c(i);
        }
    return forms;
}

// A over itself: <x, y> = x^* y, _A<x, y> = x y^*, J = alpha.
inline Bimodule self_module(const KreinAlgebra& A)
{
    Bimodule M;
    M.left = A;
    M.right = A;
    M.dim = A.dim();
    const auto& basis = A.basis();
    for (const Mat& a : basis) {
        M.left_action.push_back(operator_matrix(M.dim, [&](const Vec& c) { return A.coords(a * A.element(c)); }));
        M.right_action.push_back(operator_matrix(M.dim, [&](const Vec& c) { return A.coords(A.element(c) * a); }));
    }
    const auto& b = basis;
    M.right_form = tabulate_right_form(M.dim, A, [&](Eigen::Index u, Eigen::Index v) {
        return Mat(A.star(b[std::size_t(u)]) * b[std::size_t(v)]);
    });
    M.left_form = tabulate_left_form(M.dim, A, [&](Eigen::Index u, Eigen::Index v) {
        return Mat(b[std::size_t(u)] * A.star(b[std::size_t(v)]));
    });
    M.J = operator_matrix(M.dim, [&](const Vec& c) { return A.coords(A.alpha(A.element(c))); });
    return M;
}

// The identity correspondence of A is its self-module.
inline Bimodule identity_correspondence(const KreinAlgebra& A) { return self_module(A); }

// Linear maps K1 -> K2 (column-major n2 x n1 matrices) with
// <T, S> = T^* S in B(K1), _{B(K2)}<T, S> = T S^*, J(T) = J2 T J1.
inline Bimodule operator_bimodule(const KreinModule& K1, const FundamentalSymmetry& J1, const KreinModule& K2,
                                  const FundamentalSymmetry& J2)
{
    if (K1.base().ref_dim() != 1 || K2.base().ref_dim() != 1)
        throw std::invalid_argument("operator_bimodule: Krein spaces over the complex numbers expected");
    const auto n1 = K1.ref_dim(), n2 = K2.ref_dim();
    Bimodule M;
    M.right = adjointable_algebra(K1, J1);
    M.left = adjointable_algebra(K2, J2);
    M.dim = n1 * n2;
    for (const Mat& b : M.right.basis())
        M.right_action.push_back(kron(b.transpose(), identity(n2)));
    for (const Mat& a : M.left.basis())
        M.left_action.push_back(kron(identity(n1), a));
    const Mat g1inv = K1.gram().inverse();
    const Mat& g2 = K2.gram();
    auto as_map = [&](Eigen::Index u) { return unvec(unit_vector(M.dim, u), n2, n1); };
    M.right_form = tabulate_right_form(M.dim, M.right, [&](Eigen::Index u, Eigen::Index v) {
        return Mat(g1inv * as_map(u).adjoint() * g2 * as_map(v));
    });
    M.left_form = tabulate_left_form(M.dim, M.left, [&](Eigen::Index u, Eigen::Index v) {
        return Mat(as_map(u) * g1inv * as_map(v).adjoint() * g2);
    });
    M.J = kron(J1.op.transpose(), J2.op);
    return M;
}

// A Krein module over a C*-algebra with a chosen symmetry, as a right module
// with scalars on the left.  Coordinates: block i of the vector is the basis
// element b_j of the base, index i * dim(A) + j.
inline Bimodule as_right_module(const KreinModule& K, const FundamentalSymmetry& Jk)
{
    validate_symmetry(K, Jk);
    if (K.side() != Side::right)
        throw std::invalid_argument("as_right_module: module is a left module");
    const BlockAlgebra& base = K.base();
    const KreinAlgebra B = KreinAlgebra::c_star(base);
    const auto basis = base.basis();
    const auto k = base.ref_dim();
    const auto dA = Eigen::Index(basis.size());
    Bimodule M;
    M.right = B;
    M.dim = K.rank() * dA;
    auto to_storage = [&](const Vec& c) {
        Mat x = Mat::Zero(K.ref_dim(), k);
        for (int i = 0; i < K.rank(); ++i)
            for (Eigen::Index j = 0; j < dA; ++j)
                x.block(i * k, 0, k, k) += c(i * dA + j) * basis[std::size_t(j)];
        return x;
    };
    auto from_storage = [&](const Mat& x) {
        Vec c(M.dim);
        for (int i = 0; i < K.rank(); ++i) {
            const Mat blk = x.block(i * k, 0, k, k);
            for (Eigen::Index j = 0; j < dA; ++j)
                c(i * dA + j) = (basis[std::size_t(j)].adjoint() * blk).trace();
        }
        return c;
    };
    for (const Mat& b : B.basis())
        M.right_action.push_back(
            operator_matrix(M.dim, [&](const Vec& c) { return from_storage(K.act(to_storage(c), b)); }));
    M.left_action.push_back(identity(M.dim));
    M.right_form = tabulate_right_form(M.dim, B, [&](Eigen::Index u, Eigen::Index v) {
        return K.inner(to_storage(unit_vector(M.dim, u)), to_storage(unit_vector(M.dim, v)));
    });
    M.J = operator_matrix(M.dim, [&](const Vec& c) { return from_storage(Jk.op * to_storage(c)); });
    return M;
}

// Adjoint with respect to the pairings x^H F_j y: the S with T^H F_j = F_j S
// for every j, found by least squares; adjointable iff the relative residual
// is below tol.
struct AdjointSolve {
    Mat adjoint;
    double residual = 0.0;
    bool adjointable = false;
};

inline AdjointSolve solve_adjoint(const std::vector<Mat>& forms, const Mat& T, double tol = default_rank_tol)
{
    const auto d = T.rows();
    const auto m = Eigen::Index(forms.size());
    Mat lhs(m * d, d), rhs(m * d, d);
    for (Eigen::Index j = 0; j < m; ++j) {
        lhs.middleRows(j * d, d) = forms[std::size_t(j)];
        rhs.middleRows(j * d, d) = T.adjoint() * forms[std::size_t(j)];
    }
    AdjointSolve out;
    out.adjoint = lhs.completeOrthogonalDecomposition().solve(rhs);
    const double scale = rhs.norm();
    out.residual = scale == 0.0 ? 0.0 : (lhs * out.adjoint - rhs).norm() / scale;
    out.adjointable = out.residual <= tol;
    return out;
}

inline std::vector<Mat> twisted_forms(const std::vector<Mat>& forms, const Mat& J)
{
    std::vector<Mat> out;
    out.reserve(forms.size());
    for (const Mat& f : forms)
        out.push_back(f * J);
    return out;
}

// Krein adjoint of an operator for the right inner product.
inline AdjointSolve krein_adjoint_over_krein(const Bimodule& M, const Mat& T, double tol = default_rank_tol)
{
    return solve_adjoint(M.right_form, T, tol);
}

// Adjoint for the auxiliary product <x, J y>.
inline AdjointSolve auxiliary_adjoint(const Bimodule& M, const Mat& T, double tol = default_rank_tol)
{
    return solve_adjoint(twisted_forms(M.right_form, M.J), T, tol);
}

inline Mat alpha_J(const Bimodule& M, const Mat& T) { return M.J * T * M.J; }

inline Mat auxiliary_product(const Bimodule& M, const Vec& x, const Vec& y) { return M.right_inner(x, M.J * y); }

// Scalar positive form tr <x, J y>; positive definite iff the auxiliary
// product is non-degenerate.
inline Mat auxiliary_scalar_gram(const std::vector<Mat>& forms, const KreinAlgebra& base, const Mat& J)
{
    const Vec tr = base.trace_functional();
    Mat p = Mat::Zero(J.rows(), J.cols());
    for (std::size_t j = 0; j < forms.size(); ++j)
        p += tr(Eigen::Index(j)) * forms[j] * J;
    return hermitian_part(p);
}

inline double auxiliary_operator_norm(const Bimodule& M, const Mat& T)
{
    const Mat p = auxiliary_scalar_gram(M.right_form, M.right, M.J);
    const Mat s = sqrt_psd(p);
    return operator_norm(s * T * s.inverse());
}

// Theta_{x,y}(z) = x.<y, z>.
inline Mat rank_one(const Bimodule& M, const Vec& x, const Vec& y)
{
    return operator_matrix(M.dim, [&](const Vec& z) { return Vec(M.R(M.right_inner(y, z)) * x); });
}

// Operators commuting with the right action (module maps of a right module).
inline Mat module_endomorphism_basis(const Bimodule& M)
{
    const auto d = M.dim;
    const Mat I = identity(d);
    Mat sys(Eigen::Index(M.right_action.size()) * d * d, d * d);
    for (std::size_t j = 0; j < M.right_action.size(); ++j) {
        const Mat& r = M.right_action[j];
        sys.middleRows(Eigen::Index(j) * d * d, d * d) = kron(I, r) - kron(r.transpose(), I);
    }
    return null_space(sys);
}

inline Mat random_endomorphism(const Bimodule& M, const Mat& endo_basis, Rng& rng)
{
    const Vec c = rng.gaussian_vector(endo_basis.cols());
    return unvec(endo_basis * c, M.dim, M.dim);
}

struct Fullness {
    Eigen::Index left_rank = 0, right_rank = 0;
};

inline Fullness fullness(const Bimodule& M)
{
    Fullness f;
    const auto d = M.dim;
    if (M.has_left_form()) {
        Mat span(M.left.dim(), d * d);
        for (Eigen::Index u = 0; u < d; ++u)
            for (Eigen::Index v = 0; v < d; ++v)
                for (Eigen::Index i = 0; i < M.left.dim(); ++i)
                    span(i, u * d + v) = M.left_form[std::size_t(i)](v, u);
        f.left_rank = numerical_rank(span);
    }
    if (M.has_right_form()) {
        Mat span(M.right.dim(), d * d);
        for (Eigen::Index u = 0; u < d; ++u)
            for (Eigen::Index v = 0; v < d; ++v)
                for (Eigen::Index j = 0; j < M.right.dim(); ++j)
                    span(j, u * d + v) = M.right_form[std::size_t(j)](u, v);
        f.right_rank = numerical_rank(span);
    }
    return f;
}

namespace detail {

inline double rel(const Mat& diff, double scale) { return diff.norm() / std::max(1e-300, scale); }

// Properties of one inner product: hermitian, linear for its algebra,
// alpha-compatible with J, auxiliary product positive and non-degenerate,
// even/odd decomposition of the product.
template <class Inner, class Act>
void check_side(Report& rep, const std::string& prefix, const KreinAlgebra& A, const std::vector<Mat>& pairings,
                Inner inner, Act act, const Bimodule& M, int samples, Rng& rng, double tol)
{
    constexpr double tight = 1e-10;
    const std::string anchor = "Krein module over a Krein C*-algebra";
    Worst herm, linear, twist, alpha_compat, aux_pos, aux_twin, even_part, odd_part;
    for (int s = 0; s < samples; ++s) {
        const Vec x = M.random_vector(rng), y = M.random_vector(rng);
        const Mat b = A.random(rng);
        const double nxy = x.norm() * y.norm();
        const Mat xy = inner(x, y);
        herm.update(rel(A.star(xy) - inner(y, x), nxy));
        linear.update(rel(inner(x, act(b, y)) - (prefix == "left " ? Mat(b * xy) : Mat(xy * b)), nxy * b.norm()));
        twist.update(rel(M.J * act(b, x) - act(A.alpha(b), M.J * x), x.norm() * b.norm()));
        alpha_compat.update(rel(A.alpha(xy) - inner(M.J * x, M.J * y), nxy));
        aux_pos.update(A.positivity_defect(inner(x, M.J * x)));
        aux_twin.update(rel(A.alpha(inner(M.J * x, y)) - inner(x, M.J * y), nxy));
        const Mat ev = 0.5 * xy + 0.5 * inner(M.J * x, M.J * y);
        const Mat od = 0.5 * xy - 0.5 * inner(M.J * x, M.J * y);
        even_part.update(rel(A.split(ev).second, nxy));
        odd_part.update(rel(A.split(od).first, nxy));
    }
    const Mat gram = auxiliary_scalar_gram(pairings, A, M.J);
    const double min_ev = normalized_min_eigenvalue(gram);
    rep.add(prefix + "inner product hermitian", anchor, herm.value(), tight);
    rep.add(prefix + "inner product linear over the base", anchor, linear.value(), tight);
    rep.add(prefix + "twisting J(x.b) = J(x).alpha(b)", anchor, twist.value(), tight);
    rep.add(prefix + "alpha(<x,y>) = <Jx,Jy>", anchor, alpha_compat.value(), tight);
    rep.add(prefix + "auxiliary product positive", "auxiliary inner products", aux_pos.value(), tol);
    rep.add(prefix + "auxiliary product non-degenerate", "auxiliary inner products",
            min_ev > 1e-9 ? 0.0 : 1e-9 - min_ev + 1e-9, 1e-9,
            "normalized minimum eigenvalue " + std::to_string(min_ev));
    rep.add(prefix + "auxiliary twin relation alpha(<Jx,y>) = <x,Jy>", "auxiliary inner products", aux_twin.value(),
            tight);
    rep.add(prefix + "even part of the product lies in A+", "auxiliary inner products", even_part.value(), tight);
    rep.add(prefix + "odd part of the product lies in A-", "auxiliary inner products", odd_part.value(), tight);
}

} // namespace detail

// Invariants of a right module over a Krein C*-algebra.
inline Report check_right_module(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    Report rep("right-module");
    Rng rng(seed);
    const Mat I = identity(M.dim);
    rep.add("J involutive", "Krein module over a Krein C*-algebra", (M.J * M.J - I).norm(), tight);
    Worst unital, anti;
    unital.update((M.R(M.right.one()) - I).norm());
    for (int s = 0; s < samples; ++s) {
        const Mat b1 = M.right.random(rng), b2 = M.right.random(rng);
        anti.update(detail::rel(M.R(b1 * b2) - M.R(b2) * M.R(b1), b1.norm() * b2.norm()));
    }
    rep.add("right action unital", "module axioms", unital.value(), tight);
    rep.add("right action anti-multiplicative", "module axioms", anti.value(), tight);
    detail::check_side(
        rep, "right ", M.right, M.right_form, [&](const Vec& x, const Vec& y) { return M.right_inner(x, y); },
        [&](const Mat& b, const Vec& x) { return Vec(M.R(b) * x); }, M, samples, rng, tol);
    return rep;
}

inline Report check_left_module(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    Report rep("left-module");
    Rng rng(seed);
    const Mat I = identity(M.dim);
    rep.add("J involutive", "Krein module over a Krein C*-algebra", (M.J * M.J - I).norm(), tight);
    Worst unital, mult;
    unital.update((M.L(M.left.one()) - I).norm());
    for (int s = 0; s < samples; ++s) {
        const Mat a1 = M.left.random(rng), a2 = M.left.random(rng);
        mult.update(detail::rel(M.L(a1 * a2) - M.L(a1) * M.L(a2), a1.norm() * a2.norm()));
    }
    rep.add("left action unital", "module axioms", unital.value(), tight);
    rep.add("left action multiplicative", "module axioms", mult.value(), tight);
    // The left product is conjugate-linear in its second slot, so the
    // generic side check runs on the swapped product (x, y) -> _A<y, x>.
    detail::check_side(
        rep, "left ", M.left, M.left_form, [&](const Vec& x, const Vec& y) { return M.left_inner(y, x); },
        [&](const Mat& a, const Vec& x) { return Vec(M.L(a) * x); }, M, samples, rng, tol);
    return rep;
}

// Compatibility of the two actions, and for correspondences the
// adjointability of the left action.
inline Report check_correspondence(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    Report rep("correspondence");
    rep.append(check_right_module(M, samples, seed, tol));
    Rng rng(derive_seed(seed, "correspondence"));
    const std::string anchor = "Krein C*-correspondence";
    Worst commute, twist_both, beta_rel, left_unital, left_mult;
    left_unital.update((M.L(M.left.one()) - identity(M.dim)).norm());
    for (int s = 0; s < samples; ++s) {
        const Vec x = M.random_vector(rng);
        const Mat a = M.left.random(rng), a2 = M.left.random(rng), b = M.right.random(rng);
        const double scale = x.norm() * a.norm() * b.norm();
        commute.update(detail::rel(M.R(b) * (M.L(a) * x) - M.L(a) * (M.R(b) * x), scale));
        twist_both.update(detail::rel(M.J * (M.L(a) * (M.R(b) * x)) -
                                          M.L(M.left.alpha(a)) * (M.R(M.right.alpha(b)) * (M.J * x)),
                                      scale));
        beta_rel.update(detail::rel(M.R(M.right.alpha(b)) * x - M.J * (M.R(b) * (M.J * x)), x.norm() * b.norm()));
        left_mult.update(detail::rel(M.L(a * a2) - M.L(a) * M.L(a2), a.norm() * a2.norm()));
    }
    rep.add("left action unital", "module axioms", left_unital.value(), tight);
    rep.add("left action multiplicative", "module axioms", left_mult.value(), tight);
    rep.add("actions commute (a.x).b = a.(x.b)", anchor, commute.value(), tight);
    rep.add("J(a.x.b) = alpha(a).J(x).beta(b)", anchor, twist_both.value(), tight);
    rep.add("x.beta(b) = J(J(x).b)", anchor, beta_rel.value(), tight);

    Worst adjointable, adjoint_is_star;
    for (const Mat& a : M.left.basis()) {
        const AdjointSolve sol = krein_adjoint_over_krein(M, M.L(a));
        adjointable.update(sol.residual);
        adjoint_is_star.update((sol.adjoint - M.L(M.left.star(a))).norm());
    }
    rep.add("left action adjointable", anchor, adjointable.value(), default_rank_tol);
    rep.add("adjoint of left action is action of star", anchor, adjoint_is_star.value(), tol);
    return rep;
}

inline Report check_imprimitivity(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    Report rep("imprimitivity");
    Rng rng(seed);
    Worst three, two, norms;
    for (int s = 0; s < samples; ++s) {
        const Vec x = M.random_vector(rng), y = M.random_vector(rng), z = M.random_vector(rng);
        const double scale = x.norm() * y.norm() * z.norm();
        three.update((M.L(M.left_inner(x, y)) * z - M.R(M.right_inner(y, z)) * x).norm() / scale);
        two.update((M.L(M.left_inner(x, y)) * x - M.R(M.right_inner(y, x)) * x).norm() /
                   (x.norm() * x.norm() * y.norm()));
        const double nl = M.left.norm(M.left_inner(x, M.J * x));
        const double nr = M.right.norm(M.right_inner(x, M.J * x));
        norms.update(std::abs(nl - nr) / std::max(1e-300, x.squaredNorm()));
    }
    rep.add("imprimitivity _A<x,y>z = x<y,z>_B", "Morita remark", three.value(), tol);
    rep.add("imprimitivity two-variable form _A<x,y>x = x<y,x>_B", "bimodule definition", two.value(), tol,
            "the definition prints the repeated-variable form, the Morita remark the three-variable one");
    rep.add("left and right Hilbert norms coincide", "bimodule definition", norms.value(), tol);
    return rep;
}

inline Report check_bimodule(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    Report rep("bimodule");
    rep.append(check_correspondence(M, samples, seed, tol));
    Report left = check_left_module(M, samples, derive_seed(seed, "left"), tol);
    for (auto& r : left.records())
        if (r.name != "J involutive" && r.name != "left action unital" && r.name != "left action multiplicative")
            rep.records().push_back(r);
    rep.append(check_imprimitivity(M, samples, derive_seed(seed, "imprimitivity"), tol));
    return rep;
}

// Adjoint dictionary T^{dagger alpha} = J T* J and its inverse, the
// C*-identity of alpha_J, and involutivity, on random module maps.
inline Report check_adjoint_dictionary(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    Report rep("adjoint-dictionary");
    const Mat endo = module_endomorphism_basis(M);
    Rng rng(seed);
    Worst solvable, dict1, dict2, pairing, cstar, alpha_inv, alpha_star, alpha_adjointable;
    for (int s = 0; s < samples; ++s) {
        const Mat T = random_endomorphism(M, endo, rng);
        const double nT = T.norm();
        const AdjointSolve direct = krein_adjoint_over_krein(M, T);
        const AdjointSolve aux = auxiliary_adjoint(M, T);
        solvable.update(std::max(direct.residual, aux.residual));
        dict1.update((aux.adjoint - M.J * direct.adjoint * M.J).norm() / nT);
        dict2.update((direct.adjoint - M.J * aux.adjoint * M.J).norm() / nT);
        const Vec x = M.random_vector(rng), y = M.random_vector(rng);
        pairing.update((M.right_inner(T * x, y) - M.right_inner(x, direct.adjoint * y)).norm() /
                       (nT * x.norm() * y.norm()));
        const Mat aT = alpha_J(M, T);
        const double norm_t = auxiliary_operator_norm(M, T);
        const double lhs = auxiliary_operator_norm(M, alpha_J(M, direct.adjoint) * T);
        cstar.update(std::abs(lhs - norm_t * norm_t) / std::max(1e-300, norm_t * norm_t));
        alpha_inv.update((alpha_J(M, aT) - T).norm() / nT);
        const AdjointSolve aT_adj = krein_adjoint_over_krein(M, aT);
        alpha_adjointable.update(aT_adj.residual);
        alpha_star.update((alpha_J(M, direct.adjoint) - aT_adj.adjoint).norm() / nT);
    }
    const std::string anchor = "adjointability proposition";
    rep.add("adjoint solvable", anchor, solvable.value(), default_rank_tol);
    rep.add("dictionary T^{dagger alpha} = J T* J", anchor, dict1.value(), tol);
    rep.add("dictionary T* = J T^{dagger alpha} J", anchor, dict2.value(), tol);
    rep.add("adjoint pairing <Tx,y> = <x,T*y>", anchor, pairing.value(), tol);
    rep.add("alpha_J preserves adjointability", "alpha_J proposition", alpha_adjointable.value(), default_rank_tol);
    rep.add("alpha_J(T*) = alpha_J(T)*", "alpha_J proposition", alpha_star.value(), tol);
    rep.add("alpha_J involutive", "alpha_J proposition", alpha_inv.value(), tol);
    rep.add("alpha_J C*-identity", "alpha_J theorem", cstar.value(), tol);
    return rep;
}

} // namespace krein
