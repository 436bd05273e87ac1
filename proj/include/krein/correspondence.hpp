#pragma once
// Krein *-homomorphisms, correspondences and their internal tensor product,
// with the unit and associativity isomorphisms, contragredients, Morita
// certification and the spinor factorization of the Grassmann algebra.

#include "bimodule.hpp"
#include "clifford.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace krein {

// A computation would exceed its configured resource budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The inner product induced on a tensor product is degenerate.
class DegenerateProduct : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using AlgebraMap = std::function<Mat(const Mat&)>;

// phi : A -> B unital, multiplicative, star-preserving and phi alpha = beta phi.
inline Report check_krein_star_hom(const AlgebraMap& phi, const KreinAlgebra& A, const KreinAlgebra& B, int samples,
                                   std::uint64_t seed, double tol = default_tol)
{
    const std::string anchor = "Krein *-homomorphism";
    Report rep("krein-star-hom");
    Rng rng(seed);
    Worst unital, mult, star, intertwine, lands;
    unital.update(relative_gap(phi(A.one()), B.one()));
    for (int s = 0; s < samples; ++s) {
        const Mat a = A.random(rng), b = A.random(rng);
        const Mat pa = phi(a), pb = phi(b);
        const double scale = std::max(1e-300, pa.norm() * pb.norm());
        lands.update(B.membership_defect(pa));
        mult.update((phi(a * b) - pa * pb).norm() / scale);
        star.update((phi(A.star(a)) - B.star(pa)).norm() / std::max(1e-300, pa.norm()));
        intertwine.update((phi(A.alpha(a)) - B.alpha(pa)).norm() / std::max(1e-300, pa.norm()));
    }
    rep.add("homomorphism lands in the target", anchor, lands.value(), tol);
    rep.add("homomorphism unital", anchor, unital.value(), tol);
    rep.add("homomorphism multiplicative", anchor, mult.value(), tol);
    rep.add("homomorphism preserves star", anchor, star.value(), tol);
    rep.add("homomorphism intertwines alpha and beta", anchor, intertwine.value(), tol);
    return rep;
}

struct TensorOptions {
    // Entries of the dense relation matrix, dim(B) * (dim M * dim N)^2.
    std::size_t max_relation_entries = std::size_t(1) << 24;
    bool require_nondegenerate = true;
};

struct TensorProduct {
    Bimodule module;         // the balanced tensor product, in quotient coordinates
    Quotient quotient;       // of C^{dim M} (x) C^{dim N}
    Subspace relations;      // span of x.b (x) y - x (x) b.y
    std::vector<Mat> ambient_forms;
    Mat ambient_J;
    Eigen::Index left_dim = 0, right_dim = 0;
    double descent_defect = 0.0; // relations not preserved or not killed
};

// M (x)_B N for a correspondence M from A to B and N from B to C.
inline TensorProduct internal_tensor(const Bimodule& M, const Bimodule& N, const TensorOptions& opt = {})
{
    if (!same_algebra(M.right, N.left))
        throw std::invalid_argument("internal_tensor: right algebra of the first factor differs from the left "
                                    "algebra of the second");
    if (!M.has_right_form() || !N.has_right_form())
        throw std::invalid_argument("internal_tensor: both factors need a right inner product");
    const auto dM = M.dim, dN = N.dim, amb = dM * dN;
    const auto& B = M.right;
    const double entries = double(B.dim()) * double(amb) * double(amb);
    if (entries > double(opt.max_relation_entries))
        throw BudgetExceeded("internal_tensor: " + std::to_string(std::size_t(entries)) +
                             " relation entries exceed the budget of " + std::to_string(opt.max_relation_entries));

    const Mat IM = identity(dM), IN = identity(dN);
    Mat rel(amb, amb * B.dim());
    for (Eigen::Index j = 0; j < B.dim(); ++j) {
        const Mat& b = B.basis()[std::size_t(j)];
        rel.middleCols(j * amb, amb) = kron(M.R(b), IN) - kron(IM, N.L(b));
    }
    TensorProduct T;
    T.left_dim = dM;
    T.right_dim = dN;
    T.relations = rel.norm() > 0 ? Subspace::range_of(rel) : Subspace(amb, Mat(amb, 0));
    T.quotient = quotient_space(amb, T.relations.basis());
    const Mat& S = T.quotient.section;
    const Mat& q = T.quotient.projector;

    // <x1 (x) y1, x2 (x) y2> = <y1, <x1, x2>_B . y2>_C
    const KreinAlgebra& C = N.right;
    T.ambient_forms.assign(std::size_t(C.dim()), Mat::Zero(amb, amb));
    for (Eigen::Index l = 0; l < C.dim(); ++l)
        for (Eigen::Index j = 0; j < B.dim(); ++j)
            T.ambient_forms[std::size_t(l)] +=
                kron(M.right_form[std::size_t(j)], N.right_form[std::size_t(l)] * N.L(B.basis()[std::size_t(j)]));
    T.ambient_J = kron(M.J, N.J);

    Worst descent;
    const Mat& Rb = T.relations.basis();
    auto preserved = [&](const Mat& op) {
        if (Rb.cols())
            descent.update((S * (q * (op * Rb))).norm() / std::max(1.0, op.norm()));
    };
    Bimodule& out = T.module;
    out.left = M.left;
    out.right = C;
    out.dim = T.quotient.dim;
    for (const Mat& a : M.left.basis()) {
        const Mat op = kron(M.L(a), IN);
        preserved(op);
        out.left_action.push_back(q * op * S);
    }
    for (const Mat& c : C.basis()) {
        const Mat op = kron(IM, N.R(c));
        preserved(op);
        out.right_action.push_back(q * op * S);
    }
    preserved(T.ambient_J);
    out.J = q * T.ambient_J * S;
    for (const Mat& h : T.ambient_forms) {
        if (Rb.cols())
            descent.update((h * Rb).norm() / std::max(1.0, h.norm()));
        out.right_form.push_back(S.adjoint() * h * S);
    }
    // _A<x1 (x) y1, x2 (x) y2> = _A<x1 . _B<y1, y2>, x2>
    if (M.has_left_form() && N.has_left_form())
        for (Eigen::Index i = 0; i < M.left.dim(); ++i) {
            Mat e = Mat::Zero(amb, amb);
            for (Eigen::Index j = 0; j < B.dim(); ++j)
                e += kron(M.left_form[std::size_t(i)] * M.R(B.basis()[std::size_t(j)]), N.left_form[std::size_t(j)]);
            out.left_form.push_back(S.adjoint() * e * S);
        }
    T.descent_defect = descent.value();

    if (opt.require_nondegenerate && out.dim > 0) {
        const double min_ev = normalized_min_eigenvalue(auxiliary_scalar_gram(out.right_form, C, out.J));
        if (!(min_ev > 1e-9))
            throw DegenerateProduct("internal_tensor: descended inner product is degenerate (normalized minimum "
                                    "eigenvalue " + std::to_string(min_ev) + ")");
    }
    return T;
}

// Conjugate bimodule: b.xbar.a = conj(a* x b*), <xbar, ybar> = _A<x, y>,
// _B<xbar, ybar> = <x, y>_B.  Carrier vectors are the conjugated coordinates.
inline Bimodule contragredient(const Bimodule& M)
{
    Bimodule C;
    C.left = M.right;
    C.right = M.left;
    C.dim = M.dim;
    for (const Mat& b : M.right.basis())
        C.left_action.push_back(M.R(M.right.star(b)).conjugate());
    for (const Mat& a : M.left.basis())
        C.right_action.push_back(M.L(M.left.star(a)).conjugate());
    for (const Mat& e : M.left_form)
        C.right_form.push_back(e.transpose());
    for (const Mat& f : M.right_form)
        C.left_form.push_back(f.transpose());
    C.J = M.J.conjugate();
    return C;
}

// A linear map between two correspondences over the same algebra pair.
struct CorrespondenceMorphism {
    Bimodule source, target;
    Mat map;
};

// Bimodule map, J-equivariant, isometric for the available products, and
// bijective.  Checked exactly on the algebra bases.
inline Report check_morphism(const CorrespondenceMorphism& f, const std::string& anchor, double tol = default_tol)
{
    Report rep("morphism");
    const Mat& phi = f.map;
    const double scale = std::max(1.0, operator_norm(phi));
    const bool square = phi.rows() == phi.cols() && phi.rows() == f.target.dim && phi.cols() == f.source.dim;
    rep.add_count("isomorphism bijective", anchor, square ? double(phi.rows() - numerical_rank(phi)) : 1.0,
            "dimensions " + std::to_string(f.source.dim) + " -> " + std::to_string(f.target.dim));
    if (!square)
        return rep;
    Worst left, right, sym, right_form, left_form;
    for (const Mat& a : f.source.left.basis())
        left.update((phi * f.source.L(a) - f.target.L(a) * phi).norm() / scale);
    for (const Mat& b : f.source.right.basis())
        right.update((phi * f.source.R(b) - f.target.R(b) * phi).norm() / scale);
    sym.update((phi * f.source.J - f.target.J * phi).norm() / scale);
    // Products compared through their algebra values on basis pairs.
    for (Eigen::Index u = 0; u < f.source.dim; ++u)
        for (Eigen::Index v = 0; v < f.source.dim; ++v) {
            const Vec eu = unit_vector(f.source.dim, u), ev = unit_vector(f.source.dim, v);
            right_form.update((f.source.right_inner(eu, ev) - f.target.right_inner(phi * eu, phi * ev)).norm() /
                              (scale * scale));
            if (f.source.has_left_form() && f.target.has_left_form())
                left_form.update((f.source.left_inner(eu, ev) - f.target.left_inner(phi * eu, phi * ev)).norm() /
                                 (scale * scale));
        }
    rep.add("isomorphism intertwines left actions", anchor, left.value(), tol);
    rep.add("isomorphism intertwines right actions", anchor, right.value(), tol);
    rep.add("isomorphism intertwines the symmetries", anchor, sym.value(), tol);
    rep.add("isomorphism preserves the right product (gram residual)", anchor, right_form.value(), tol);
    if (f.source.has_left_form() && f.target.has_left_form())
        rep.add("isomorphism preserves the left product", anchor, left_form.value(), tol);
    return rep;
}

// x (x) b -> x.b from M (x)_B B onto M.
inline CorrespondenceMorphism right_unit(const Bimodule& M, const TensorOptions& opt = {})
{
    const Bimodule id = identity_correspondence(M.right);
    TensorProduct T = internal_tensor(M, id, opt);
    const auto dB = id.dim;
    Mat amb(M.dim, M.dim * dB);
    for (Eigen::Index u = 0; u < M.dim; ++u)
        for (Eigen::Index j = 0; j < dB; ++j)
            amb.col(u * dB + j) = M.R(M.right.basis()[std::size_t(j)]) * unit_vector(M.dim, u);
    return {std::move(T.module), M, amb * T.quotient.section};
}

// a (x) x -> a.x from A (x)_A M onto M.
inline CorrespondenceMorphism left_unit(const Bimodule& M, const TensorOptions& opt = {})
{
    const Bimodule id = identity_correspondence(M.left);
    TensorProduct T = internal_tensor(id, M, opt);
    const auto dA = id.dim;
    Mat amb(M.dim, dA * M.dim);
    for (Eigen::Index i = 0; i < dA; ++i)
        for (Eigen::Index u = 0; u < M.dim; ++u)
            amb.col(i * M.dim + u) = M.L(M.left.basis()[std::size_t(i)]) * unit_vector(M.dim, u);
    return {std::move(T.module), M, amb * T.quotient.section};
}

// (x (x) y) (x) z -> x (x) (y (x) z), through the two quotient sections.
inline CorrespondenceMorphism associativity_iso(const Bimodule& M, const Bimodule& N, const Bimodule& P,
                                                const TensorOptions& opt = {})
{
    const TensorProduct mn = internal_tensor(M, N, opt);
    const TensorProduct np = internal_tensor(N, P, opt);
    const TensorProduct left = internal_tensor(mn.module, P, opt);
    const TensorProduct right = internal_tensor(M, np.module, opt);
    const Mat lift = kron(mn.quotient.section, identity(P.dim)) * left.quotient.section;
    const Mat push = right.quotient.projector * kron(identity(M.dim), np.quotient.projector);
    return {left.module, right.module, push * lift};
}

// Eigenspaces of the descended J against the images of M_s (x) N_t.
struct DecompositionCheck {
    Eigen::Index even_dim = 0, odd_dim = 0;
    double even_distance = 0.0, odd_distance = 0.0;
};

inline DecompositionCheck tensor_decomposition(const Bimodule& M, const Bimodule& N, const TensorProduct& T)
{
    auto part = [](const Mat& J, double s) { return Subspace::range_of_idempotent(0.5 * (identity(J.rows()) + s * J)); };
    const Subspace mp = part(M.J, 1), mm = part(M.J, -1), np = part(N.J, 1), nm = part(N.J, -1);
    const Mat& q = T.quotient.projector;
    auto image = [&](const Subspace& a1, const Subspace& b1, const Subspace& a2, const Subspace& b2) {
        const Mat k1 = kron(a1.basis(), b1.basis()), k2 = kron(a2.basis(), b2.basis());
        Mat both(q.rows(), k1.cols() + k2.cols());
        both << q * k1, q * k2;
        return Subspace::range_of(both);
    };
    const Subspace even = image(mp, np, mm, nm), odd = image(mp, nm, mm, np);
    const Subspace plus = part(T.module.J, 1), minus = part(T.module.J, -1);
    DecompositionCheck d;
    d.even_dim = even.dim();
    d.odd_dim = odd.dim();
    d.even_distance = even.dim() == plus.dim() ? even.distance(plus) : 1.0;
    d.odd_distance = odd.dim() == minus.dim() ? odd.distance(minus) : 1.0;
    return d;
}

// Grams and J computed through a second, non-orthogonal section
// Q2 = S V + R W agree with the first after the change of basis V.
inline double section_independence_defect(const TensorProduct& T, Rng& rng)
{
    const Mat& S = T.quotient.section;
    const auto k = S.cols();
    if (k == 0)
        return 0.0;
    const Mat V = rng.gaussian(k, k) + 2.0 * identity(k);
    const Mat& R = T.relations.basis();
    Mat Q2 = S * V;
    if (R.cols())
        Q2 += R * rng.gaussian(R.cols(), k);
    const Mat Vinv = V.inverse();
    const Mat q2 = Vinv * S.adjoint();
    Worst w;
    for (std::size_t l = 0; l < T.ambient_forms.size(); ++l) {
        const Mat g1 = V.adjoint() * T.module.right_form[l] * V;
        const Mat g2 = Q2.adjoint() * T.ambient_forms[l] * Q2;
        w.update((g1 - g2).norm() / std::max(1.0, g1.norm()));
    }
    w.update((Vinv * T.module.J * V - q2 * T.ambient_J * Q2).norm());
    return w.value();
}

// Imprimitivity on random triples and fullness of both products.
inline Report morita_krein_check(const Bimodule& M, int samples, std::uint64_t seed, double tol = default_tol)
{
    Report rep("morita");
    if (!M.has_left_form() || !M.has_right_form()) {
        rep.add_flag("both inner products present", "Morita remark", false);
        return rep;
    }
    const Report imp = check_imprimitivity(M, samples, seed, tol);
    rep.append(imp);
    const Fullness f = fullness(M);
    rep.add_count("left fullness", "Morita remark", double(M.left.dim() - f.left_rank),
            "rank " + std::to_string(f.left_rank) + " of " + std::to_string(M.left.dim()));
    rep.add_count("right fullness", "Morita remark", double(M.right.dim() - f.right_rank),
            "rank " + std::to_string(f.right_rank) + " of " + std::to_string(M.right.dim()));
    return rep;
}

// A = C + C acting on C through its first summand: a sub-bimodule of the
// self-module that is not full on the left.
inline Bimodule non_full_sub_bimodule()
{
    Bimodule M;
    M.left = KreinAlgebra::c_star(BlockAlgebra::functions(2));
    M.right = KreinAlgebra::scalars();
    M.dim = 1;
    const Mat one = identity(1), zero = Mat::Zero(1, 1);
    M.left_action = {one, zero};
    M.right_action = {one};
    M.right_form = {one};
    M.left_form = {one, zero};
    M.J = one;
    return M;
}

// Tensor product checks for a composable pair.
inline Report check_tensor(const Bimodule& M, const Bimodule& N, int samples, std::uint64_t seed,
                           double tol = default_tol, const TensorOptions& opt = {})
{
    const std::string anchor = "internal tensor product theorem";
    Report rep("tensor");
    const TensorProduct T = internal_tensor(M, N, opt);
    rep.add("relations preserved and killed by the descended structure", anchor, T.descent_defect, tol);
    Rng rng(seed);
    Worst formula;
    for (int s = 0; s < samples; ++s) {
        const Vec x1 = M.random_vector(rng), x2 = M.random_vector(rng);
        const Vec y1 = N.random_vector(rng), y2 = N.random_vector(rng);
        const Vec u1 = T.quotient.projector * kron(x1, y1), u2 = T.quotient.projector * kron(x2, y2);
        const Mat expected = N.right_inner(y1, N.L(M.right_inner(x1, x2)) * y2);
        formula.update((T.module.right_inner(u1, u2) - expected).norm() /
                       (x1.norm() * x2.norm() * y1.norm() * y2.norm()));
    }
    rep.add("descended product matches <y1,<x1,x2>y2>", anchor, formula.value(), tol);
    const double min_ev = normalized_min_eigenvalue(auxiliary_scalar_gram(T.module.right_form, T.module.right,
                                                                          T.module.J));
    rep.add_count("descended product non-degenerate", "non-degeneracy of the tensor product",
            min_ev > 1e-9 ? 0.0 : 1.0, "normalized minimum eigenvalue " + std::to_string(min_ev));
    rep.add("section independence of the descended structure", "universal property",
            section_independence_defect(T, rng), tol);
    const DecompositionCheck d = tensor_decomposition(M, N, T);
    rep.add("eigenspaces of J match (M+N+ + M-N-) and (M+N- + M-N+)", "tensor decomposition",
            std::max(d.even_distance, d.odd_distance), default_rank_tol,
            "even " + std::to_string(d.even_dim) + ", odd " + std::to_string(d.odd_dim));
    Worst gamma_compat;
    for (int s = 0; s < samples; ++s) {
        const Vec u = T.module.random_vector(rng), v = T.module.random_vector(rng);
        gamma_compat.update(
            (T.module.right.alpha(T.module.right_inner(u, v)) - T.module.right_inner(T.module.J * u, T.module.J * v))
                .norm() /
            (u.norm() * v.norm()));
    }
    rep.add("gamma(<u,v>) = <Ju,Jv> on the tensor product", anchor, gamma_compat.value(), 1e-10);
    rep.append(check_correspondence(T.module, samples, derive_seed(seed, "tensor-correspondence"), tol), "M(x)N: ");
    return rep;
}

// S (x)_C S* onto the Clifford self-bimodule in the Grassmann representation:
// psi (x) phibar -> psi phi^H A, then gamma_S -> c(e_S).
inline Report spinor_factorization_check(const PseudoEuclidean& sp, int samples, std::uint64_t seed,
                                         double tol = default_tol)
{
    const std::string anchor = "spinor factorization example";
    Report rep("spinor-factorization");
    const GammaRep g = gamma_rep(sp);
    const Bimodule S = spinor_module(g);
    const Bimodule Sbar = contragredient(S);
    const TensorProduct T = internal_tensor(S, Sbar);
    const KreinAlgebra cl = clifford_krein_algebra(sp);
    const Bimodule target = self_module(cl);
    const auto d = g.spinor_dim();
    rep.add_count("dimension 2^m * 2^m = 2^n", anchor, double(std::abs(T.module.dim - sp.blades())),
            std::to_string(d) + " * " + std::to_string(d) + " = " + std::to_string(T.module.dim));

    const AlgebraMap iota = [&](const Mat& x) { return spinor_to_grassmann(g, x); };
    Mat phi(target.dim, T.module.dim);
    for (Eigen::Index k = 0; k < T.module.dim; ++k) {
        const Vec& w = T.quotient.section.col(k);
        Mat W(d, d);
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b)
                W(a, b) = w(a * d + b);
        phi.col(k) = cl.coords(iota(W * g.A));
    }
    const bool square = phi.rows() == phi.cols();
    rep.add_count("factorization map bijective", anchor, square ? double(phi.rows() - numerical_rank(phi)) : 1.0);

    Rng rng(seed);
    Worst left, right, product, sym;
    const Bimodule& P = T.module;
    for (int s = 0; s < samples; ++s) {
        const Vec u = P.random_vector(rng), v = P.random_vector(rng);
        const Mat a = P.left.random(rng), b = P.right.random(rng);
        const double nu = u.norm();
        left.update((phi * (P.L(a) * u) - target.L(iota(a)) * (phi * u)).norm() / (nu * a.norm()));
        right.update((phi * (P.R(b) * u) - target.R(iota(b)) * (phi * u)).norm() / (nu * b.norm()));
        product.update((iota(P.right_inner(u, v)) - target.right_inner(phi * u, phi * v)).norm() / (nu * v.norm()));
        sym.update((phi * (P.J * u) - target.J * (phi * u)).norm() / nu);
    }
    rep.add("intertwines left Clifford actions", anchor, left.value(), tol);
    rep.add("intertwines right Clifford actions", anchor, right.value(), tol);
    rep.add("carries the tensor product to the Clifford product", anchor, product.value(), tol);
    rep.add("carries J (x) Jbar to alpha", anchor, sym.value(), tol);
    rep.append(check_krein_star_hom(iota, spinor_clifford_algebra(g), cl, samples, derive_seed(seed, "iota"), tol),
               "gamma_S -> c(e_S): ");
    return rep;
}

} // namespace krein
