#pragma once
// Grassmann and Clifford algebras over a pseudo-Euclidean space, the
// Clifford algebra as a Krein C*-algebra acting on the Grassmann algebra,
// and gamma-matrix spinor modules.
//
// Basis blades e_S are indexed by bitmasks S, bit i standing for e_i, with
// the factors of a blade in increasing order.

#include "algebra.hpp"
#include "bimodule.hpp"

#include <bit>
#include <cstdint>
#include <functional>

namespace krein {

using Blade = std::uint32_t;

// R^{p,q}: the first p coordinates are timelike (square +1), the last q
// spacelike (square -1).
struct PseudoEuclidean {
    int p = 0, q = 0;

    PseudoEuclidean() = default;
    PseudoEuclidean(int p_, int q_) : p(p_), q(q_)
    {
        if (p < 0 || q < 0)
            throw std::invalid_argument("PseudoEuclidean: negative signature");
        if (p + q > 20)
            throw std::invalid_argument("PseudoEuclidean: dimension too large");
    }

    int n() const { return p + q; }
    Eigen::Index blades() const { return Eigen::Index(1) << n(); }
    bool timelike(int i) const { return i < p; }
    double metric(int i) const { return timelike(i) ? 1.0 : -1.0; }
    Blade spacelike_mask() const { return ((Blade(1) << n()) - 1) & ~((Blade(1) << p) - 1); }
    // Product of the metric entries over the blade, +-1.
    double metric_sign(Blade s) const { return std::popcount(s & spacelike_mask()) % 2 ? -1.0 : 1.0; }

    bool operator==(const PseudoEuclidean&) const = default;
};

inline int grade(Blade s) { return std::popcount(s); }

// Sign of the permutation sorting the concatenation (S, T) of two blades:
// (-1)^{#{(i, j) : i in S, j in T, i > j}}.
inline double reorder_sign(Blade s, Blade t)
{
    int swaps = 0;
    for (Blade rest = t; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        swaps += std::popcount(s >> (j + 1));
    }
    return swaps % 2 ? -1.0 : 1.0;
}

class MultiVector {
public:
    explicit MultiVector(PseudoEuclidean space) : space_(space), coeffs_(Vec::Zero(space.blades())) {}

    MultiVector(PseudoEuclidean space, Vec coeffs) : space_(space), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != space_.blades())
            throw std::invalid_argument("MultiVector: coefficient vector must have length 2^n");
    }

    static MultiVector blade(PseudoEuclidean space, Blade s, cplx c = 1.0)
    {
        MultiVector m(space);
        m.coeffs_(Eigen::Index(s)) = c;
        return m;
    }

    static MultiVector scalar(PseudoEuclidean space, cplx c) { return blade(space, 0, c); }

    static MultiVector generator(PseudoEuclidean space, int i)
    {
        if (i < 0 || i >= space.n())
            throw std::out_of_range("MultiVector: generator index out of range");
        return blade(space, Blade(1) << i);
    }

    // Degree-one element sum_i v_i e_i.
    static MultiVector vector(PseudoEuclidean space, const Vec& v)
    {
        if (v.size() != space.n())
            throw std::invalid_argument("MultiVector: vector length differs from dimension");
        MultiVector m(space);
        for (int i = 0; i < space.n(); ++i)
            m.coeffs_(Eigen::Index(1) << i) = v(i);
        return m;
    }

    static MultiVector random(PseudoEuclidean space, Rng& rng)
    {
        return MultiVector(space, rng.gaussian_vector(space.blades()));
    }

    const PseudoEuclidean& space() const { return space_; }
    const Vec& coeffs() const { return coeffs_; }
    cplx operator[](Blade s) const { return coeffs_(Eigen::Index(s)); }

    MultiVector grade_part(int k) const
    {
        MultiVector out(space_);
        for (Eigen::Index s = 0; s < coeffs_.size(); ++s)
            if (grade(Blade(s)) == k)
                out.coeffs_(s) = coeffs_(s);
        return out;
    }

    MultiVector& operator+=(const MultiVector& o)
    {
        require_same(o);
        coeffs_ += o.coeffs_;
        return *this;
    }
    MultiVector& operator-=(const MultiVector& o)
    {
        require_same(o);
        coeffs_ -= o.coeffs_;
        return *this;
    }
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend MultiVector operator*(cplx c, MultiVector a)
    {
        a.coeffs_ *= c;
        return a;
    }

    void require_same(const MultiVector& o) const
    {
        if (!(o.space_ == space_))
            throw std::invalid_argument("MultiVector: space mismatch");
    }

private:
    PseudoEuclidean space_;
    Vec coeffs_;
};

namespace detail {

template <class F>
MultiVector blade_bilinear(const MultiVector& a, const MultiVector& b, F&& f)
{
    a.require_same(b);
    MultiVector out(a.space());
    Vec c = Vec::Zero(a.space().blades());
    const auto n = a.space().blades();
    for (Eigen::Index s = 0; s < n; ++s) {
        if (a.coeffs()(s) == cplx(0.0))
            continue;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (b.coeffs()(t) == cplx(0.0))
                continue;
            const auto [blade, factor] = f(Blade(s), Blade(t));
            if (factor != 0.0)
                c(Eigen::Index(blade)) += factor * a.coeffs()(s) * b.coeffs()(t);
        }
    }
    return MultiVector(a.space(), std::move(c));
}

} // namespace detail

inline MultiVector wedge(const MultiVector& a, const MultiVector& b)
{
    return detail::blade_bilinear(a, b, [](Blade s, Blade t) {
        return std::pair<Blade, double>{s | t, (s & t) ? 0.0 : reorder_sign(s, t)};
    });
}

// e_S e_T = sign(S, T) prod_{i in S cap T} g_ii e_{S xor T}.
inline MultiVector clifford_product(const MultiVector& a, const MultiVector& b)
{
    const PseudoEuclidean sp = a.space();
    return detail::blade_bilinear(a, b, [&](Blade s, Blade t) {
        return std::pair<Blade, double>{s ^ t, reorder_sign(s, t) * sp.metric_sign(s & t)};
    });
}

// Determinant inner product: blades are orthogonal, <e_S, e_S> = prod g_ii,
// and distinct degrees pair to zero.  Conjugate-linear in the first slot.
inline cplx grassmann_inner(const MultiVector& a, const MultiVector& b)
{
    a.require_same(b);
    cplx sum = 0.0;
    for (Eigen::Index s = 0; s < a.coeffs().size(); ++s)
        sum += std::conj(a.coeffs()(s)) * a.space().metric_sign(Blade(s)) * b.coeffs()(s);
    return sum;
}

// Gram matrix of grassmann_inner on the blade basis.
inline Mat grassmann_gram(const PseudoEuclidean& sp)
{
    Mat g = Mat::Zero(sp.blades(), sp.blades());
    for (Eigen::Index s = 0; s < sp.blades(); ++s)
        g(s, s) = sp.metric_sign(Blade(s));
    return g;
}

// The second quantization of J_M = diag(+1 timelike, -1 spacelike): on e_S the
// product of the signs of its factors.  It coincides with the gram.
inline Mat second_quantized_J(const PseudoEuclidean& sp) { return grassmann_gram(sp); }

inline MultiVector apply_operator(const Mat& op, const MultiVector& w)
{
    return MultiVector(w.space(), op * w.coeffs());
}

// e_i ^ e_T.
inline MultiVector creation(int i, const MultiVector& w)
{
    return wedge(MultiVector::generator(w.space(), i), w);
}

// Interior product against the coordinate covector e^i (no metric factor).
inline MultiVector contraction(int i, const MultiVector& w)
{
    MultiVector out(w.space());
    Vec c = Vec::Zero(w.space().blades());
    const Blade bit = Blade(1) << i;
    for (Eigen::Index t = 0; t < w.coeffs().size(); ++t) {
        const Blade tb = Blade(t);
        if (!(tb & bit) || w.coeffs()(t) == cplx(0.0))
            continue;
        const double sign = std::popcount(tb & (bit - 1)) % 2 ? -1.0 : 1.0;
        c(Eigen::Index(tb ^ bit)) += sign * w.coeffs()(t);
    }
    return MultiVector(w.space(), std::move(c));
}

// c(e_i) w = e_i ^ w + g_ii (e^i contraction) w.
inline MultiVector clifford_action(int i, const MultiVector& w)
{
    return creation(i, w) + cplx(w.space().metric(i)) * contraction(i, w);
}

// Matrix of c(e_i) on the blade basis.
inline Mat clifford_generator(const PseudoEuclidean& sp, int i)
{
    Mat m(sp.blades(), sp.blades());
    for (Eigen::Index t = 0; t < sp.blades(); ++t)
        m.col(t) = clifford_action(i, MultiVector::blade(sp, Blade(t))).coeffs();
    return m;
}

inline std::vector<Mat> clifford_generators(const PseudoEuclidean& sp)
{
    std::vector<Mat> g;
    for (int i = 0; i < sp.n(); ++i)
        g.push_back(clifford_generator(sp, i));
    return g;
}

// Ordered product of the given matrices over the factors of a blade.
inline Mat blade_product(const std::vector<Mat>& gens, Blade s, Eigen::Index dim)
{
    Mat out = identity(dim);
    for (Blade rest = s; rest; rest &= rest - 1)
        out = out * gens[std::size_t(std::countr_zero(rest))];
    return out;
}

// c(a) for a multivector a, the sum of a_S c(e_S).
inline Mat clifford_action(const MultiVector& a)
{
    const PseudoEuclidean sp = a.space();
    const auto gens = clifford_generators(sp);
    Mat out = Mat::Zero(sp.blades(), sp.blades());
    for (Eigen::Index s = 0; s < sp.blades(); ++s)
        if (a.coeffs()(s) != cplx(0.0))
            out += a.coeffs()(s) * blade_product(gens, Blade(s), sp.blades());
    return out;
}

inline MultiVector clifford_action(const MultiVector& a, const MultiVector& w)
{
    return apply_operator(clifford_action(a), w);
}

// Conjugate reversal e_{i1} ... e_{ik} -> e_{ik} ... e_{i1} with conjugated
// coefficients.
inline MultiVector clifford_star(const MultiVector& a)
{
    Vec c(a.coeffs().size());
    for (Eigen::Index s = 0; s < c.size(); ++s) {
        const int k = grade(Blade(s));
        c(s) = ((k * (k - 1) / 2) % 2 ? -1.0 : 1.0) * std::conj(a.coeffs()(s));
    }
    return MultiVector(a.space(), std::move(c));
}

// Lift of J_M: e_i -> +-e_i according to the metric sign.
inline MultiVector clifford_alpha(const MultiVector& a)
{
    Vec c(a.coeffs().size());
    for (Eigen::Index s = 0; s < c.size(); ++s)
        c(s) = a.space().metric_sign(Blade(s)) * a.coeffs()(s);
    return MultiVector(a.space(), std::move(c));
}

// Clifford algebra represented on the Grassmann algebra, with the form and
// symmetry of the Krein space of multivectors.  Basis c(e_S) / 2^{n/2}.
inline KreinAlgebra clifford_krein_algebra(const PseudoEuclidean& sp)
{
    const auto gens = clifford_generators(sp);
    const double scale = 1.0 / std::sqrt(double(sp.blades()));
    std::vector<Mat> basis;
    for (Eigen::Index s = 0; s < sp.blades(); ++s)
        basis.push_back(scale * blade_product(gens, Blade(s), sp.blades()));
    return KreinAlgebra::with_eta(std::move(basis), second_quantized_J(sp));
}

// The multivector a with c(a) = op, read off from the image of the unit.
inline MultiVector clifford_symbol(const PseudoEuclidean& sp, const Mat& op)
{
    return MultiVector(sp, op.col(0));
}

// The Grassmann algebra as a left module over the Clifford algebra with its
// scalar Krein product, J the second quantization of J_M.
inline Bimodule grassmann_module(const PseudoEuclidean& sp)
{
    Bimodule M;
    M.left = clifford_krein_algebra(sp);
    M.dim = sp.blades();
    M.left_action = M.left.basis();
    M.right_action = {identity(M.dim)};
    M.right_form = {grassmann_gram(sp)};
    M.J = second_quantized_J(sp);
    return M;
}

// Gamma matrices for an even-dimensional space.
struct GammaRep {
    PseudoEuclidean space;
    std::vector<Mat> gammas;
    Mat A;                     // fundamental symmetry of the spinor space
    Blade symmetry_blade = 0;  // gammas whose product is proportional to A
    cplx phase = 1.0;          // A = phase * product over symmetry_blade
    int sign = 1;              // the +-1 fixed by the normalization rule

    Eigen::Index spinor_dim() const { return Eigen::Index(1) << (space.n() / 2); }
    Mat gamma(Blade s) const { return blade_product(gammas, s, spinor_dim()); }
};

namespace detail {

inline Mat pauli(int which)
{
    Mat s(2, 2);
    if (which == 0)
        s << 0, 1, 1, 0;
    else if (which == 1)
        s << 0, cplx(0, -1), cplx(0, 1), 0;
    else
        s << 1, 0, 0, -1;
    return s;
}

// First entry of largest magnitude made positive (real part, then imaginary).
inline int normalizing_sign(const Mat& a)
{
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < a.size(); ++i)
        if (std::abs(a.data()[i]) > std::abs(a.data()[best]) + 1e-12)
            best = i;
    const cplx v = a.data()[best];
    if (std::abs(v.real()) > 1e-12)
        return v.real() > 0 ? 1 : -1;
    return v.imag() >= 0 ? 1 : -1;
}

} // namespace detail

// Euclidean generators sz^{(x)k} (x) sx (x) 1 and sz^{(x)k} (x) sy (x) 1;
// spacelike gammas carry an extra factor i.  A is the normalized product of
// the timelike gammas when p is odd, of the spacelike ones when p is even:
// only then does conjugation by A lift J_M.
inline GammaRep gamma_rep(const PseudoEuclidean& sp)
{
    if (sp.n() % 2)
        throw std::invalid_argument("gamma_rep: total dimension must be even");
    const int m = sp.n() / 2;
    GammaRep g;
    g.space = sp;
    for (int k = 0; k < m; ++k)
        for (int which : {0, 1}) {
            Mat e = identity(1);
            for (int f = 0; f < m; ++f)
                e = kron(e, f < k ? detail::pauli(2) : f == k ? detail::pauli(which) : identity(2));
            const int i = 2 * k + which;
            g.gammas.push_back(sp.timelike(i) ? e : Mat(cplx(0, 1) * e));
        }
    const Blade all = (Blade(1) << sp.n()) - 1;
    g.symmetry_blade = sp.p % 2 ? (all & ~sp.spacelike_mask()) : sp.spacelike_mask();
    const Mat prod = g.gamma(g.symmetry_blade);
    const Eigen::Index d = prod.rows();
    // prod is unitary with square +-1
    g.phase = (prod * prod - identity(d)).norm() < 1e-9 ? cplx(1.0) : cplx(0.0, 1.0);
    Mat a = g.phase * prod;
    g.sign = detail::normalizing_sign(a);
    g.phase *= double(g.sign);
    g.A = double(g.sign) * a;
    return g;
}

inline std::pair<int, int> spinor_signature(const GammaRep& g) { return inertia(g.A); }

// The Clifford algebra in the spinor representation, with star and alpha
// induced by A.  Basis gamma_S / 2^{m/2}.
inline KreinAlgebra spinor_clifford_algebra(const GammaRep& g)
{
    const double scale = 1.0 / std::sqrt(double(g.spinor_dim()));
    std::vector<Mat> basis;
    for (Eigen::Index s = 0; s < g.space.blades(); ++s)
        basis.push_back(scale * g.gamma(Blade(s)));
    return KreinAlgebra::with_eta(std::move(basis), g.A);
}

// Clifford element in the spinor representation -> the multivector with
// the same expansion in ordered products of generators.
inline MultiVector spinor_symbol(const GammaRep& g, const Mat& x)
{
    Vec c(g.space.blades());
    for (Eigen::Index s = 0; s < c.size(); ++s)
        c(s) = (g.gamma(Blade(s)).adjoint() * x).trace() / double(g.spinor_dim());
    return MultiVector(g.space, std::move(c));
}

// gamma_S -> c(e_S): the spinor representation carried to the Grassmann one.
inline Mat spinor_to_grassmann(const GammaRep& g, const Mat& x) { return clifford_action(spinor_symbol(g, x)); }

// S(M) as a Clifford-C bimodule: left action by gammas, right product
// psi^H A phi, left product psi phi^H A, J = A.
inline Bimodule spinor_module(const GammaRep& g)
{
    Bimodule M;
    M.left = spinor_clifford_algebra(g);
    M.right = KreinAlgebra::scalars();
    M.dim = g.spinor_dim();
    M.left_action = M.left.basis();
    M.right_action = {identity(M.dim)};
    M.right_form = {g.A};
    for (const Mat& b : M.left.basis())
        M.left_form.push_back(g.A * b.adjoint());
    M.J = g.A;
    return M;
}

inline Bimodule spinor_module(const PseudoEuclidean& sp) { return spinor_module(gamma_rep(sp)); }

// Anticommutators {c_i, c_j} against 2 g_ij, maximum entrywise deviation.
inline double anticommutator_defect(const std::vector<Mat>& gens, const PseudoEuclidean& sp)
{
    double worst = 0.0;
    for (int i = 0; i < sp.n(); ++i)
        for (int j = 0; j < sp.n(); ++j) {
            const Mat& a = gens[std::size_t(i)];
            const Mat& b = gens[std::size_t(j)];
            const Mat expected = i == j ? Mat(2.0 * sp.metric(i) * identity(a.rows())) : Mat::Zero(a.rows(), a.cols());
            const Mat ac = a * b + b * a - expected;
            if (ac.size())
                worst = std::max(worst, ac.cwiseAbs().maxCoeff());
        }
    return worst;
}

// Grassmann and Clifford structure of one signature.
inline Report check_clifford(const PseudoEuclidean& sp, int samples, std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    const std::string anchor = "Grassmann and Clifford example";
    Report rep("clifford");
    const auto gens = clifford_generators(sp);
    rep.add("generator anticommutators {c(e_i),c(e_j)} = 2 g_ij", anchor, anticommutator_defect(gens, sp), 1e-12);

    Worst literal;
    for (int i = 0; i < sp.n(); ++i)
        for (Eigen::Index t = 0; t < sp.blades(); ++t) {
            const MultiVector e = MultiVector::blade(sp, Blade(t));
            literal.update((clifford_action(i, e) - clifford_product(MultiVector::generator(sp, i), e)).coeffs().norm());
        }
    rep.add("c(e_i) is left Clifford multiplication", anchor, literal.value(), 1e-12);

    const Mat G = grassmann_gram(sp), Jl = second_quantized_J(sp);
    Rng rng(seed);
    Worst assoc, unital, mult, anti, det, symbol, wedge_anti;
    const MultiVector one = MultiVector::scalar(sp, 1.0);
    for (int s = 0; s < samples; ++s) {
        const MultiVector a = MultiVector::random(sp, rng), b = MultiVector::random(sp, rng),
                          c = MultiVector::random(sp, rng);
        const double scale = a.coeffs().norm() * b.coeffs().norm() * c.coeffs().norm();
        assoc.update((clifford_product(clifford_product(a, b), c) - clifford_product(a, clifford_product(b, c)))
                         .coeffs()
                         .norm() /
                     scale);
        unital.update(std::max((clifford_product(one, a) - a).coeffs().norm(),
                               (clifford_product(a, one) - a).coeffs().norm()) /
                      a.coeffs().norm());
        mult.update((clifford_action(clifford_product(a, b)) - clifford_action(a) * clifford_action(b)).norm() /
                    (a.coeffs().norm() * b.coeffs().norm()));
        symbol.update((clifford_action(a, one) - a).coeffs().norm() / a.coeffs().norm());

        // degree-one factors: antisymmetry and the Gram determinant formula
        if (sp.n() > 0) {
            const int k = 1 + int(rng.next_seed() % std::uint64_t(sp.n()));
            std::vector<Vec> u, v;
            MultiVector wu = one, wv = one;
            for (int i = 0; i < k; ++i) {
                u.push_back(rng.gaussian_vector(sp.n()));
                v.push_back(rng.gaussian_vector(sp.n()));
                wu = wedge(wu, MultiVector::vector(sp, u.back()));
                wv = wedge(wv, MultiVector::vector(sp, v.back()));
            }
            Mat pairing(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    pairing(i, j) = grassmann_inner(MultiVector::vector(sp, u[std::size_t(i)]),
                                                    MultiVector::vector(sp, v[std::size_t(j)]));
            const cplx expected = pairing.determinant();
            det.update(std::abs(grassmann_inner(wu, wv) - expected) / std::max(1.0, std::abs(expected)));
            const MultiVector x = MultiVector::vector(sp, u[0]), y = MultiVector::vector(sp, v[0]);
            wedge_anti.update((wedge(x, y) + wedge(y, x)).coeffs().norm() + wedge(x, x).coeffs().norm());
        }
        anti.update((clifford_action(clifford_star(a)) - G * clifford_action(a).adjoint() * G).norm() /
                    a.coeffs().norm());
    }
    rep.add("Clifford product associative", anchor, assoc.value(), tight);
    rep.add("Clifford product unital", anchor, unital.value(), tight);
    rep.add("representation multiplicative c(ab) = c(a)c(b)", anchor, mult.value(), tight);
    rep.add("c(a)(1) = a", anchor, symbol.value(), tight);
    rep.add("wedge antisymmetric", anchor, wedge_anti.value(), tight);
    rep.add("Gram determinant formula on decomposables", anchor, det.value(), tight);
    rep.add("star is conjugate reversal", anchor, anti.value(), tight);

    // second quantization
    const Mat I = identity(sp.blades());
    rep.add("second quantized J involutive", "second quantization", (Jl * Jl - I).norm(), 0.0);
    rep.add("second quantized J isometric", "second quantization", (Jl.adjoint() * G * Jl - G).norm(), tight);
    rep.add("second quantized J self-adjoint", "second quantization", (G * Jl - (G * Jl).adjoint()).norm(), tight);
    const double min_ev = normalized_min_eigenvalue(G * Jl);
    rep.add("second quantized auxiliary form positive definite", "second quantization",
            min_ev > 1e-9 ? 0.0 : 1.0 - min_ev, tight);

    // the Clifford algebra as a Krein C*-algebra
    const KreinAlgebra cl = clifford_krein_algebra(sp);
    Mat image(sp.blades() * sp.blades(), sp.blades());
    for (Eigen::Index s = 0; s < sp.blades(); ++s)
        image.col(s) = vec(cl.basis()[std::size_t(s)]);
    rep.add_count("representation faithful (rank 2^n)", anchor, double(sp.blades() - numerical_rank(image)));
    Mat symbols(sp.blades(), sp.blades());
    for (Eigen::Index s = 0; s < sp.blades(); ++s)
        symbols.col(s) = clifford_symbol(sp, cl.basis()[std::size_t(s)]).coeffs();
    rep.add_count("a -> c(a)(1) bijective", anchor, double(sp.blades() - numerical_rank(symbols)));
    Worst alpha_lift, star_gen;
    for (int i = 0; i < sp.n(); ++i) {
        const Mat& c = gens[std::size_t(i)];
        star_gen.update((cl.star(c) - c).norm());
        alpha_lift.update((cl.alpha(c) - sp.metric(i) * c).norm());
    }
    for (int s = 0; s < std::min(samples, 50); ++s) {
        const MultiVector a = MultiVector::random(sp, rng);
        alpha_lift.update((cl.alpha(clifford_action(a)) - clifford_action(clifford_alpha(a))).norm() /
                          a.coeffs().norm());
    }
    rep.add("star(e_i) = e_i as Krein adjoint", anchor, star_gen.value(), tight);
    rep.add("alpha is the lift of J_M", anchor, alpha_lift.value(), tight);
    rep.append(check_krein_cstar_axioms(cl, samples, derive_seed(seed, "clifford-algebra"), tol), "Cl: ");
    return rep;
}

// Gamma matrices, the spinor symmetry and the spinor module.
inline Report check_spinor(const PseudoEuclidean& sp, int samples, std::uint64_t seed, double tol = default_tol)
{
    constexpr double tight = 1e-10;
    const std::string anchor = "spinor example";
    Report rep("spinor");
    const GammaRep g = gamma_rep(sp);
    const Eigen::Index d = g.spinor_dim();
    rep.add("gamma anticommutators {g_i,g_j} = 2 g_ij", anchor, anticommutator_defect(g.gammas, sp), 1e-12);
    rep.add("A hermitian", anchor, (g.A - g.A.adjoint()).norm(), 1e-12);
    rep.add("A involutive", anchor, (g.A * g.A - identity(d)).norm(), 1e-12);
    Worst lift;
    for (int i = 0; i < sp.n(); ++i)
        lift.update((g.A * g.gammas[std::size_t(i)] * g.A - sp.metric(i) * g.gammas[std::size_t(i)]).norm());
    rep.add("conjugation by A lifts J_M", anchor, lift.value(), 1e-12);
    const auto [pos, neg] = spinor_signature(g);
    const int half = int(d / 2);
    const int expect_pos = d == 1 ? 1 : half, expect_neg = d == 1 ? 0 : half;
    std::string sign_note = "A = " + std::string(g.phase.imag() != 0.0 ? (g.phase.imag() > 0 ? "i" : "-i")
                                                                         : (g.phase.real() > 0 ? "+" : "-")) +
                            " product of the " + (sp.p % 2 ? "timelike" : "spacelike") + " gammas";
    rep.add_count("spinor signature", anchor, double(std::abs(pos - expect_pos) + std::abs(neg - expect_neg)),
            "signature (" + std::to_string(pos) + "," + std::to_string(neg) + "); " + sign_note);
    const Bimodule S = spinor_module(g);
    rep.append(check_bimodule(S, samples, seed, tol), "S: ");
    const Fullness f = fullness(S);
    rep.add_count("fullness left rank 4^m", "Morita remark", double(S.left.dim() - f.left_rank),
            "rank " + std::to_string(f.left_rank));
    rep.add_count("fullness right rank 1", "Morita remark", double(S.right.dim() - f.right_rank));
    rep.add_count("dim S * dim S* = dim Lambda", anchor, double(std::abs(d * d - sp.blades())));
    rep.add("auxiliary spinor gram is the identity", anchor, (g.A * g.A - identity(d)).norm(), tight);
    return rep;
}

} // namespace krein
