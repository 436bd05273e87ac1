#pragma once
// Dense complex linear algebra shared by every other header: adjoints,
// operator norms, numerical rank, orthonormal subspaces and quotients.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace krein {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
// BDCSVD in Eigen 3.4.0 can lose singular values on block-sparse input;
// two-sided Jacobi is reliable at the sizes used here.
using Svd = Eigen::JacobiSVD<Mat>;

inline constexpr double default_tol = 1e-9;
inline constexpr double default_rank_tol = 1e-8;
// Below this size the operator norm comes from a full SVD.
inline constexpr Eigen::Index svd_norm_cutoff = 64;

inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline Mat checked(Mat m)
{
    if (!m.allFinite())
        throw std::invalid_argument("matrix has non-finite entries");
    return m;
}

inline Mat dagger(const Mat& m) { return m.adjoint(); }

inline Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }

inline double frobenius(const Mat& m) { return m.norm(); }

// Largest singular value.  Full SVD for desk-sized input, otherwise power
// iteration on m^H m.
inline double operator_norm(const Mat& m)
{
    if (m.size() == 0)
        return 0.0;
    if (std::max(m.rows(), m.cols()) < svd_norm_cutoff) {
        Svd svd(m);
        return svd.singularValues()(0);
    }
    const Mat g = m.adjoint() * m;
    Vec v = Vec::Ones(g.cols()) / std::sqrt(double(g.cols()));
    // deterministic start that is not orthogonal to the top eigenvector
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) += cplx(0.0, 1e-3 * double(i % 7));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vec w = g * v;
        const double next = w.norm();
        if (next == 0.0)
            return 0.0;
        v = w / next;
        if (std::abs(next - lambda) <= 1e-12 * next) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

inline RealVec singular_values(const Mat& m)
{
    if (m.size() == 0)
        return RealVec();
    Svd svd(m);
    return svd.singularValues();
}

// Singular values above tol * (largest singular value).
inline Eigen::Index numerical_rank(const Mat& m, double tol = default_rank_tol)
{
    if (tol <= 0)
        throw std::invalid_argument("numerical_rank: tol must be positive");
    const RealVec s = singular_values(m);
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0))
            ++r;
    return r;
}

inline double relative_gap(const Mat& a, const Mat& b)
{
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

inline Mat hermitian_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

inline RealVec hermitian_eigenvalues(const Mat& h)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// Smallest eigenvalue of the hermitian part divided by the spectral radius,
// zero for the zero matrix.
inline double normalized_min_eigenvalue(const Mat& h)
{
    const RealVec ev = hermitian_eigenvalues(h);
    if (ev.size() == 0)
        return 0.0;
    const double radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    if (radius == 0.0)
        return 0.0;
    return ev(0) / radius;
}

inline double normalized_max_eigenvalue(const Mat& h) { return -normalized_min_eigenvalue(-h); }

// f(h) for hermitian h through its spectral decomposition.
template <class F>
Mat hermitian_function(const Mat& h, F&& f)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h));
    RealVec d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        d(i) = f(d(i));
    return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat sqrt_psd(const Mat& h)
{
    return hermitian_function(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline Mat inv_sqrt_pd(const Mat& h)
{
    return hermitian_function(h, [](double x) {
        if (x <= 0)
            throw std::domain_error("inv_sqrt_pd: matrix is not positive definite");
        return 1.0 / std::sqrt(x);
    });
}

inline Mat sign_of(const Mat& h)
{
    return hermitian_function(h, [](double x) { return x >= 0 ? 1.0 : -1.0; });
}

inline std::pair<int, int> inertia(const Mat& h, double tol = default_rank_tol)
{
    const RealVec ev = hermitian_eigenvalues(h);
    const double scale = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
    int pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol * scale)
            ++pos;
        else if (ev(i) < -tol * scale)
            ++neg;
    }
    return {pos, neg};
}

inline Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat hstack(std::span<const Vec> cols, Eigen::Index rows)
{
    Mat out(rows, Eigen::Index(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw std::invalid_argument("hstack: vector length mismatch");
        out.col(Eigen::Index(j)) = cols[j];
    }
    return out;
}

// Column-major flattening of a matrix and its inverse.
inline Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

inline Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols)
{
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

// Orthonormal basis of a subspace of C^ambient_dim, stored as columns.
class Subspace {
public:
    Subspace() = default;
    Subspace(Eigen::Index ambient_dim, Mat basis) : ambient_(ambient_dim), basis_(std::move(basis))
    {
        if (basis_.rows() != ambient_)
            throw std::invalid_argument("Subspace: basis rows differ from ambient dimension");
    }

    // Column span of m, with rank decided at the relative threshold.
    static Subspace range_of(const Mat& m, double tol = default_rank_tol)
    {
        if (m.cols() == 0)
            return Subspace(m.rows(), Mat(m.rows(), 0));
        Svd svd(m, Eigen::ComputeFullU);
        const RealVec& s = svd.singularValues();
        Eigen::Index r = 0;
        if (s.size() && s(0) > 0)
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s(i) > tol * s(0))
                    ++r;
        return Subspace(m.rows(), svd.matrixU().leftCols(r));
    }

    // Range of an idempotent.  Its nonzero singular values are at least 1, so
    // an absolute cut avoids promoting round-off in P ~ 0 to a direction.
    static Subspace range_of_idempotent(const Mat& p)
    {
        if (p.size() == 0 || p.norm() < 0.5)
            return Subspace(p.rows(), Mat(p.rows(), 0));
        return range_of(p, 0.5 / std::max(1.0, operator_norm(p)));
    }

    static Subspace whole(Eigen::Index n) { return Subspace(n, identity(n)); }

    Eigen::Index ambient_dim() const { return ambient_; }
    Eigen::Index dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }
    Mat projector() const { return basis_ * basis_.adjoint(); }

    Subspace complement() const
    {
        if (dim() == 0)
            return whole(ambient_);
        Svd svd(basis_, Eigen::ComputeFullU);
        return Subspace(ambient_, svd.matrixU().rightCols(ambient_ - dim()));
    }

    double orthonormality_defect() const
    {
        return (basis_.adjoint() * basis_ - identity(dim())).cwiseAbs().maxCoeff();
    }

    // Spectral norm of the difference of orthogonal projectors; zero iff equal.
    double distance(const Subspace& other) const
    {
        if (other.ambient_ != ambient_)
            throw std::invalid_argument("Subspace: ambient dimension mismatch");
        return operator_norm(projector() - other.projector());
    }

private:
    Eigen::Index ambient_ = 0;
    Mat basis_;
};

inline Subspace sum(const Subspace& a, const Subspace& b)
{
    Mat m(a.ambient_dim(), a.dim() + b.dim());
    m << a.basis(), b.basis();
    return Subspace::range_of(m);
}

struct Quotient {
    Eigen::Index dim = 0;
    Mat projector; // dim x ambient, kills every relation
    Mat section;   // ambient x dim, projector * section = identity
};

// Quotient of C^ambient_dim by the span of the columns of `relations`.
inline Quotient quotient_space(Eigen::Index ambient_dim, const Mat& relations,
                               double tol = default_rank_tol)
{
    if (relations.cols() > 0 && relations.rows() != ambient_dim)
        throw std::invalid_argument("quotient_space: relation length mismatch");
    const Subspace rel = relations.cols() ? Subspace::range_of(relations, tol)
                                          : Subspace(ambient_dim, Mat(ambient_dim, 0));
    const Subspace comp = rel.complement();
    return Quotient{comp.dim(), comp.basis().adjoint(), comp.basis()};
}

inline Quotient quotient_space(Eigen::Index ambient_dim, std::span<const Vec> relations,
                               double tol = default_rank_tol)
{
    return quotient_space(ambient_dim, hstack(relations, ambient_dim), tol);
}

// Seeded source of complex standard normal samples.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    cplx gauss() { return cplx(normal(), normal()) / std::sqrt(2.0); }

    Mat gaussian(Eigen::Index rows, Eigen::Index cols)
    {
        Mat m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                m(i, j) = gauss();
        return m;
    }

    Vec gaussian_vector(Eigen::Index n) { return gaussian(n, 1).col(0); }

    std::uint64_t next_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Independent stream for a named sub-check, so results do not depend on the
// order in which checks run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag)
{
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    // splitmix finalizer
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

// Basis of the null space of m (columns), at the relative threshold.
inline Mat null_space(const Mat& m, double tol = default_rank_tol)
{
    if (m.rows() == 0)
        return identity(m.cols());
    Svd svd(m, Eigen::ComputeFullV);
    const RealVec& s = svd.singularValues();
    Eigen::Index r = 0;
    if (s.size() && s(0) > 0)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > tol * s(0))
                ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

} // namespace krein
