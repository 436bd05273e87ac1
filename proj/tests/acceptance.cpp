// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Reference values come from the oracles, not from the library.

#include "oracles.hpp"

#include <krein/checker.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace krein;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << v;
    return s.str();
}

// Appends "label=value" to the detail and clears ok when the bound fails.
void expect_below(Outcome& o, const std::string& label, double value, double bound)
{
    const bool good = value < bound;
    o.ok = o.ok && good;
    o.detail += (o.detail.empty() ? "" : ", ") + label + "=" + fmt(value) + (good ? "" : " (limit " + fmt(bound) + ")");
}

void expect_true(Outcome& o, const std::string& label, bool holds)
{
    o.ok = o.ok && holds;
    if (!holds)
        o.detail += (o.detail.empty() ? "" : ", ") + label + " FAILED";
}

void expect_passed(Outcome& o, const std::string& label, const Report& r)
{
    const bool good = r.passed();
    o.ok = o.ok && good;
    if (!good) {
        std::string names;
        for (const auto& n : r.violated_names())
            names += (names.empty() ? "" : "; ") + n;
        o.detail += (o.detail.empty() ? "" : ", ") + label + " failed [" + names + "]";
    }
}

double record_value(const Report& r, const std::string& name)
{
    const CheckRecord* rec = r.find(name);
    return rec ? rec->max_violation : std::numeric_limits<double>::infinity();
}

// ------------------------------------------------------------------ 1

Outcome cstar_identity()
{
    Outcome o;
    for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        Timer t;
        const Report r = check_krein_cstar_axioms(KreinAlgebra::full(p, q), 1000, 101);
        const double secs = t.seconds();
        const std::string s = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
        expect_below(o, s, record_value(r, "C*-identity"), 1e-9);
        expect_below(o, s + " secs", secs, 2.0);
        expect_passed(o, s + " axioms", r);
    }
    return o;
}

// ------------------------------------------------------------------ 2

Outcome symmetry_properties()
{
    Outcome o;
    const KreinModule modules[] = {KreinModule::krein_space(2, 2),
                                   KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1})};
    const char* labels[] = {"C^{2,2}", "M_2^2"};
    for (int m = 0; m < 2; ++m) {
        const KreinModule& M = modules[m];
        Rng rng(200 + std::uint64_t(m));
        std::vector<FundamentalSymmetry> syms{standard_symmetry(M)};
        for (int i = 0; i < 20; ++i)
            syms.push_back(random_symmetry(M, rng));
        double worst = 0.0;
        int checked = 0;
        for (const auto& J : syms) {
            const Report r = check_symmetry(M, J, 100, rng.next_seed());
            for (const auto& rec : r.records())
                worst = std::max(worst, rec.max_violation);
            expect_passed(o, labels[m], r);
            checked += int(r.records().size() == 6);
        }
        expect_true(o, std::string(labels[m]) + " six properties on 21 symmetries", checked == 21);
        expect_below(o, std::string(labels[m]) + " worst", worst, 1e-9);
    }
    return o;
}

// ------------------------------------------------------------------ 3

Outcome transitions()
{
    Outcome o;
    const KreinModule modules[] = {KreinModule::krein_space(2, 2),
                                   KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1})};
    double intertwine = 0.0, unitary = 0.0;
    int bijective = 0;
    for (int m = 0; m < 2; ++m) {
        const KreinModule& M = modules[m];
        Rng rng(300 + std::uint64_t(m));
        const Mat I = identity(M.ref_dim());
        for (int k = 0; k < 50; ++k) {
            const FundamentalSymmetry J1 = random_symmetry(M, rng), J2 = random_symmetry(M, rng);
            const Report r = check_transition(M, J1, J2, 20, rng.next_seed());
            bijective += !r.find("transition maps bijective")->violated();
            const Mat U = intertwiner(M, J1, J2);
            intertwine = std::max(intertwine, (U * J1.op - J2.op * U).norm());
            unitary = std::max(unitary, (krein_adjoint(M, U) * U - I).norm());
        }
    }
    expect_true(o, "bijective on 100 pairs", bijective == 100);
    expect_below(o, "UJ1-J2U", intertwine, 1e-9);
    expect_below(o, "U*U-1", unitary, 1e-9);
    const KreinModule K = KreinModule::krein_space(1, 1);
    const auto [c, C] = norm_equivalence_constants(K, standard_symmetry(K), hyperbolic_symmetry(0.3));
    expect_below(o, "|c-e^-t|", std::abs(c - std::exp(-0.3)), 1e-6);
    expect_below(o, "|C-e^t|", std::abs(C - std::exp(0.3)), 1e-6);
    return o;
}

// ------------------------------------------------------------------ 4

// F_j S = T^H F_j for all j, as one stacked Kronecker system in vec(S).
Mat oracle_adjoint(const std::vector<Mat>& forms, const Mat& T)
{
    const auto d = T.rows();
    Mat sys(Eigen::Index(forms.size()) * d * d, d * d);
    Vec rhs(sys.rows());
    for (std::size_t j = 0; j < forms.size(); ++j) {
        const Mat& F = forms[j];
        for (Eigen::Index col = 0; col < d; ++col)
            for (Eigen::Index row = 0; row < d; ++row) {
                const Eigen::Index eq = Eigen::Index(j) * d * d + col * d + row;
                sys.row(eq).setZero();
                for (Eigen::Index k = 0; k < d; ++k)
                    sys(eq, col * d + k) = F(row, k);
                rhs(eq) = (T.adjoint() * F)(row, col);
            }
    }
    const Vec s = sys.fullPivHouseholderQr().solve(rhs);
    return Eigen::Map<const Mat>(s.data(), d, d);
}

Outcome adjoint_dictionaries()
{
    Outcome o;
    const KreinModule K1 = KreinModule::krein_space(1, 0), K2 = KreinModule::krein_space(2, 1);
    Rng srng(400);
    const std::vector<std::pair<std::string, Bimodule>> cases = {
        {"self B(C^{1,1})", self_module(KreinAlgebra::full(1, 1))},
        {"self B(C^{2,1})", self_module(KreinAlgebra::full(2, 1))},
        {"C^{2,1} random J", as_right_module(K2, random_symmetry(K2, srng))},
        {"B(C^1,C^{2,1})", operator_bimodule(K1, standard_symmetry(K1), K2, random_symmetry(K2, srng))},
    };
    for (const auto& [label, M] : cases) {
        const Mat endo = module_endomorphism_basis(M);
        Rng rng(derive_seed(401, label));
        std::vector<Mat> twisted;
        for (const Mat& f : M.right_form)
            twisted.push_back(f * M.J);
        double lib_vs_oracle = 0.0, dictionary = 0.0, pairing = 0.0;
        for (int k = 0; k < 500; ++k) {
            const Mat T = random_endomorphism(M, endo, rng);
            const double nT = T.norm();
            const Mat star = oracle_adjoint(M.right_form, T);
            const Mat aux = oracle_adjoint(twisted, T);
            lib_vs_oracle = std::max({lib_vs_oracle, (krein_adjoint_over_krein(M, T).adjoint - star).norm() / nT,
                                      (auxiliary_adjoint(M, T).adjoint - aux).norm() / nT});
            dictionary = std::max({dictionary, (aux - M.J * star * M.J).norm() / nT,
                                   (star - M.J * aux * M.J).norm() / nT});
            const Vec x = M.random_vector(rng), y = M.random_vector(rng);
            pairing = std::max(pairing, (M.right_inner(T * x, y) - M.right_inner(x, star * y)).norm() /
                                            (nT * x.norm() * y.norm()));
        }
        expect_below(o, label + " lib-vs-oracle", lib_vs_oracle, 1e-9);
        expect_below(o, label + " dictionary", dictionary, 1e-9);
        expect_below(o, label + " pairing", pairing, 1e-9);
    }
    return o;
}

// ------------------------------------------------------------------ 5

Outcome grassmann_and_clifford()
{
    Outcome o;
    double anti = 0.0;
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            if (p + q > 0) {
                const PseudoEuclidean sp(p, q);
                anti = std::max(anti, anticommutator_defect(clifford_generators(sp), sp));
            }
    expect_below(o, "anticommutators up to (2,2)", anti, 1e-12);

    const PseudoEuclidean sp(2, 2);
    Rng rng(500);
    double det = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 4;
        MultiVector v = MultiVector::scalar(sp, 1.0), w = MultiVector::scalar(sp, 1.0);
        std::vector<Vec> vs, ws;
        for (int i = 0; i < k; ++i) {
            vs.push_back(rng.gaussian_vector(4));
            ws.push_back(rng.gaussian_vector(4));
            v = wedge(v, MultiVector::vector(sp, vs.back()));
            w = wedge(w, MultiVector::vector(sp, ws.back()));
        }
        Mat g(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                cplx s = 0.0;
                for (int a = 0; a < 4; ++a)
                    s += std::conj(vs[std::size_t(i)](a)) * (a < 2 ? 1.0 : -1.0) * ws[std::size_t(j)](a);
                g(i, j) = s;
            }
        const cplx ref = oracle::laplace_det(g);
        det = std::max(det, std::abs(grassmann_inner(v, w) - ref) / std::max(1.0, std::abs(ref)));
    }
    expect_below(o, "gram determinant (200 decomposables)", det, 1e-10);

    const PseudoEuclidean mink(1, 1);
    const MultiVector e01 = wedge(MultiVector::generator(mink, 0), MultiVector::generator(mink, 1));
    expect_below(o, "|<e0^e1,e0^e1>+1|", std::abs(grassmann_inner(e01, e01) + 1.0), 1e-15);
    return o;
}

// ------------------------------------------------------------------ 6

Outcome minkowski_spinor_signature()
{
    Outcome o;
    Timer t;
    const auto sig = spinor_signature(gamma_rep(PseudoEuclidean(1, 3)));
    const double secs = t.seconds();
    expect_true(o, "signature (2,2)", sig == std::make_pair(2, 2));
    o.detail += (o.detail.empty() ? "" : ", ") + std::string("signature (") + std::to_string(sig.first) + "," +
                std::to_string(sig.second) + ")";
    expect_below(o, "secs", secs, 0.1);
    return o;
}

// ------------------------------------------------------------------ 7

Outcome tensor_products()
{
    Outcome o;
    const Bimodule m2 = self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2)));
    const TensorProduct T = internal_tensor(m2, m2);
    expect_true(o, "dim M_2 (x) M_2 = 4", T.module.dim == 4);
    o.detail += (o.detail.empty() ? "" : ", ") + std::string("dim ") + std::to_string(T.module.dim);

    const KreinModule K1 = KreinModule::krein_space(1, 0), K2 = KreinModule::krein_space(1, 1);
    const Bimodule ops = operator_bimodule(K1, standard_symmetry(K1), K2, standard_symmetry(K2));
    double gram = 0.0;
    for (const Bimodule& M : {m2, self_module(KreinAlgebra::full(1, 1)), ops})
        for (const auto& f : {right_unit(M), left_unit(M)}) {
            const Report r = check_morphism(f, "unit");
            expect_passed(o, "unit law", r);
            gram = std::max(gram, record_value(r, "isomorphism preserves the right product (gram residual)"));
        }
    expect_below(o, "unit gram residual", gram, 1e-9);

    const CorrespondenceMorphism assoc = associativity_iso(self_module(ops.left), ops, self_module(ops.right));
    expect_passed(o, "associativity (mixed chain)", check_morphism(assoc, "associativity"));

    const KreinModule K = KreinModule::krein_space(1, 1);
    Rng rng(700);
    const Bimodule ks = as_right_module(K, random_symmetry(K, rng));
    double dist = 0.0;
    for (const Bimodule& M : {ks, self_module(KreinAlgebra::full(1, 1))}) {
        const DecompositionCheck d = tensor_decomposition(M, M, internal_tensor(M, M));
        dist = std::max({dist, d.even_distance, d.odd_distance});
    }
    expect_below(o, "eigenspace distance", dist, 1e-8);
    return o;
}

// ------------------------------------------------------------------ 8

Outcome spinor_morita()
{
    Outcome o;
    for (auto [p, q] : {std::pair{1, 1}, {2, 2}}) {
        const PseudoEuclidean sp(p, q);
        const std::string s = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
        const Report morita = morita_krein_check(spinor_module(sp), 200, 800);
        expect_passed(o, s + " full and imprimitive", morita);
        const Report fact = spinor_factorization_check(sp, 200, 801, 1e-9);
        expect_passed(o, s + " S (x) S* = Lambda", fact);
        double worst = 0.0;
        for (const auto& rec : fact.records())
            if (rec.kind == Kind::measure)
                worst = std::max(worst, rec.max_violation);
        expect_below(o, s + " worst", worst, 1e-9);
    }
    return o;
}

// ------------------------------------------------------------------ 9

Outcome negative_controls()
{
    Outcome o;
    checker::CheckConfig c;
    c.jobs = 1;
    const checker::RunResult r = checker::run(c);
    int controls = 0;
    for (const auto& t : r.tasks) {
        const CheckRecord* targeted = nullptr;
        for (const auto& rec : t.report.records())
            if (rec.name.starts_with("targeted check fails: "))
                targeted = &rec;
        if (!targeted)
            continue;
        ++controls;
        const CheckRecord* unrelated = t.report.find("no unrelated check fails");
        expect_true(o, t.name + " targeted", targeted->passed() && targeted->violated());
        expect_true(o, t.name + " exact", unrelated && unrelated->passed());
    }
    expect_true(o, "at least five controls", controls >= 5);
    o.detail += (o.detail.empty() ? "" : ", ") + std::to_string(controls) + " controls";
    return o;
}

// ------------------------------------------------------------------ 10

Outcome gallery_reproducible()
{
    Outcome o;
    checker::CheckConfig c;
    Timer t;
    const auto first = checker::to_json(checker::run(c), c, "check", "full-gallery").dump(2);
    const double secs = t.seconds();
    const auto second = checker::to_json(checker::run(c), c, "check", "full-gallery").dump(2);
    expect_true(o, "byte-identical", first == second);
    expect_true(o, "verdict pass", first.find("\"verdict\": \"pass\"") != std::string::npos);
    expect_below(o, "secs", secs, 60.0);
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
        {"C*-identity on B(C^{1,1}), B(C^{2,1}), B(C^{2,2}) at 1000 samples", cstar_identity},
        {"fundamental symmetry properties on C^{2,2} and M_2^2", symmetry_properties},
        {"transition maps, unitary intertwiners, hyperbolic norm constants", transitions},
        {"adjoint dictionaries against independently solved adjoints", adjoint_dictionaries},
        {"Clifford anticommutators and Grassmann gram determinants", grassmann_and_clifford},
        {"Minkowski spinor signature", minkowski_spinor_signature},
        {"internal tensor products, unit laws, associativity, decomposition", tensor_products},
        {"spinor Morita-Krein equivalence and factorization", spinor_morita},
        {"negative controls fail exactly their targeted check", negative_controls},
        {"full gallery reproducible and fast", gallery_reproducible},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Timer t;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.ok;
        std::printf("%s  [%2zu] %s  (%s; %.2f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), t.seconds());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
