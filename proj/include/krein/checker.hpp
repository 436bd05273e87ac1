#pragma once
// Scenario definitions and report rendering behind the krein-check tool.
// A scenario is a list of independent tasks, each seeded from the run seed
// and its own name, so the merged report does not depend on how many
// workers execute them.

#include "correspondence.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

namespace krein::checker {

inline constexpr const char* schema_version = "1.0";
inline constexpr const char* seed_env = "KREIN_CHECK_SEED";
inline constexpr std::uint64_t default_seed = 42;
inline constexpr int max_dimension = 12;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario { krein_algebra, module, module_over_krein, clifford, spinor, tensor, full_gallery };

inline const std::vector<std::pair<std::string, Scenario>>& scenario_names()
{
    static const std::vector<std::pair<std::string, Scenario>> names = {
        {"krein-algebra", Scenario::krein_algebra}, {"module", Scenario::module},
        {"module-over-krein", Scenario::module_over_krein}, {"clifford", Scenario::clifford},
        {"spinor", Scenario::spinor}, {"tensor", Scenario::tensor}, {"full-gallery", Scenario::full_gallery}};
    return names;
}

inline std::string to_string(Scenario s)
{
    for (const auto& [name, value] : scenario_names())
        if (value == s)
            return name;
    return "unknown";
}

inline Scenario parse_scenario(const std::string& name)
{
    for (const auto& [n, value] : scenario_names())
        if (n == name)
            return value;
    throw UsageError("unknown scenario '" + name + "'");
}

inline const std::vector<std::string>& demo_names()
{
    static const std::vector<std::string> names = {"minkowski", "torus", "spinor-m4"};
    return names;
}

struct CheckConfig {
    std::uint64_t seed = default_seed;
    int samples = 100;
    std::optional<double> tol; // overrides every measured tolerance
    Scenario scenario = Scenario::full_gallery;
    int p = 1, q = 1;
    std::vector<int> blocks{2, 1};
    int rank = 2;
    std::string symmetry = "random"; // standard | random | hyperbolic
    std::size_t max_relation_entries = TensorOptions{}.max_relation_entries;
    int jobs = 0; // 0: hardware concurrency

    double tolerance() const { return tol.value_or(default_tol); }

    void validate() const
    {
        if (samples < 1)
            throw UsageError("samples must be at least 1");
        if (tol && !(*tol > 0))
            throw UsageError("tol must be positive");
        if (p < 0 || q < 0 || p + q < 1)
            throw UsageError("signature must satisfy p, q >= 0 and p + q >= 1");
        if (p + q > max_dimension)
            throw UsageError("p + q must not exceed " + std::to_string(max_dimension));
        if (rank < 1)
            throw UsageError("rank must be at least 1");
        if (blocks.empty())
            throw UsageError("blocks must be non-empty");
        for (int b : blocks)
            if (b < 1)
                throw UsageError("block sizes must be positive");
        if (symmetry != "standard" && symmetry != "random" && symmetry != "hyperbolic")
            throw UsageError("symmetry must be standard, random or hyperbolic");
        if (symmetry == "hyperbolic" && (p < 1 || q < 1))
            throw UsageError("a hyperbolic symmetry needs p >= 1 and q >= 1");
        if (scenario == Scenario::spinor && (p + q) % 2)
            throw UsageError("the spinor scenario needs p + q even");
        if (jobs < 0)
            throw UsageError("jobs must be non-negative");
    }
};

inline std::optional<std::uint64_t> seed_from_env()
{
    const char* v = std::getenv(seed_env);
    if (!v || !*v)
        return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long s = std::stoull(v, &used);
        if (used != std::string(v).size())
            throw std::invalid_argument(v);
        return std::uint64_t(s);
    } catch (const std::exception&) {
        throw UsageError(std::string(seed_env) + " is not an unsigned integer");
    }
}

// Fields of a JSON config file; unknown keys are rejected.
inline void apply_json(CheckConfig& c, const nlohmann::json& j)
{
    if (!j.is_object())
        throw UsageError("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "seed")
                c.seed = value.get<std::uint64_t>();
            else if (key == "samples")
                c.samples = value.get<int>();
            else if (key == "tol")
                c.tol = value.get<double>();
            else if (key == "scenario")
                c.scenario = parse_scenario(value.get<std::string>());
            else if (key == "p")
                c.p = value.get<int>();
            else if (key == "q")
                c.q = value.get<int>();
            else if (key == "blocks")
                c.blocks = value.get<std::vector<int>>();
            else if (key == "rank")
                c.rank = value.get<int>();
            else if (key == "symmetry")
                c.symmetry = value.get<std::string>();
            else if (key == "max_relation_entries")
                c.max_relation_entries = value.get<std::size_t>();
            else if (key == "jobs")
                c.jobs = value.get<int>();
            else
                throw UsageError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

struct Task {
    std::string name;
    std::function<Report()> run;
    std::vector<std::string> required; // records the coverage manifest expects
};

namespace detail {

inline std::string sig(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

inline std::vector<int> alternating_signs(int n)
{
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
        s.push_back(i % 2 ? -1 : 1);
    return s;
}

// A corrupted structure must violate its targeted record; any other
// violation outside the mathematically implied ones is reported.
inline Report negative_control(const Report& corrupted, const std::string& targeted,
                               const std::vector<std::string>& implied = {})
{
    Report rep("negative-control");
    const CheckRecord* t = corrupted.find(targeted);
    if (!t) {
        rep.add_flag("targeted record present: " + targeted, "negative control", false);
        return rep;
    }
    rep.add_negative("targeted check fails: " + targeted, t->anchor, t->max_violation, t->tolerance,
                     "must fail on the corrupted structure");
    std::string unrelated;
    int count = 0;
    for (const auto& r : corrupted.records()) {
        if (!r.violated() || r.name == targeted)
            continue;
        if (std::find(implied.begin(), implied.end(), r.name) != implied.end())
            continue;
        ++count;
        unrelated += (unrelated.empty() ? "" : "; ") + r.name;
    }
    std::string collateral;
    for (const auto& r : corrupted.records())
        if (r.violated() && r.name != targeted)
            collateral += (collateral.empty() ? "" : "; ") + r.name;
    rep.add_count("no unrelated check fails", "negative control", double(count),
                  count ? "unrelated: " + unrelated
                        : (collateral.empty() ? "only the targeted check fails"
                                              : "implied by the corruption: " + collateral));
    return rep;
}

inline FundamentalSymmetry chosen_symmetry(const KreinModule& M, const std::string& kind, int p, Rng& rng)
{
    if (kind == "standard")
        return standard_symmetry(M);
    if (kind == "random")
        return random_symmetry(M, rng);
    // hyperbolic rotation in the plane of the first timelike and first
    // spacelike axes
    const double t = 0.3;
    Mat w = identity(M.ref_dim());
    w(0, 0) = w(p, p) = std::cosh(t);
    w(0, p) = w(p, 0) = std::sinh(t);
    return {w * standard_symmetry(M).op * w.inverse()};
}

} // namespace detail

// ----------------------------------------------------------------- linalg

inline void linalg_tasks(std::vector<Task>& out, const CheckConfig& c)
{
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    const std::string name = "linear algebra primitives";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       Worst adj_norm, cstar, involution, killed, section;
                       for (int i = 0; i < n; ++i) {
                           const auto rows = Eigen::Index(1 + i % 7), cols = Eigen::Index(1 + (i / 7) % 7);
                           const Mat m = rng.gaussian(rows, cols);
                           const double nm = operator_norm(m);
                           adj_norm.update(std::abs(operator_norm(m.adjoint()) - nm) / nm);
                           cstar.update(std::abs(operator_norm(Mat(m.adjoint() * m)) - nm * nm) / (nm * nm));
                           involution.update(m.adjoint().adjoint() == m ? 0.0 : 1.0);
                           // relations: a random span of dimension < ambient
                           const Eigen::Index amb = 2 + i % 6;
                           const Mat rel = rng.gaussian(amb, 1 + i % (amb - 1)) * rng.gaussian(1 + i % (amb - 1), 3);
                           const Quotient qs = quotient_space(amb, rel);
                           for (Eigen::Index k = 0; k < rel.cols(); ++k)
                               killed.update((qs.projector * rel.col(k)).norm() / std::max(1e-300, rel.col(k).norm()));
                           section.update((qs.projector * qs.section - identity(qs.dim)).norm());
                       }
                       rep.add("operator norm invariant under adjoint", "concrete C*-norm", adj_norm.value(), 1e-10);
                       rep.add("operator norm C*-identity", "concrete C*-norm", cstar.value(), tol);
                       rep.add("hermitian adjoint involutive (bit-exact)", "concrete C*-norm", involution.value(), 0.0);
                       rep.add("quotient projector kills relations", "balanced quotient", killed.value(), tol);
                       rep.add("quotient projector inverts the section", "balanced quotient", section.value(), 1e-10);
                       const Vec u = rng.gaussian_vector(6), v = rng.gaussian_vector(6);
                       rep.add_count("rank of an outer product is 1", "numerical rank",
                                     double(std::abs(numerical_rank(Mat(u * v.adjoint())) - 1)));
                       return rep;
                   },
                   {"operator norm invariant under adjoint", "operator norm C*-identity",
                    "hermitian adjoint involutive (bit-exact)", "quotient projector kills relations"}});
}

// ---------------------------------------------------------------- algebra

inline void algebra_tasks(std::vector<Task>& out, const CheckConfig& c, int p, int q)
{
    const std::string s = detail::sig(p, q);
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;

    std::string name = "krein-algebra " + s + " B(C^{p,q}) axioms";
    out.push_back({name,
                   [=] { return check_krein_cstar_axioms(KreinAlgebra::full(p, q), n, derive_seed(seed, name), tol); },
                   {"eta involutive", "star involutive", "alpha involutive", "alpha commutes with star",
                    "alpha of star is the hilbert adjoint", "C*-identity", "norm submultiplicative",
                    "even/odd reconstruction", "even/odd grading of products"}});

    name = "krein-algebra " + s + " block algebra";
    const std::vector<int> blocks = c.blocks;
    out.push_back({name,
                   [=] {
                       Report rep;
                       const BlockAlgebra b(blocks);
                       const KreinAlgebra plain = KreinAlgebra::c_star(b);
                       rep.append(check_krein_cstar_axioms(plain, n, derive_seed(seed, name + "/plain"), tol),
                                  "C*: ");
                       Rng rng(derive_seed(seed, name));
                       Worst trivial;
                       for (int i = 0; i < n; ++i) {
                           const Mat a = plain.random(rng);
                           trivial.update((plain.alpha(a) - a).norm());
                       }
                       rep.add("C*: alpha is the identity", "Krein C*-algebra definition", trivial.value(), 0.0);
                       Mat eta = Mat::Zero(b.ref_dim(), b.ref_dim());
                       for (int i = 0; i < b.ref_dim(); ++i)
                           eta(i, i) = i % 2 ? -1.0 : 1.0;
                       rep.append(check_krein_cstar_axioms(KreinAlgebra::on_blocks(b, eta), n,
                                                           derive_seed(seed, name + "/krein"), tol),
                                  "Krein blocks: ");
                       return rep;
                   },
                   {"C*: C*-identity", "C*: alpha is the identity", "Krein blocks: C*-identity"}});

    name = "krein-algebra " + s + " non-diagonal eta";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const Mat w = rng.gaussian(p + q, p + q).householderQr().householderQ();
                       const Mat eta = w * KreinAlgebra::standard_eta(p, q) * w.adjoint();
                       const CanonicalForm cf = canonicalize(eta);
                       rep.add_count("canonical signature", "Krein C*-algebra definition",
                                     double(std::abs(cf.p - p) + std::abs(cf.q - q)),
                                     "signature " + detail::sig(cf.p, cf.q));
                       rep.add("canonical change of basis diagonalizes eta", "Krein C*-algebra definition",
                               (cf.unitary.adjoint() * eta * cf.unitary - KreinAlgebra::standard_eta(cf.p, cf.q))
                                   .norm(),
                               1e-10);
                       rep.append(check_krein_cstar_axioms(KreinAlgebra::full(eta), n, rng.next_seed(), tol),
                                  "rotated eta: ");
                       return rep;
                   },
                   {"canonical signature", "rotated eta: C*-identity"}});

    name = "krein-algebra " + s + " Krein *-homomorphisms";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinAlgebra A = KreinAlgebra::full(p, q);
                       rep.append(check_krein_star_hom([](const Mat& a) { return a; }, A, A, n, rng.next_seed(), tol),
                                  "identity: ");
                       const KreinModule K = KreinModule::krein_space(p, q);
                       const Mat u = random_krein_unitary(K, rng);
                       const Mat uinv = u.inverse();
                       const KreinAlgebra B =
                           KreinAlgebra::with_form(A.basis(), A.form(), Mat(u * A.symmetry() * uinv));
                       rep.append(check_krein_star_hom([&](const Mat& a) { return Mat(u * a * uinv); }, A, B, n,
                                                       rng.next_seed(), tol),
                                  "Krein-unitary conjugation: ");
                       rep.append(check_krein_cstar_axioms(B, n, rng.next_seed(), tol), "conjugated symmetry: ");
                       // norms of the two symmetries on the same algebra
                       const auto [lo, hi] = norm_equivalence_constants(A, B);
                       Worst outside;
                       for (int i = 0; i < n; ++i) {
                           const Mat a = A.random(rng);
                           const double ratio = B.norm(a) / A.norm(a);
                           outside.update(std::max({0.0, lo - ratio, ratio - hi}) / hi);
                       }
                       std::ostringstream note;
                       note << "c=" << lo << " C=" << hi;
                       rep.add("norms of two symmetries equivalent", "norm remark", outside.value(), tol, note.str());
                       return rep;
                   },
                   {"identity: homomorphism intertwines alpha and beta",
                    "Krein-unitary conjugation: homomorphism preserves star",
                    "Krein-unitary conjugation: homomorphism intertwines alpha and beta",
                    "norms of two symmetries equivalent"}});

    name = "krein-algebra " + s + " negative: broken eta^2";
    out.push_back({name,
                   [=] {
                       Mat eta = KreinAlgebra::standard_eta(p, q);
                       eta(eta.rows() - 1, eta.cols() - 1) *= 2.0;
                       const Report corrupted =
                           check_krein_cstar_axioms(KreinAlgebra::full(eta), n, derive_seed(seed, name), tol);
                       return detail::negative_control(
                           corrupted, "eta involutive",
                           {"star involutive", "star antimultiplicative", "alpha involutive", "alpha multiplicative",
                            "alpha of star is the hilbert adjoint", "C*-identity", "even/odd parity under alpha",
                            "even/odd grading of products"});
                   },
                   {"targeted check fails: eta involutive", "no unrelated check fails"}});

    name = "krein-algebra " + s + " negative: non-intertwining homomorphism";
    out.push_back({name,
                   [=] {
                       Rng rng(derive_seed(seed, name));
                       const KreinAlgebra A = KreinAlgebra::full(p, q);
                       const KreinModule K = KreinModule::krein_space(p, q);
                       Mat u = random_krein_unitary(K, rng, 1.0);
                       const Mat uinv = u.inverse();
                       // target keeps beta = alpha, so only the intertwining breaks
                       const Report corrupted = check_krein_star_hom([&](const Mat& a) { return Mat(u * a * uinv); },
                                                                     A, A, n, rng.next_seed(), tol);
                       return detail::negative_control(corrupted, "homomorphism intertwines alpha and beta");
                   },
                   {"targeted check fails: homomorphism intertwines alpha and beta", "no unrelated check fails"}});
}

// ----------------------------------------------------------------- module

inline void module_tasks(std::vector<Task>& out, const CheckConfig& c, int p, int q)
{
    const std::string s = detail::sig(p, q);
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    const std::vector<std::string> symmetry_records = {
        "symmetry additive",     "symmetry base-linear", "symmetry involutive",
        "symmetry self-adjoint", "symmetry isometric",   "symmetry positivity",
        "decomposition orthogonal", "decomposition semidefinite parts", "hilbertified gram positive definite",
        "hilbertification relation <x,y> = <Jx,y>_J", "krein adjoint dictionary T* = J T^J J",
        "krein adjoint involutive", "krein adjoint antimultiplicative"};

    auto symmetry_sweep = [n, tol](const KreinModule& M, std::uint64_t sd, int count) {
        Report rep;
        Rng rng(sd);
        const FundamentalSymmetry Js = standard_symmetry(M);
        rep.absorb(check_symmetry(M, Js, n, rng.next_seed(), tol));
        rep.absorb(check_decomposition(M, Js, n, rng.next_seed(), tol));
        for (int i = 0; i < count; ++i) {
            const FundamentalSymmetry J = random_symmetry(M, rng);
            rep.absorb(check_symmetry(M, J, n, rng.next_seed(), tol));
            rep.absorb(check_decomposition(M, J, n, rng.next_seed(), tol));
        }
        return rep;
    };

    std::string name = "module " + s + " C^{p,q} standard and 20 random symmetries";
    out.push_back({name, [=] { return symmetry_sweep(KreinModule::krein_space(p, q), derive_seed(seed, name), 20); },
                   symmetry_records});

    name = "module rank-2 over M_2 standard and 20 random symmetries";
    out.push_back({name,
                   [=] {
                       return symmetry_sweep(KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1}),
                                             derive_seed(seed, name), 20);
                   },
                   symmetry_records});

    std::string blocks_label = "{";
    for (std::size_t i = 0; i < c.blocks.size(); ++i)
        blocks_label += (i ? "," : "") + std::to_string(c.blocks[i]);
    blocks_label += "}";
    name = "module rank-" + std::to_string(c.rank) + " over blocks " + blocks_label + " with " + c.symmetry +
           " symmetry";
    const std::vector<int> blocks = c.blocks;
    const int rank = c.rank;
    const std::string kind = c.symmetry;
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinModule M =
                           KreinModule::diagonal(BlockAlgebra(blocks), detail::alternating_signs(rank));
                       const FundamentalSymmetry J =
                           kind == "hyperbolic" ? random_symmetry(M, rng) : detail::chosen_symmetry(M, kind, 0, rng);
                       rep.append(check_symmetry(M, J, n, rng.next_seed(), tol));
                       rep.append(check_decomposition(M, J, n, rng.next_seed(), tol));
                       return rep;
                   },
                   {"symmetry positivity", "decomposition orthogonal"}});

    name = "module " + s + " chosen symmetry (" + c.symmetry + ")";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinModule M = KreinModule::krein_space(p, q);
                       const FundamentalSymmetry J = detail::chosen_symmetry(M, kind, p, rng);
                       rep.append(check_symmetry(M, J, n, rng.next_seed(), tol));
                       rep.append(check_decomposition(M, J, n, rng.next_seed(), tol));
                       rep.append(check_transition(M, standard_symmetry(M), J, n, rng.next_seed(), tol));
                       return rep;
                   },
                   {"symmetry positivity", "transition maps bijective", "intertwiner U* U = 1"}});

    name = "module " + s + " transitions for 50 random pairs";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinModule M = KreinModule::krein_space(p, q);
                       for (int i = 0; i < 50; ++i) {
                           const FundamentalSymmetry J1 = random_symmetry(M, rng), J2 = random_symmetry(M, rng);
                           rep.absorb(check_transition(M, J1, J2, std::max(1, n / 10), rng.next_seed(), tol));
                       }
                       const KreinModule M2 = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
                       for (int i = 0; i < 10; ++i) {
                           const FundamentalSymmetry J1 = random_symmetry(M2, rng), J2 = random_symmetry(M2, rng);
                           rep.absorb(check_transition(M2, J1, J2, std::max(1, n / 10), rng.next_seed(), tol),
                                      "over M_2: ");
                       }
                       return rep;
                   },
                   {"transition maps bijective", "transition adjoint pairing", "transition injectivity inequality",
                    "norm equivalence constants ordered", "intertwiner U J1 = J2 U", "intertwiner U* U = 1",
                    "intertwiner U J1 U^-1 = J2", "over M_2: intertwiner U* U = 1"}});

    name = "module hyperbolic pair t = 0.3 on C^{1,1}";
    out.push_back({name,
                   [=] {
                       Report rep;
                       const double t = 0.3;
                       const KreinModule M = KreinModule::krein_space(1, 1);
                       const FundamentalSymmetry J1 = standard_symmetry(M), J2 = hyperbolic_symmetry(t);
                       const auto [lo, hi] = norm_equivalence_constants(M, J1, J2);
                       std::ostringstream note;
                       note << std::setprecision(12) << "c=" << lo << " C=" << hi;
                       rep.add("norm equivalence constants (e^-t, e^t)", "strong topology theorem",
                               std::max(std::abs(lo - std::exp(-t)), std::abs(hi - std::exp(t))), 1e-6, note.str());
                       const auto dec = fundamental_decomposition(M, J2);
                       rep.add_count("rotated decomposition has two lines", "fundamental symmetry proposition",
                                     double(std::abs(dec.plus.dim() - 1) + std::abs(dec.minus.dim() - 1)));
                       rep.append(check_decomposition(M, J2, n, derive_seed(seed, name), tol));
                       rep.append(check_transition(M, J1, J2, n, derive_seed(seed, name + "/t"), tol));
                       const double defect = transition_sum_unitarity_defect(M, J1, J2);
                       std::ostringstream lit;
                       lit << "|V*V - 1| = " << defect << " for V = T+ (+) T-; the intertwiner is its unitary part";
                       rep.add_flag("literal transition sum is not Krein-unitary", "unitary equivalence of symmetries",
                                    defect > 1e-3, lit.str());
                       return rep;
                   },
                   {"norm equivalence constants (e^-t, e^t)", "hilbertified gram positive definite",
                    "decomposition semidefinite parts", "transition maps bijective", "intertwiner U* U = 1"}});

    name = "module adjointable operators as a Krein C*-algebra";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinModule K = KreinModule::krein_space(1, 1);
                       const KreinAlgebra BK = adjointable_algebra(K, standard_symmetry(K));
                       rep.add_flag("B(C^{1,1}) reproduces the full algebra with eta = diag(1,-1)", "B(K) theorem",
                                    same_algebra(BK, KreinAlgebra::full(1, 1)));
                       rep.append(check_krein_cstar_axioms(BK, n, rng.next_seed(), tol), "B(C^{1,1}): ");
                       const KreinModule M = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
                       rep.append(
                           check_krein_cstar_axioms(adjointable_algebra(M, random_symmetry(M, rng)), n,
                                                    rng.next_seed(), tol),
                           "rank-2 over M_2: ");
                       return rep;
                   },
                   {"B(C^{1,1}): C*-identity", "rank-2 over M_2: C*-identity", "rank-2 over M_2: star involutive"}});

    name = "module " + s + " antimodule";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinModule M = KreinModule::krein_space(p, q);
                       const KreinModule anti = M.antimodule();
                       rep.add("antimodule gram negated", "antimodule", (anti.gram() + M.gram()).norm(), 0.0);
                       rep.add("antimodule involutive", "antimodule", (anti.antimodule().gram() - M.gram()).norm(),
                               0.0);
                       Worst inner;
                       for (int i = 0; i < n; ++i) {
                           const Mat x = M.random_vector(rng), y = M.random_vector(rng);
                           inner.update((anti.inner(x, y) + M.inner(x, y)).norm());
                       }
                       rep.add("antimodule product is the negated product", "antimodule", inner.value(), 1e-12);
                       return rep;
                   },
                   {"antimodule involutive", "antimodule product is the negated product"}});

    name = "module negative: scaled Tminus";
    out.push_back({name,
                   [=] {
                       const KreinModule M = KreinModule::krein_space(1, 1);
                       const FundamentalSymmetry J1 = standard_symmetry(M), J2 = hyperbolic_symmetry(0.3);
                       const Mat U = intertwiner(M, J1, J2);
                       const Mat I = identity(2);
                       const Mat bad = U * 0.5 * (I + J1.op) + 2.0 * U * 0.5 * (I - J1.op);
                       return detail::negative_control(check_intertwiner(M, J1, J2, bad, tol), "intertwiner U* U = 1");
                   },
                   {"targeted check fails: intertwiner U* U = 1", "no unrelated check fails"}});

    name = "module negative: degenerate gram";
    out.push_back({name,
                   [=] {
                       const BlockAlgebra base;
                       Mat gram = Mat::Zero(2, 2);
                       gram(0, 0) = 1.0;
                       const auto d = KreinModule::gram_defects(base, 2, gram);
                       Report corrupted;
                       corrupted.add("gram entries in the base algebra", "module axioms", d.membership, 1e-12);
                       corrupted.add("gram hermitian", "module axioms", d.hermitian, 1e-10);
                       corrupted.add_count("gram non-degenerate", "module axioms", double(d.rank_deficit));
                       Report rep = detail::negative_control(corrupted, "gram non-degenerate");
                       bool rejected = false;
                       try {
                           KreinModule(base, 2, gram);
                       } catch (const std::invalid_argument&) {
                           rejected = true;
                       }
                       rep.add_flag("degenerate gram rejected at construction", "module axioms", rejected);
                       return rep;
                   },
                   {"targeted check fails: gram non-degenerate", "degenerate gram rejected at construction"}});
}

// ------------------------------------------------------ module over Krein

inline void module_over_krein_tasks(std::vector<Task>& out, const CheckConfig& c, int p, int q)
{
    const std::string s = detail::sig(p, q);
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    const std::vector<std::string> bimodule_records = {
        "right twisting J(x.b) = J(x).alpha(b)", "right alpha(<x,y>) = <Jx,Jy>", "right auxiliary product positive",
        "right auxiliary product non-degenerate", "right even part of the product lies in A+",
        "right odd part of the product lies in A-", "left twisting J(x.b) = J(x).alpha(b)",
        "actions commute (a.x).b = a.(x.b)", "imprimitivity _A<x,y>z = x<y,z>_B",
        "imprimitivity two-variable form _A<x,y>x = x<y,x>_B", "left and right Hilbert norms coincide"};

    std::string name = "module-over-krein " + s + " self-module of B(C^{p,q})";
    out.push_back({name,
                   [=] { return check_bimodule(self_module(KreinAlgebra::full(p, q)), n, derive_seed(seed, name), tol); },
                   bimodule_records});

    name = "module-over-krein self-module of M_2 (alpha trivial)";
    out.push_back({name,
                   [=] {
                       return check_bimodule(self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2))), n,
                                             derive_seed(seed, name), tol);
                   },
                   bimodule_records});

    const std::vector<std::string> dictionary_records = {
        "adjoint solvable", "dictionary T^{dagger alpha} = J T* J", "dictionary T* = J T^{dagger alpha} J",
        "alpha_J(T*) = alpha_J(T)*", "alpha_J involutive", "alpha_J C*-identity"};
    name = "module-over-krein " + s + " adjoint dictionary on the self-module";
    out.push_back({name,
                   [=] {
                       return check_adjoint_dictionary(self_module(KreinAlgebra::full(p, q)), n,
                                                       derive_seed(seed, name), tol);
                   },
                   dictionary_records});

    name = "module-over-krein adjoint dictionary on a rank-2 module over M_2";
    out.push_back({name,
                   [=] {
                       Rng rng(derive_seed(seed, name));
                       const KreinModule K = KreinModule::diagonal(BlockAlgebra::matrices(2), {1, -1});
                       const Bimodule M = as_right_module(K, random_symmetry(K, rng));
                       Report rep = check_right_module(M, n, rng.next_seed(), tol);
                       rep.append(check_adjoint_dictionary(M, n, rng.next_seed(), tol));
                       return rep;
                   },
                   dictionary_records});

    name = "module-over-krein operator bimodule C^{1,0} -> C^{1,1}";
    out.push_back({name,
                   [=] {
                       const KreinModule K1 = KreinModule::krein_space(1, 0), K2 = KreinModule::krein_space(1, 1);
                       const Bimodule M =
                           operator_bimodule(K1, standard_symmetry(K1), K2, standard_symmetry(K2));
                       Report rep;
                       rep.add_count("carrier dimension 2", "operator bimodule example", double(std::abs(M.dim - 2)));
                       rep.append(check_bimodule(M, n, derive_seed(seed, name), tol));
                       return rep;
                   },
                   {"carrier dimension 2", "imprimitivity _A<x,y>z = x<y,z>_B", "left action adjointable"}});

    name = "module-over-krein operator bimodule C^{1,1} -> C^{1,1}";
    out.push_back({name,
                   [=] {
                       const KreinModule K = KreinModule::krein_space(1, 1);
                       const Bimodule M = operator_bimodule(K, standard_symmetry(K), K, standard_symmetry(K));
                       Report rep = check_bimodule(M, n, derive_seed(seed, name), tol);
                       const Bimodule self = self_module(KreinAlgebra::full(1, 1));
                       rep.append(check_morphism({M, self, identity(M.dim)}, "operator bimodule example", tol),
                                  "equals the self-module: ");
                       return rep;
                   },
                   {"imprimitivity _A<x,y>z = x<y,z>_B", "equals the self-module: isomorphism intertwines the symmetries"}});

    name = "module-over-krein " + s + " rank-one operators";
    out.push_back({name,
                   [=] {
                       Report rep;
                       Rng rng(derive_seed(seed, name));
                       const KreinAlgebra A = KreinAlgebra::full(p, q);
                       const Bimodule M = self_module(A);
                       Worst adj, diag, lin, left, rank_excess;
                       for (int i = 0; i < n; ++i) {
                           const Vec x = M.random_vector(rng), x2 = M.random_vector(rng), y = M.random_vector(rng);
                           const Mat th = rank_one(M, x, y);
                           const double sc = x.norm() * y.norm();
                           adj.update(krein_adjoint_over_krein(M, th).residual);
                           diag.update((rank_one(M, x, x) * x - M.R(M.right_inner(x, x)) * x).norm() /
                                       std::pow(x.norm(), 3));
                           lin.update((rank_one(M, x + x2, y) - th - rank_one(M, x2, y)).norm() / sc);
                           left.update((th - M.L(M.left_inner(x, y))).norm() / sc);
                           // as an operator on the carrier A, Theta is right multiplication
                           // by a rank-one-over-A element: its scalar rank is at most ref_dim
                           rank_excess.update(std::max<double>(0.0, double(numerical_rank(th) - A.dim())));
                       }
                       rep.add("Theta adjointable", "rank-one operators", adj.value(), default_rank_tol);
                       rep.add("Theta_{x,x}(x) = x<x,x>", "rank-one operators", diag.value(), tol);
                       rep.add("Theta linear in x", "rank-one operators", lin.value(), tol);
                       rep.add("Theta_{x,y} = left action of _A<x,y>", "rank-one operators", left.value(), tol);
                       rep.add_count("Theta rank bounded", "rank-one operators", rank_excess.value());
                       return rep;
                   },
                   {"Theta adjointable", "Theta_{x,y} = left action of _A<x,y>"}});

    name = "module-over-krein adjointability of J";
    out.push_back({name,
                   [=] {
                       Report rep;
                       const Bimodule krein = self_module(KreinAlgebra::full(1, 1));
                       const AdjointSolve k = krein_adjoint_over_krein(krein, krein.J);
                       std::ostringstream note;
                       note << "relative residual " << k.residual;
                       rep.add_flag("J not adjointable when alpha is not the identity", "adjointability proposition",
                                    !k.adjointable, note.str());
                       const Bimodule plain = self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2)));
                       rep.add_flag("J adjointable when alpha is the identity", "adjointability proposition",
                                    krein_adjoint_over_krein(plain, plain.J).adjointable);
                       return rep;
                   },
                   {"J not adjointable when alpha is not the identity"}});

    name = "module-over-krein auxiliary product examples";
    out.push_back({name,
                   [=] {
                       Report rep;
                       const KreinAlgebra A = KreinAlgebra::full(1, 1);
                       const Bimodule M = self_module(A);
                       const Vec one = A.coords(A.one());
                       rep.add("<1, J 1> = 1", "auxiliary inner products", (auxiliary_product(M, one, one) - A.one()).norm(),
                               1e-12);
                       Mat e = Mat::Zero(2, 2);
                       e(1, 1) = 1.0;
                       const Mat v = auxiliary_product(M, A.coords(e), A.coords(e));
                       rep.add("<e, J e> positive for the negative idempotent", "auxiliary inner products",
                               A.positivity_defect(v) + (v.norm() > 0.5 ? 0.0 : 1.0), 1e-12);
                       return rep;
                   },
                   {"<1, J 1> = 1"}});

    name = "module-over-krein negative: degenerate auxiliary product";
    out.push_back({name,
                   [=] {
                       Bimodule M;
                       M.dim = 2;
                       Mat f = Mat::Zero(2, 2);
                       f(0, 0) = 1.0;
                       M.right_form = {f};
                       M.right_action = {identity(2)};
                       M.left_action = {identity(2)};
                       M.J = identity(2);
                       return detail::negative_control(check_right_module(M, n, derive_seed(seed, name), tol),
                                                       "right auxiliary product non-degenerate");
                   },
                   {"targeted check fails: right auxiliary product non-degenerate", "no unrelated check fails"}});
}

// --------------------------------------------------------------- clifford

inline void clifford_tasks(std::vector<Task>& out, const CheckConfig& c, int p, int q)
{
    const std::string s = detail::sig(p, q);
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    const PseudoEuclidean sp(p, q);

    std::string name = "clifford " + s + " Grassmann and Clifford algebras";
    out.push_back({name, [=] { return check_clifford(sp, n, derive_seed(seed, name), tol); },
                   {"generator anticommutators {c(e_i),c(e_j)} = 2 g_ij", "Clifford product associative",
                    "Gram determinant formula on decomposables", "wedge antisymmetric", "star is conjugate reversal",
                    "second quantized J involutive", "second quantized auxiliary form positive definite",
                    "representation faithful (rank 2^n)", "a -> c(a)(1) bijective", "alpha is the lift of J_M",
                    "Cl: C*-identity"}});

    name = "clifford " + s + " Grassmann algebra as a Clifford module";
    out.push_back({name,
                   [=] {
                       Report rep = check_correspondence(grassmann_module(sp), n, derive_seed(seed, name), tol);
                       const MultiVector one = MultiVector::scalar(sp, 1.0);
                       rep.add("<1,1> = 1", "Grassmann and Clifford example", std::abs(grassmann_inner(one, one) - 1.0),
                               0.0);
                       if (sp.n() >= 2) {
                           const MultiVector e01 =
                               wedge(MultiVector::generator(sp, 0), MultiVector::generator(sp, 1));
                           const cplx v = grassmann_inner(e01, e01);
                           std::ostringstream note;
                           note << "value " << v.real();
                           rep.add("<e0^e1, e0^e1> = g_00 g_11", "Grassmann and Clifford example",
                                   std::abs(v - sp.metric(0) * sp.metric(1)), 1e-12, note.str());
                       }
                       return rep;
                   },
                   {"left action adjointable", "adjoint of left action is action of star", "<1,1> = 1"}});

    name = "clifford " + s + " negative: scaled generator";
    out.push_back({name,
                   [=] {
                       auto gens = clifford_generators(sp);
                       gens[0] *= 2.0;
                       Report corrupted;
                       corrupted.add("generator anticommutators {c(e_i),c(e_j)} = 2 g_ij",
                                     "Grassmann and Clifford example", anticommutator_defect(gens, sp), 1e-12);
                       return detail::negative_control(corrupted,
                                                       "generator anticommutators {c(e_i),c(e_j)} = 2 g_ij");
                   },
                   {"targeted check fails: generator anticommutators {c(e_i),c(e_j)} = 2 g_ij"}});
}

// ----------------------------------------------------------------- spinor

inline void spinor_tasks(std::vector<Task>& out, const CheckConfig& c, int p, int q)
{
    const std::string s = detail::sig(p, q);
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    const PseudoEuclidean sp(p, q);

    std::string name = "spinor " + s + " gamma matrices and spinor module";
    out.push_back({name, [=] { return check_spinor(sp, n, derive_seed(seed, name), tol); },
                   {"gamma anticommutators {g_i,g_j} = 2 g_ij", "A hermitian", "A involutive", "spinor signature",
                    "conjugation by A lifts J_M", "S: left twisting J(x.b) = J(x).alpha(b)",
                    "S: right auxiliary product positive", "fullness left rank 4^m",
                    "dim S * dim S* = dim Lambda"}});

    name = "spinor " + s + " Morita-Krein certification";
    out.push_back({name, [=] { return morita_krein_check(spinor_module(sp), n, derive_seed(seed, name), tol); },
                   {"imprimitivity _A<x,y>z = x<y,z>_B", "left fullness", "right fullness"}});

    name = "spinor " + s + " factorization S (x) S* = Lambda";
    out.push_back({name, [=] { return spinor_factorization_check(sp, n, derive_seed(seed, name), tol); },
                   {"dimension 2^m * 2^m = 2^n", "factorization map bijective", "intertwines left Clifford actions",
                    "intertwines right Clifford actions", "carries the tensor product to the Clifford product",
                    "gamma_S -> c(e_S): homomorphism intertwines alpha and beta"}});

    name = "spinor " + s + " unit laws and double contragredient";
    out.push_back({name,
                   [=] {
                       Report rep;
                       const Bimodule S = spinor_module(sp);
                       rep.append(check_morphism(right_unit(S), "weak category theorem", tol), "S (x) C = S: ");
                       rep.append(check_morphism(left_unit(S), "weak category theorem", tol), "Cl (x) S = S: ");
                       rep.append(check_morphism({S, contragredient(contragredient(S)), identity(S.dim)},
                                                 "contragredient", tol),
                                  "double contragredient: ");
                       return rep;
                   },
                   {"S (x) C = S: isomorphism preserves the right product (gram residual)",
                    "Cl (x) S = S: isomorphism preserves the right product (gram residual)",
                    "double contragredient: isomorphism intertwines left actions"}});

    name = "spinor negative: non-full sub-bimodule";
    out.push_back({name,
                   [=] {
                       return detail::negative_control(
                           morita_krein_check(non_full_sub_bimodule(), n, derive_seed(seed, name), tol),
                           "left fullness");
                   },
                   {"targeted check fails: left fullness", "no unrelated check fails"}});
}

// ----------------------------------------------------------------- tensor

inline void tensor_tasks(std::vector<Task>& out, const CheckConfig& c, int p, int q)
{
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    TensorOptions opt;
    opt.max_relation_entries = c.max_relation_entries;
    const std::vector<std::string> tensor_records = {
        "relations preserved and killed by the descended structure", "descended product matches <y1,<x1,x2>y2>",
        "descended product non-degenerate", "section independence of the descended structure",
        "eigenspaces of J match (M+N+ + M-N-) and (M+N- + M-N+)", "gamma(<u,v>) = <Ju,Jv> on the tensor product",
        "M(x)N: left action adjointable", "M(x)N: J(a.x.b) = alpha(a).J(x).beta(b)"};

    std::string name = "tensor M_2 (x)_{M_2} M_2";
    out.push_back({name,
                   [=] {
                       const Bimodule M = self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2)));
                       Report rep;
                       const TensorProduct T = internal_tensor(M, M, opt);
                       rep.add_count("quotient dimension 4", "internal tensor product theorem",
                                     double(std::abs(T.module.dim - 4)), "dimension " + std::to_string(T.module.dim));
                       rep.append(check_tensor(M, M, n, derive_seed(seed, name), tol, opt));
                       rep.append(check_morphism(right_unit(M, opt), "weak category theorem", tol),
                                  "isomorphic to the self-module: ");
                       return rep;
                   },
                   [&] {
                       auto r = tensor_records;
                       r.push_back("quotient dimension 4");
                       r.push_back("isomorphic to the self-module: isomorphism preserves the right product (gram "
                                   "residual)");
                       return r;
                   }()});

    name = "tensor C^{1,1} (x)_C C^{1,1}";
    out.push_back({name,
                   [=] {
                       const KreinModule K = KreinModule::krein_space(1, 1);
                       const Bimodule M = as_right_module(K, standard_symmetry(K));
                       Report rep;
                       const TensorProduct T = internal_tensor(M, M, opt);
                       const auto [pos, neg] = inertia(hermitian_part(T.module.J));
                       rep.add_count("dimension 4 and J of signature (2,2)", "internal tensor product theorem",
                                     double(std::abs(T.module.dim - 4) + std::abs(pos - 2) + std::abs(neg - 2)));
                       const DecompositionCheck d = tensor_decomposition(M, M, T);
                       rep.add_count("even and odd parts 2-dimensional", "tensor decomposition",
                                     double(std::abs(d.even_dim - 2) + std::abs(d.odd_dim - 2)));
                       rep.append(check_tensor(M, M, n, derive_seed(seed, name), tol, opt));
                       return rep;
                   },
                   [&] {
                       auto r = tensor_records;
                       r.push_back("dimension 4 and J of signature (2,2)");
                       r.push_back("even and odd parts 2-dimensional");
                       return r;
                   }()});

    name = "tensor self-module of B(C^{1,1}) with itself";
    out.push_back({name,
                   [=] {
                       const Bimodule M = self_module(KreinAlgebra::full(1, 1));
                       return check_tensor(M, M, n, derive_seed(seed, name), tol, opt);
                   },
                   tensor_records});

    name = "tensor unit laws";
    const std::string s = detail::sig(p, q);
    out.push_back({name,
                   [=] {
                       Report rep;
                       const Bimodule B = self_module(KreinAlgebra::full(1, 1));
                       rep.append(check_morphism(right_unit(B, opt), "weak category theorem", tol),
                                  "B(C^{1,1}) (x) id = B(C^{1,1}): ");
                       rep.append(check_morphism(left_unit(B, opt), "weak category theorem", tol),
                                  "id (x) B(C^{1,1}) = B(C^{1,1}): ");
                       const KreinModule K = KreinModule::krein_space(p, q);
                       const Bimodule M = as_right_module(K, standard_symmetry(K));
                       rep.append(check_morphism(right_unit(M, opt), "weak category theorem", tol),
                                  "C^" + s + " (x) C = C^" + s + ": ");
                       rep.append(check_morphism(left_unit(M, opt), "weak category theorem", tol),
                                  "C (x) C^" + s + " = C^" + s + ": ");
                       return rep;
                   },
                   {"B(C^{1,1}) (x) id = B(C^{1,1}): isomorphism preserves the right product (gram residual)",
                    "id (x) B(C^{1,1}) = B(C^{1,1}): isomorphism preserves the right product (gram residual)",
                    "B(C^{1,1}) (x) id = B(C^{1,1}): isomorphism bijective"}});

    name = "tensor associativity C^{1,1} (x) C^{1,0} (x) C^{0,1}";
    out.push_back({name,
                   [=] {
                       auto space = [](int a, int b) {
                           const KreinModule K = KreinModule::krein_space(a, b);
                           return as_right_module(K, standard_symmetry(K));
                       };
                       const CorrespondenceMorphism f = associativity_iso(space(1, 1), space(1, 0), space(0, 1), opt);
                       Report rep;
                       const auto [pos, neg] = inertia(f.source.right_form[0]);
                       rep.add_count("result 2-dimensional with signature (1,1)", "weak category theorem",
                                     double(std::abs(f.source.dim - 2) + std::abs(pos - 1) + std::abs(neg - 1)));
                       rep.append(check_morphism(f, "weak category theorem", tol));
                       return rep;
                   },
                   {"result 2-dimensional with signature (1,1)", "isomorphism bijective",
                    "isomorphism preserves the right product (gram residual)"}});

    name = "tensor associativity of M_2 self-modules";
    out.push_back({name,
                   [=] {
                       const Bimodule M = self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2)));
                       const CorrespondenceMorphism f = associativity_iso(M, M, M, opt);
                       Report rep;
                       rep.add_count("result 4-dimensional", "weak category theorem", double(std::abs(f.source.dim - 4)));
                       rep.append(check_morphism(f, "weak category theorem", tol));
                       const Bimodule B = self_module(KreinAlgebra::full(1, 1));
                       rep.append(check_morphism(associativity_iso(B, B, B, opt), "weak category theorem", tol),
                                  "B(C^{1,1}) chain: ");
                       return rep;
                   },
                   {"result 4-dimensional", "isomorphism preserves the right product (gram residual)",
                    "B(C^{1,1}) chain: isomorphism intertwines the symmetries"}});

    name = "tensor contragredient";
    out.push_back({name,
                   [=] {
                       Report rep;
                       const KreinAlgebra A = KreinAlgebra::full(1, 1);
                       const Bimodule id = identity_correspondence(A);
                       const Bimodule conj = contragredient(id);
                       rep.append(check_bimodule(conj, n, derive_seed(seed, name), tol), "contragredient: ");
                       const Mat star_map = operator_matrix(id.dim, [&](const Vec& v) {
                           return A.coords(A.star(A.element(v.conjugate())));
                       });
                       rep.append(check_morphism({conj, id, star_map}, "contragredient", tol),
                                  "contragredient of the identity: ");
                       Rng rng(derive_seed(seed, name + "/values"));
                       Worst values;
                       for (int i = 0; i < n; ++i) {
                           const Vec x = id.random_vector(rng), y = id.random_vector(rng);
                           values.update((conj.right_inner(x.conjugate(), y.conjugate()) - id.left_inner(x, y)).norm() /
                                         (x.norm() * y.norm()));
                       }
                       rep.add("<xbar,ybar> = _A<x,y>", "contragredient", values.value(), tol);
                       return rep;
                   },
                   {"contragredient: imprimitivity _A<x,y>z = x<y,z>_B",
                    "contragredient of the identity: isomorphism preserves the right product (gram residual)",
                    "<xbar,ybar> = _A<x,y>"}});

    name = "tensor budget and composability";
    out.push_back({name,
                   [=] {
                       Report rep;
                       const Bimodule M = self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2)));
                       TensorOptions tiny;
                       tiny.max_relation_entries = 10;
                       bool exceeded = false;
                       try {
                           internal_tensor(M, M, tiny);
                       } catch (const BudgetExceeded&) {
                           exceeded = true;
                       }
                       rep.add_flag("relation budget enforced", "internal tensor product theorem", exceeded);
                       bool mismatch = false;
                       try {
                           internal_tensor(M, self_module(KreinAlgebra::full(1, 1)), opt);
                       } catch (const std::invalid_argument&) {
                           mismatch = true;
                       }
                       rep.add_flag("base mismatch rejected", "internal tensor product theorem", mismatch);
                       return rep;
                   },
                   {"relation budget enforced", "base mismatch rejected"}});

    name = "tensor negative: unbalanced quotient";
    out.push_back({name,
                   [=] {
                       // the multiplication map on the plain tensor product, before
                       // dividing by the balancing relations
                       const Bimodule M = self_module(KreinAlgebra::c_star(BlockAlgebra::matrices(2)));
                       const CorrespondenceMorphism good = right_unit(M, opt);
                       Mat amb(M.dim, M.dim * M.dim);
                       for (Eigen::Index u = 0; u < M.dim; ++u)
                           for (Eigen::Index j = 0; j < M.dim; ++j)
                               amb.col(u * M.dim + j) = M.R(M.right.basis()[std::size_t(j)]) * unit_vector(M.dim, u);
                       Bimodule plain = good.source;
                       plain.dim = M.dim * M.dim;
                       return detail::negative_control(check_morphism({plain, M, amb}, "weak category theorem", tol),
                                                       "isomorphism bijective");
                   },
                   {"targeted check fails: isomorphism bijective", "no unrelated check fails"}});
}

// --------------------------------------------------------------- assembly

inline std::vector<Task> scenario_tasks(const CheckConfig& c)
{
    std::vector<Task> t;
    switch (c.scenario) {
    case Scenario::krein_algebra:
        algebra_tasks(t, c, c.p, c.q);
        break;
    case Scenario::module:
        module_tasks(t, c, c.p, c.q);
        break;
    case Scenario::module_over_krein:
        module_over_krein_tasks(t, c, c.p, c.q);
        break;
    case Scenario::clifford:
        clifford_tasks(t, c, c.p, c.q);
        break;
    case Scenario::spinor:
        spinor_tasks(t, c, c.p, c.q);
        break;
    case Scenario::tensor:
        tensor_tasks(t, c, c.p, c.q);
        break;
    case Scenario::full_gallery: {
        CheckConfig g = c;
        linalg_tasks(t, g);
        for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}})
            algebra_tasks(t, g, p, q);
        g.symmetry = "hyperbolic";
        module_tasks(t, g, 2, 2);
        module_over_krein_tasks(t, g, 2, 1);
        for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}})
            clifford_tasks(t, g, p, q);
        for (auto [p, q] : {std::pair{1, 1}, {2, 2}, {1, 3}})
            spinor_tasks(t, g, p, q);
        tensor_tasks(t, g, 1, 1);
        break;
    }
    }
    // the gallery repeats a few signature-independent tasks
    std::vector<Task> unique;
    for (auto& task : t)
        if (std::none_of(unique.begin(), unique.end(), [&](const Task& u) { return u.name == task.name; }))
            unique.push_back(std::move(task));
    return unique;
}

struct Demo {
    std::vector<Task> tasks;
    std::string narrative;
};

inline Demo demo_tasks(const std::string& name, const CheckConfig& c)
{
    const int n = c.samples;
    const double tol = c.tolerance();
    const std::uint64_t seed = c.seed;
    Demo d;
    if (name == "minkowski") {
        d.narrative =
            "Minkowski spinors.  The spinor space of R^{1,3} carries the Krein form given by the normalized\n"
            "timelike gamma matrix, of signature (2,2).  All operators on it form a Krein C*-algebra whose\n"
            "symmetry is conjugation by that form; its self-bimodule is checked as well.";
        const PseudoEuclidean sp(1, 3);
        d.tasks.push_back({"minkowski spinor form",
                           [=] {
                               const GammaRep g = gamma_rep(sp);
                               Report rep;
                               const auto [pos, neg] = spinor_signature(g);
                               rep.add_count("spinor signature", "spinor example",
                                             double(std::abs(pos - 2) + std::abs(neg - 2)),
                                             "signature " + detail::sig(pos, neg));
                               return rep;
                           },
                           {"spinor signature"}});
        d.tasks.push_back({"minkowski B(spinor space) axioms",
                           [=] {
                               const KreinAlgebra A = KreinAlgebra::full(gamma_rep(sp).A);
                               return check_krein_cstar_axioms(A, n, derive_seed(seed, "minkowski/axioms"), tol);
                           },
                           {"C*-identity", "alpha commutes with star"}});
        d.tasks.push_back({"minkowski self-bimodule",
                           [=] {
                               const KreinAlgebra A = KreinAlgebra::full(gamma_rep(sp).A);
                               return check_bimodule(self_module(A), std::min(n, 50),
                                                     derive_seed(seed, "minkowski/self"), tol);
                           },
                           {"imprimitivity _A<x,y>z = x<y,z>_B"}});
    } else if (name == "torus") {
        d.narrative =
            "Torus.  Sixteen sample points of a 2-torus carry a rank-2 module over the functions on them.\n"
            "At each point the fiber has signature (1,1) but the inner product is hyperbolically rotated by\n"
            "a point-dependent angle, so a fundamental symmetry must vary from point to point.";
        const int points = 16;
        auto build = [points] {
            const BlockAlgebra base = BlockAlgebra::functions(points);
            Mat gram = Mat::Zero(2 * points, 2 * points);
            for (int k = 0; k < points; ++k) {
                const double u = 2.0 * M_PI * (k % 4) / 4.0, v = 2.0 * M_PI * (k / 4) / 4.0;
                const double t = 0.4 * std::sin(u) + 0.3 * std::cos(v);
                Mat w(2, 2);
                w << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
                const Mat g = w * KreinAlgebra::standard_eta(1, 1) * w;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        gram(i * points + k, j * points + k) = g(i, j);
            }
            return KreinModule(base, 2, gram);
        };
        d.tasks.push_back({"torus fundamental symmetries",
                           [=] {
                               const KreinModule M = build();
                               Report rep;
                               Rng rng(derive_seed(seed, "torus/symmetries"));
                               const FundamentalSymmetry J = standard_symmetry(M);
                               rep.absorb(check_symmetry(M, J, n, rng.next_seed(), tol));
                               rep.absorb(check_decomposition(M, J, n, rng.next_seed(), tol));
                               for (int i = 0; i < 5; ++i) {
                                   const FundamentalSymmetry Jr = random_symmetry(M, rng);
                                   rep.absorb(check_symmetry(M, Jr, n, rng.next_seed(), tol));
                                   rep.absorb(check_decomposition(M, Jr, n, rng.next_seed(), tol));
                                   rep.absorb(check_transition(M, J, Jr, std::max(1, n / 5), rng.next_seed(), tol));
                               }
                               return rep;
                           },
                           {"symmetry positivity", "decomposition orthogonal", "intertwiner U* U = 1"}});
        d.tasks.push_back({"torus adjointable operators",
                           [=] {
                               const KreinModule M = build();
                               return check_krein_cstar_axioms(adjointable_algebra(M, standard_symmetry(M)), n,
                                                               derive_seed(seed, "torus/algebra"), tol);
                           },
                           {"C*-identity"}});
    } else if (name == "spinor-m4") {
        d.narrative =
            "Spinors on four-dimensional Minkowski space.  The spinor bimodule between the Clifford algebra\n"
            "and the complex numbers is a Morita-Krein equivalence, and tensoring it with its contragredient\n"
            "recovers the Grassmann algebra as a Clifford bimodule.";
        const PseudoEuclidean sp(1, 3);
        d.tasks.push_back({"spinor-m4 spinor module",
                           [=] { return check_spinor(sp, std::min(n, 50), derive_seed(seed, "m4/spinor"), tol); },
                           {"spinor signature"}});
        d.tasks.push_back({"spinor-m4 Morita-Krein certification",
                           [=] { return morita_krein_check(spinor_module(sp), n, derive_seed(seed, "m4/morita"), tol); },
                           {"left fullness", "imprimitivity _A<x,y>z = x<y,z>_B"}});
        d.tasks.push_back(
            {"spinor-m4 factorization",
             [=] { return spinor_factorization_check(sp, n, derive_seed(seed, "m4/factorization"), tol); },
             {"intertwines left Clifford actions"}});
    } else {
        throw UsageError("unknown demo '" + name + "'");
    }
    return d;
}

struct TaskOutcome {
    std::string name;
    Report report;
    double seconds = 0.0;
};

struct RunResult {
    std::vector<TaskOutcome> tasks;
    Report report; // merged, names prefixed by the task
    bool passed() const { return report.passed(); }
};

inline std::string record_key(const std::string& task, const std::string& record) { return task + " :: " + record; }

// Runs the tasks on `jobs` workers and merges in task order.  A budget
// overrun propagates; any other exception becomes a failing record.
inline RunResult run_tasks(const std::vector<Task>& tasks, const CheckConfig& c)
{
    std::vector<TaskOutcome> outcomes(tasks.size());
    std::vector<std::exception_ptr> budget(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            TaskOutcome& o = outcomes[i];
            o.name = tasks[i].name;
            try {
                o.report = tasks[i].run();
            } catch (const BudgetExceeded&) {
                budget[i] = std::current_exception();
            } catch (const std::exception& e) {
                o.report = Report();
                o.report.add_flag("task completed", "checker", false, e.what());
            }
            o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };
    unsigned jobs = c.jobs > 0 ? unsigned(c.jobs) : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, unsigned(std::max<std::size_t>(1, tasks.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (const auto& e : budget)
        if (e)
            std::rethrow_exception(e);

    RunResult r;
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        for (const auto& req : tasks[i].required)
            if (!outcomes[i].report.find(req))
                missing.push_back(record_key(tasks[i].name, req));
        r.report.append(outcomes[i].report, tasks[i].name + " :: ");
    }
    std::string note = missing.empty() ? "every required record present" : "missing: ";
    for (std::size_t i = 0; i < missing.size(); ++i)
        note += (i ? "; " : "") + missing[i];
    r.report.add_count(record_key("coverage manifest", "all required records present"), "checker",
                       double(missing.size()), note);
    if (c.tol)
        for (auto& rec : r.report.records())
            if (rec.kind == Kind::measure)
                rec.tolerance = *c.tol;
    r.tasks = std::move(outcomes);
    return r;
}

inline RunResult run(const CheckConfig& c)
{
    c.validate();
    return run_tasks(scenario_tasks(c), c);
}

// ---------------------------------------------------------------- reports

inline nlohmann::ordered_json to_json(const RunResult& r, const CheckConfig& c, const std::string& command,
                                      const std::string& target, bool timings = false)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = schema_version;
    j["tool"] = "krein-check";
    j["command"] = command;
    j["target"] = target;
    ordered_json cfg;
    cfg["seed"] = c.seed;
    cfg["samples"] = c.samples;
    cfg["tol"] = c.tol ? ordered_json(*c.tol) : ordered_json(nullptr);
    cfg["p"] = c.p;
    cfg["q"] = c.q;
    cfg["blocks"] = c.blocks;
    cfg["rank"] = c.rank;
    cfg["symmetry"] = c.symmetry;
    cfg["max_relation_entries"] = c.max_relation_entries;
    j["config"] = cfg;
    ordered_json env;
    env["seed"] = c.seed;
    env["default_tolerance"] = default_tol;
    env["rank_tolerance"] = default_rank_tol;
    env["grassmann_dimension"] = std::uint64_t(1) << (c.p + c.q);
    env["tasks"] = r.tasks.size();
    j["environment"] = env;
    std::size_t failed = 0;
    ordered_json recs = ordered_json::array();
    for (const auto& rec : r.report.records()) {
        ordered_json o;
        o["name"] = rec.name;
        o["anchor"] = rec.anchor;
        o["kind"] = rec.kind == Kind::measure ? "measure" : "count";
        o["expect"] = rec.expect == Expect::pass ? "pass" : "fail";
        o["max_violation"] = std::isfinite(rec.max_violation) ? ordered_json(rec.max_violation) : ordered_json(nullptr);
        o["tolerance"] = rec.tolerance;
        o["passed"] = rec.passed();
        o["note"] = rec.note;
        if (!rec.passed())
            ++failed;
        recs.push_back(std::move(o));
    }
    j["verdict"] = failed == 0 ? "pass" : "fail";
    j["summary"] = {{"records", r.report.records().size()}, {"passed", r.report.records().size() - failed},
                    {"failed", failed}};
    if (timings) {
        ordered_json t = ordered_json::array();
        for (const auto& o : r.tasks)
            t.push_back({{"task", o.name}, {"seconds", o.seconds}});
        j["timings"] = t;
    }
    j["records"] = recs;
    return j;
}

inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << v;
    return s.str();
}

// Aligned text: one line per record, grouped by task, then the verdict.
inline std::string render_text(const RunResult& r, const std::string& title, bool quiet)
{
    std::ostringstream out;
    out << title << "\n";
    std::size_t failed = 0;
    std::string current;
    for (const auto& rec : r.report.records()) {
        if (!rec.passed())
            ++failed;
        if (quiet && rec.passed())
            continue;
        const auto split = rec.name.find(" :: ");
        const std::string task = rec.name.substr(0, split);
        const std::string name = split == std::string::npos ? rec.name : rec.name.substr(split + 4);
        if (task != current) {
            current = task;
            double secs = 0.0;
            for (const auto& t : r.tasks)
                if (t.name == task)
                    secs = t.seconds;
            out << "\n" << task;
            if (secs > 0)
                out << "  [" << std::fixed << std::setprecision(3) << secs << " s]";
            out << "\n";
        }
        std::string status = rec.passed() ? "PASS" : "FAIL";
        if (rec.expect == Expect::fail)
            status += "*";
        out << "  " << std::left << std::setw(6) << status << std::right << std::setw(10)
            << format_number(rec.max_violation) << " / " << std::left << std::setw(9) << format_number(rec.tolerance)
            << "  " << name;
        if (!rec.note.empty() && (!quiet || !rec.passed()))
            out << "  (" << rec.note << ")";
        out << "\n";
    }
    out << "\n" << (failed == 0 ? "verdict: PASS" : "verdict: FAIL") << "  (" << r.report.records().size()
        << " records, " << failed << " failed; * marks negative controls, expected to violate)\n";
    return out.str();
}

} // namespace krein::checker
