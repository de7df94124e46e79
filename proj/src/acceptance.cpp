#include "aqs/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "aqs/analysis.hpp"
#include "aqs/cli.hpp"
#include "aqs/creativity.hpp"
#include "aqs/experiments.hpp"
#include "aqs/hamiltonian.hpp"
#include "aqs/io.hpp"
#include "aqs/random.hpp"
#include "aqs/scheduler.hpp"

namespace aqs {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

Operator random_operator(std::size_t dim, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = u(rng);
            const double im = u(rng);
            op(i, j) = Complex(re, im);
        }
    return op;
}

Operator random_hermitian(std::size_t dim, Rng& rng) {
    const Operator m = random_operator(dim, rng);
    return Complex(0.5) * (m + adjoint(m));
}

State random_state(std::size_t dim, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexVector v(dim);
    for (Complex& z : v) {
        const double re = u(rng);
        const double im = u(rng);
        z = Complex(re, im);
    }
    return State::from_amplitudes(std::move(v));
}

std::size_t random_dim(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct Verdict {
    bool passed = true;
    std::string detail;
};

// 1. Commutator antisymmetry (exact) and the Jacobi identity.
Verdict algebra_suite(std::uint64_t seed) {
    const auto t0 = Clock::now();
    Rng rng = substream(seed, "acceptance-algebra");
    std::size_t antisym_fail = 0, jacobi_fail = 0;
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const std::size_t d = random_dim(rng, 2, 32);
        const Operator a = random_operator(d, rng);
        const Operator b = random_operator(d, rng);
        if (!(commutator(a, b) + commutator(b, a) == Operator::zero(d))) ++antisym_fail;
    }
    for (int k = 0; k < 500; ++k) {
        const std::size_t d = random_dim(rng, 2, 32);
        const Operator a = random_operator(d, rng);
        const Operator b = random_operator(d, rng);
        const Operator c = random_operator(d, rng);
        const Operator sum = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                             commutator(c, commutator(a, b));
        const double scale = a.frobenius() * b.frobenius() * c.frobenius();
        const double rel = sum.max_abs() / scale;
        worst = std::max(worst, rel);
        if (sum.max_abs() > 1e-9 * scale) ++jacobi_fail;
    }
    const double secs = seconds_since(t0);
    return {antisym_fail == 0 && jacobi_fail == 0 && secs < 5.0,
            "500 pairs antisymmetry failures " + std::to_string(antisym_fail) + ", 500 triples Jacobi failures " +
                std::to_string(jacobi_fail) + " (worst rel " + fmt(worst) + "), " + fmt(secs) + " s < 5 s"};
}

// 2. Robertson inequality plus the sigma_x / sigma_y / e0 equality case.
Verdict robertson_suite(std::uint64_t seed) {
    Rng rng = substream(seed, "acceptance-robertson");
    double min_gap = 1e300;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t d = random_dim(rng, 2, 32);
        const Operator a = random_hermitian(d, rng);
        const Operator b = random_hermitian(d, rng);
        min_gap = std::min(min_gap, robertson_gap(a, b, random_state(d, rng)));
    }
    const Complex i{0.0, 1.0};
    const Operator sx = Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const Operator sy = Operator::from_rows({{0.0, -i}, {i, 0.0}});
    const State e0 = State::basis(2, 0);
    const double gap = robertson_gap(sx, sy, e0);
    const double c = c_value(sx, sy, e0);
    const bool ok = min_gap >= -1e-9 && std::abs(gap) <= 1e-12 && std::abs(c - 2.0) <= 1e-12;
    return {ok, "min gap over 1000 pairs " + fmt(min_gap) + " >= -1e-9; equality case gap " + fmt(gap) + ", C " + fmt(c)};
}

// 3. Truncated Fock algebra.
Verdict fock_suite() {
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t modes = 1; modes <= 2; ++modes) {
        for (std::size_t cutoff = 2; cutoff <= 4; ++cutoff) {
            const FockContext ctx{modes, cutoff};
            const std::size_t d = ctx.dim();
            for (std::size_t m = 0; m < modes; ++m) {
                const Operator a = fock_annihilation(ctx, m);
                const Operator ad = fock_creation(ctx, m);
                const Operator ccr = commutator(a, ad);
                for (std::size_t col = 0; col < d; ++col) {
                    const auto occ = ctx.occupations(col);
                    const Image img = apply(ccr, State::basis(d, col));
                    const double expected = occ[m] < cutoff ? 1.0 : -static_cast<double>(cutoff);
                    for (std::size_t row = 0; row < d; ++row) {
                        const double err = std::abs(img.raw[row] - (row == col ? expected : 0.0));
                        worst = std::max(worst, err);
                        if (err > 1e-12) ++failures;
                    }
                }
                const Operator n = compose(ad, a);
                const Operator direct = number_operator(ctx, m);
                if ((n - direct).max_abs() > 1e-12) ++failures;
                for (std::size_t i = 0; i < d; ++i)
                    if (direct(i, i) != Complex(static_cast<double>(ctx.occupations(i)[m]))) ++failures;
            }
            if (modes == 2) {
                const Operator a0 = fock_annihilation(ctx, 0), a1 = fock_annihilation(ctx, 1);
                if (commutator(a0, fock_creation(ctx, 1)).max_abs() != 0.0) ++failures;
                if (commutator(a0, a1).max_abs() != 0.0) ++failures;
                if (commutator(fock_creation(ctx, 0), fock_creation(ctx, 1)).max_abs() != 0.0) ++failures;
            }
        }
    }
    return {failures == 0, "M=1..2, cutoff 2..4: " + std::to_string(failures) + " failures, worst CCR residual " + fmt(worst)};
}

// 4. Commuting portfolio: every application order gives the same ray.
Verdict commutative_special_case(std::uint64_t seed) {
    Rng rng = substream(seed, "acceptance-commuting");
    std::uniform_real_distribution<double> eps(0.5, 2.0);
    double worst = 1.0;
    std::size_t sequences = 0;
    bool collapse_ok = true;
    const std::vector<FockContext> contexts{{1, 4}, {2, 2}, {3, 2}, {4, 2}};  // dims 5, 9, 27, 81
    for (const auto& ctx : contexts) {
        for (std::size_t len = 2; len <= 5; ++len) {
            std::vector<Operator> ops;
            std::vector<std::string> names;
            for (std::size_t k = 0; k < len; ++k) {
                HamiltonianParams p = HamiltonianParams::zeros(ctx.modes);
                for (double& e : p.epsilon) e = eps(rng);
                ops.push_back(build_hamiltonian(p, ctx));
                names.push_back("H" + std::to_string(k));
            }
            const State s = random_state(ctx.dim(), rng);
            collapse_ok = collapse_ok && commuting_collapse_check(OperatorPortfolio(names, ops), s, 1e-12);
            std::vector<std::size_t> order(len);
            std::iota(order.begin(), order.end(), std::size_t{0});
            const State reference = apply_sequence(ops, s);
            do {
                std::vector<Operator> seq;
                for (std::size_t k : order) seq.push_back(ops[k]);
                worst = std::min(worst, fidelity(reference, apply_sequence(seq, s)));
                ++sequences;
            } while (std::next_permutation(order.begin(), order.end()));
        }
    }
    return {collapse_ok && worst >= 1.0 - 1e-9,
            std::to_string(sequences) + " permuted sequences up to length 5, dims <= 81: min fidelity 1 - " +
                fmt(1.0 - worst)};
}

// 5. Order effect on swapped-order Fock simulations.
Verdict order_effect_reproduction(std::uint64_t seed, const fs::path& out_dir) {
    const auto t0 = Clock::now();
    const auto [ab, ba] = swapped_order_embeddings(noncommuting_swap(), seed);
    const OrderEffectReport rep = order_effect_test(ab, ba, 1000, seed);

    std::ostringstream scatter;
    scatter << "label,x,y\n";
    for (std::size_t i = 0; i < rep.projected.size(); ++i) {
        scatter << (rep.labels[i] == 0 ? rep.label_a : rep.label_b) << "," << format_double(rep.projected[i][0]) << ","
                << format_double(rep.projected[i][1]) << "\n";
    }
    const fs::path scatter_path = out_dir / "pca_scatter_noncommuting.csv";
    write_text_file(scatter_path, scatter.str());

    std::size_t above = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::uint64_t sub = splitmix64(seed + s);
        const auto [ca, cb] = swapped_order_embeddings(commuting_swap(), sub);
        if (order_effect_test(ca, cb, 1000, sub).p_value > 0.05) ++above;
    }
    const double secs = seconds_since(t0);
    const bool ok = rep.p_value < 0.01 && above >= 90 && fs::exists(scatter_path) && secs < 30.0;
    return {ok, "noncommuting p " + fmt(rep.p_value) + " (silhouette " + fmt(rep.silhouette) + "); commuting p > 0.05 in " +
                    std::to_string(above) + "/100 seeds; scatter " + scatter_path.string() + "; " + fmt(secs) + " s < 30 s"};
}

// 6. Interference statistics on the sign-mixed synthetic triple.
Verdict interference_reproduction(std::uint64_t seed) {
    const auto t0 = Clock::now();
    const InterferenceTriple t = sign_mixed_triple(1024, seed);
    const InterferenceStats st = interference_stats(t.y, t.yp, t.x);
    const InterferenceReport rep = interference_surrogate(t.y, t.yp, t.x, 1000, seed);
    const double secs = seconds_since(t0);
    const bool ok = st.r_prime < st.r && rep.r_surrogate_mean > st.r_prime && secs < 10.0;
    return {ok, "r " + fmt(st.r) + ", r' " + fmt(st.r_prime) + ", mean r'' " + fmt(rep.r_surrogate_mean) + " (n=1000); " +
                    fmt(secs) + " s < 10 s"};
}

const std::vector<double> kModelAverages{2.20, 2.27, 2.53, 2.52, 2.60, 2.91, 3.34, 3.17,
                                         3.31, 3.33, 3.29, 3.81, 3.91, 4.32, 5.54};
const std::vector<double> kDomainOne{2.17, 2.38, 2.83, 2.67, 2.38, 2.38, 3.38, 3.75,
                                     3.00, 3.13, 3.83, 4.63, 4.38, 4.63, 5.25};

// 7. T-scores from the golden CCI model averages.
Verdict t_score_golden() {
    const auto t = t_scores(kModelAverages);
    const auto m = population_moments(kModelAverages);
    const auto t1 = t_scores(kDomainOne);
    const bool ok = std::abs(t.back() - 76.7) <= 0.2 && std::abs(m.mean - 3.27) <= 0.01 &&
                    std::abs(m.std - 0.85) <= 0.01 && std::abs(t1.back() - 69.7) <= 0.2;
    return {ok, "T(5.54) " + fmt(t.back()) + ", mean " + fmt(m.mean) + ", std " + fmt(m.std) + "; domain 1 T(5.25) " +
                    fmt(t1.back())};
}

EvaluationRow uniform_row(std::string model, std::string item, double cx, double cy) {
    return EvaluationRow{std::move(model), std::move(item), {cx, cx, cx}, {cy, cy, cy, cy}};
}

// 8. CCI ordering and golden cases.
Verdict cci_properties(std::uint64_t seed) {
    Rng rng = substream(seed, "acceptance-cci");
    std::uniform_real_distribution<double> score(1.0, 8.0);
    std::size_t violations = 0;
    for (int k = 0; k < 200; ++k) {
        EvaluationTable table;
        const std::size_t models = random_dim(rng, 1, 4), items = random_dim(rng, 1, 10);
        for (std::size_t m = 0; m < models; ++m)
            for (std::size_t it = 0; it < items; ++it) {
                EvaluationRow row{"m" + std::to_string(m), "i" + std::to_string(it)};
                for (double& v : row.cx) v = score(rng);
                for (double& v : row.cy) v = score(rng);
                table.rows.push_back(std::move(row));
            }
        for (const auto& s : cci_scores(table))
            if (s.cci > std::min(s.cx_mean, s.cy_mean) + 1e-12) ++violations;
    }
    const double all8 = cci_scores(EvaluationTable{{uniform_row("m", "a", 8, 8), uniform_row("m", "b", 8, 8)}})[0].cci;
    const double mixed = cci_scores(EvaluationTable{{uniform_row("m", "a", 4, 6), uniform_row("m", "b", 6, 4)}})[0].cci;
    const bool ok = violations == 0 && all8 == 8.0 && std::abs(mixed - 4.0) <= 1e-12;
    return {ok, std::to_string(violations) + " violations over 200 tables; all-8 cci " + fmt(all8) + "; (4,6)/(6,4) cci " +
                    fmt(mixed)};
}

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
    std::size_t count_b = 0;
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) ++count_b;
    if (files.empty() || files.size() != count_b) {
        why = "file sets differ between " + a.string() + " and " + b.string();
        return false;
    }
    for (const auto& rel : files) {
        if (!fs::exists(b / rel) || read_text_file(a / rel) != read_text_file(b / rel)) {
            why = rel.string() + " differs";
            return false;
        }
    }
    return true;
}

// 9. Byte-identical CLI artifacts on re-run and on replay of the emitted config.
Verdict cli_determinism(std::uint64_t seed, const fs::path& out_dir, Clock::time_point suite_start) {
    const fs::path root = out_dir / "determinism";
    fs::remove_all(root);
    std::ostringstream table;
    table << "model,item,novelty,surprise,depth,metacog,reframe,autonomy,engage\n";
    for (std::size_t k = 0; k < kModelAverages.size(); ++k) {
        const std::string v = format_double(kModelAverages[k]);
        table << "AI " << k + 1 << ",avg," << v << "," << v << "," << v << "," << v << "," << v << "," << v << "," << v
              << "\n";
    }
    const fs::path table_path = root / "inputs" / "golden_table.csv";
    write_text_file(table_path, table.str());

    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--steps", "30"},
        {"cvalue", "--state", "random"},
        {"order-test"},
        {"interference"},
        {"cci", "--input", table_path.string()},
    };
    std::ostringstream sink;
    std::size_t checked = 0;
    for (const auto& base : commands) {
        const std::string& name = base.front();
        std::vector<fs::path> dirs{root / (name + "-1"), root / (name + "-2"), root / (name + "-replay")};
        for (std::size_t r = 0; r < 2; ++r) {
            auto args = base;
            args.insert(args.end(), {"--seed", std::to_string(seed), "--out-dir", dirs[r].string()});
            if (cli::run(args, sink, sink) != cli::kExitOk) return {false, name + " run failed: " + sink.str()};
        }
        const std::vector<std::string> replay{name, "--config", (dirs[0] / "config.json").string(), "--out-dir",
                                              dirs[2].string()};
        if (cli::run(replay, sink, sink) != cli::kExitOk) return {false, name + " replay failed: " + sink.str()};
        std::string why;
        if (!same_tree(dirs[0], dirs[1], why) || !same_tree(dirs[0], dirs[2], why)) return {false, name + ": " + why};
        ++checked;
    }
    const double total = seconds_since(suite_start);
    return {total < 60.0, std::to_string(checked) + " subcommands byte-identical on re-run and replay; full suite " +
                              fmt(total) + " s < 60 s"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    const auto suite_start = Clock::now();
    fs::create_directories(options.out_dir);
    std::vector<CriterionResult> results;
    auto record = [&](int id, std::string name, const std::function<Verdict()>& fn) {
        const auto t0 = Clock::now();
        CriterionResult r;
        r.id = id;
        r.name = std::move(name);
        try {
            const Verdict v = fn();
            r.passed = v.passed;
            r.detail = v.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds = seconds_since(t0);
        results.push_back(std::move(r));
    };
    const std::uint64_t seed = options.seed;
    record(1, "Algebra suite", [&] { return algebra_suite(seed); });
    record(2, "Robertson suite", [&] { return robertson_suite(seed); });
    record(3, "Fock suite", [] { return fock_suite(); });
    record(4, "Commutative special case", [&] { return commutative_special_case(seed); });
    record(5, "Order-effect reproduction", [&] { return order_effect_reproduction(seed, options.out_dir); });
    record(6, "Interference reproduction", [&] { return interference_reproduction(seed); });
    record(7, "T-score golden test", [] { return t_score_golden(); });
    record(8, "CCI properties", [&] { return cci_properties(seed); });
    record(9, "CLI determinism", [&] { return cli_determinism(seed, options.out_dir, suite_start); });
    return results;
}

}  // namespace aqs
