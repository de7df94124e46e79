#include "aqs/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "aqs/acceptance.hpp"
#include "aqs/analysis.hpp"
#include "aqs/error.hpp"
#include "aqs/experiments.hpp"
#include "aqs/hamiltonian.hpp"
#include "aqs/io.hpp"
#include "aqs/random.hpp"
#include "aqs/scheduler.hpp"

namespace aqs::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMaxDim = 4096;

/// Bad user input: reported with exit code 1 and the offending field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "' " + what) {}
};

json::json_pointer pointer_for(const std::string& dotted) {
    std::string p = "/" + dotted;
    std::replace(p.begin(), p.end(), '.', '/');
    return json::json_pointer(p);
}

template <class T>
T field(const json& cfg, const std::string& dotted) {
    const auto ptr = pointer_for(dotted);
    if (!cfg.contains(ptr)) throw ConfigError(dotted, "is missing");
    try {
        return cfg.at(ptr).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(dotted, "has the wrong type");
    }
}

double nonneg(const json& cfg, const std::string& dotted) {
    const double v = field<double>(cfg, dotted);
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(dotted, "must be a finite number >= 0");
    return v;
}

std::size_t at_least(const json& cfg, const std::string& dotted, std::size_t lo) {
    const auto ptr = pointer_for(dotted);
    if (!cfg.contains(ptr)) throw ConfigError(dotted, "is missing");
    const json& v = cfg.at(ptr);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(lo)) {
        throw ConfigError(dotted, "must be an integer >= " + std::to_string(lo));
    }
    return v.get<std::size_t>();
}

// A dotted key is known if the defaults contain it, or if it sits below an
// empty-object default (a free-form block such as initial_params).
bool known_setting(const json& defaults, const std::string& dotted) {
    const json* node = &defaults;
    std::size_t start = 0;
    while (true) {
        if (node->is_object() && node->empty() && node != &defaults) return true;
        const auto dot = dotted.find('.', start);
        const std::string part = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(part)) return false;
        node = &node->at(part);
        if (dot == std::string::npos) return true;
        start = dot + 1;
    }
}

// Rejects keys the defaults do not know about, so typos fail loudly.
void check_known_keys(const json& given, const json& defaults, const std::string& prefix) {
    if (!given.is_object() || !defaults.is_object() || defaults.empty()) return;
    for (const auto& [key, value] : given.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (!defaults.contains(key)) throw ConfigError(name, "is not a recognised setting");
        check_known_keys(value, defaults.at(key), name);
    }
}

/// Output writer that stamps every artifact with the config hash and seed.
struct Emitter {
    fs::path dir;
    std::string command;
    std::string hash;
    std::uint64_t seed = 0;

    json meta() const { return json{{"tool", "aqs"}, {"command", command}, {"config_hash", hash}, {"seed", seed}}; }

    void json_file(const std::string& name, json body) const {
        body["meta"] = meta();
        write_text_file(dir / name, body.dump(2) + "\n");
    }

    void csv_file(const std::string& name, const std::string& body) const {
        write_text_file(dir / name, "# aqs " + command + " config_hash=" + hash + " seed=" + std::to_string(seed) +
                                        "\n" + body);
    }
};

FockContext fock_from(const json& cfg) {
    FockContext ctx{at_least(cfg, "fock.modes", 1), at_least(cfg, "fock.cutoff", 1)};
    std::size_t d = 1;
    for (std::size_t m = 0; m < ctx.modes; ++m) {
        d *= ctx.cutoff + 1;
        if (d > kMaxDim) throw ConfigError("fock", "gives a dimension above " + std::to_string(kMaxDim));
    }
    return ctx;
}

GeneratorConfig generator_from(const json& cfg, std::size_t modes) {
    GeneratorConfig g;
    g.decay = field<double>(cfg, "generator.decay");
    if (!(g.decay >= 0.0 && g.decay <= 1.0)) throw ConfigError("generator.decay", "must lie in [0, 1]");
    g.alpha = nonneg(cfg, "generator.alpha");
    g.beta = nonneg(cfg, "generator.beta");
    g.hermitian_mode = field<bool>(cfg, "generator.hermitian_mode");
    g.diagonal_only = field<bool>(cfg, "generator.diagonal_only");
    g.norm_floor = field<double>(cfg, "generator.norm_floor");
    if (!(g.norm_floor > 0.0)) throw ConfigError("generator.norm_floor", "must be > 0");
    g.bias = field<std::vector<double>>(cfg, "generator.bias");
    if (!g.bias.empty() && g.bias.size() != modes) throw ConfigError("generator.bias", "must be empty or have one entry per mode");
    return g;
}

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& field_name) {
    std::vector<std::size_t> out;
    for (const auto& cell : split_csv_line(text)) {
        std::size_t v = 0;
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
            throw ConfigError(field_name, "has a malformed index list '" + text + "'");
        }
        out.push_back(v);
    }
    return out;
}

OperatorPortfolio portfolio_from(const std::string& choice, const FockContext& ctx) {
    if (choice == "canonical") return canonical_portfolio(ctx);
    if (choice == "pauli") {
        const Complex i{0.0, 1.0};
        return OperatorPortfolio({"sigma_x", "sigma_y", "sigma_z"},
                                 {Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
                                  Operator::from_rows({{0.0, -i}, {i, 0.0}}),
                                  Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}})});
    }
    if (choice == "ladder") {
        std::vector<std::string> names;
        std::vector<Operator> ops;
        for (std::size_t m = 0; m < ctx.modes; ++m) {
            names.push_back("a_" + std::to_string(m));
            ops.push_back(fock_annihilation(ctx, m));
            names.push_back("adag_" + std::to_string(m));
            ops.push_back(fock_creation(ctx, m));
        }
        return OperatorPortfolio(std::move(names), std::move(ops));
    }
    if (choice.rfind("file:", 0) == 0) {
        try {
            return portfolio_from_json(read_json_file(choice.substr(5)));
        } catch (const json::exception& e) {
            throw ConfigError("portfolio", e.what());
        }
    }
    throw ConfigError("portfolio", "must be canonical, pauli, ladder or file:PATH");
}

State state_from(const std::string& choice, const FockContext& ctx, std::size_t dim, std::uint64_t seed) {
    if (choice.rfind("occupation:", 0) == 0) {
        const auto occ = parse_index_list(choice.substr(11), "state");
        if (occ.size() != ctx.modes) throw ConfigError("state", "occupation tuple needs one entry per mode");
        for (std::size_t n : occ)
            if (n > ctx.cutoff) throw ConfigError("state", "occupation exceeds the cutoff");
        const State s = ctx.basis_state(occ);
        if (s.dim() != dim) throw ConfigError("state", "dimension does not match the portfolio");
        return s;
    }
    if (choice.rfind("basis:", 0) == 0) {
        const auto idx = parse_index_list(choice.substr(6), "state");
        if (idx.size() != 1 || idx[0] >= dim) throw ConfigError("state", "basis index out of range");
        return State::basis(dim, idx[0]);
    }
    if (choice == "random") {
        Rng rng = substream(seed, "random-state");
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        ComplexVector v(dim);
        for (Complex& z : v) {
            const double re = u(rng);
            const double im = u(rng);
            z = Complex(re, im);
        }
        return State::from_amplitudes(std::move(v));
    }
    if (choice.rfind("file:", 0) == 0) {
        State s = [&] {
            try {
                return state_from_json(read_json_file(choice.substr(5)));
            } catch (const json::exception& e) {
                throw ConfigError("state", e.what());
            }
        }();
        if (s.dim() != dim) throw ConfigError("state", "dimension does not match the portfolio");
        return s;
    }
    throw ConfigError("state", "must be occupation:n0,n1,..., basis:k, random or file:PATH");
}

using Task = std::function<int(const Emitter&, std::ostream&, std::ostream&)>;

// Each prepare_* validates the config (throwing ConfigError / aqs::Error,
// mapped to exit 1) and returns the task that does the work (exit 2 on
// runtime failure).

Task prepare_simulate(const json& cfg) {
    const FockContext ctx = fock_from(cfg);
    const std::size_t steps = at_least(cfg, "steps", 1);
    const auto occ = field<std::vector<std::size_t>>(cfg, "initial_occupation");
    if (occ.size() != ctx.modes) throw ConfigError("initial_occupation", "needs one entry per mode");
    for (std::size_t n : occ)
        if (n > ctx.cutoff) throw ConfigError("initial_occupation", "exceeds the cutoff");
    const double jitter = nonneg(cfg, "initial_jitter");
    const GeneratorConfig gen = generator_from(cfg, ctx.modes);
    const json& ip = cfg.at("initial_params");
    HamiltonianParams p0;
    if (!ip.is_object()) throw ConfigError("initial_params", "must be an object");
    if (ip.empty()) {
        p0 = HamiltonianParams::zeros(ctx.modes, gen.hermitian_mode);
        std::fill(p0.epsilon.begin(), p0.epsilon.end(), 1.0);
    } else {
        try {
            p0 = params_from_json(ip, ctx.modes);
        } catch (const std::exception& e) {
            throw ConfigError("initial_params", e.what());
        }
    }
    const OperatorPortfolio portfolio = portfolio_from(field<std::string>(cfg, "portfolio"), ctx);
    if (portfolio.dim() != ctx.dim()) throw ConfigError("portfolio", "dimension does not match the Fock space");
    if (portfolio.size() != ctx.modes && portfolio.size() != ctx.modes * ctx.modes) {
        throw ConfigError("portfolio", "must hold M or M^2 operators for the H-Generator");
    }
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");

    return [=](const Emitter& emit, std::ostream& out, std::ostream& err) {
        ComplexVector amps(ctx.dim());
        amps[ctx.index(occ)] = 1.0;
        if (jitter > 0.0) {
            Rng rng = substream(seed, "initial-jitter");
            std::normal_distribution<double> noise(0.0, jitter);
            for (Complex& z : amps) {
                const double re = noise(rng);
                const double im = noise(rng);
                z += Complex(re, im);
            }
        }
        const State s0 = State::from_amplitudes(std::move(amps));
        const Trajectory t = evolve(s0, p0, ctx, portfolio, gen, steps);

        emit.json_file("trajectory.json", json{{"fock", ctx}, {"generator", gen}, {"trajectory", t}});
        std::ostringstream csv;
        csv << "step,prenorm";
        for (std::size_t i = 0; i < ctx.modes; ++i)
            for (std::size_t j = i + 1; j < ctx.modes; ++j) csv << ",c_" << i << "_" << j;
        csv << "\n";
        for (std::size_t k = 0; k < t.steps(); ++k) {
            csv << k << "," << format_double(t.prenorm[k]);
            for (std::size_t i = 0; i < ctx.modes; ++i)
                for (std::size_t j = i + 1; j < ctx.modes; ++j) csv << "," << format_double(t.c_history[k](i, j));
            csv << "\n";
        }
        emit.csv_file("c_history.csv", csv.str());
        if (t.annihilated) {
            err << "StateAnnihilated: ||H psi|| = " << format_double(*t.failed_prenorm) << " at step "
                << *t.failed_step << "; trajectory written up to the failure\n";
            return kExitRuntime;
        }
        out << "simulate: " << t.steps() << " steps written to " << emit.dir.string() << "\n";
        return kExitOk;
    };
}

Task prepare_cvalue(const json& cfg) {
    const FockContext ctx = fock_from(cfg);
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const OperatorPortfolio p = portfolio_from(field<std::string>(cfg, "portfolio"), ctx);
    const State s = state_from(field<std::string>(cfg, "state"), ctx, p.dim(), seed);

    return [=](const Emitter& emit, std::ostream& out, std::ostream&) {
        const CValueMatrix m = c_matrix(p, s);
        json body{{"matrix", m}, {"state", s}};
        if (p.size() >= 2) {
            const CPair best = maximize_c_pair(p, s);
            body["max_pair"] = json{{"i", best.i}, {"j", best.j}, {"c", best.c}};
        }
        emit.json_file("cvalue_matrix.json", body);

        std::ostringstream csv;
        csv << "op_a,op_b,c_value,sigma_a,sigma_b,robertson_gap\n";
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = i + 1; j < p.size(); ++j) {
                csv << p.names()[i] << "," << p.names()[j] << "," << format_double(m(i, j));
                if (is_hermitian(p[i], kNormTol) && is_hermitian(p[j], kNormTol)) {
                    csv << "," << format_double(std_dev(p[i], s)) << "," << format_double(std_dev(p[j], s)) << ","
                        << format_double(robertson_gap(p[i], p[j], s)) << "\n";
                } else {
                    csv << ",NA,NA,NA\n";
                }
            }
        }
        emit.csv_file("robertson.csv", csv.str());
        out << "cvalue: " << p.size() << " operators written to " << emit.dir.string() << "\n";
        return kExitOk;
    };
}

Task prepare_order_test(const json& cfg) {
    const std::size_t perms = at_least(cfg, "permutations", 1);
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const auto inputs = field<std::vector<std::string>>(cfg, "inputs");
    std::vector<EmbeddingSet> loaded;
    for (const auto& path : inputs) {
        try {
            for (auto& set : load_embedding_sets(path)) loaded.push_back(std::move(set));
        } catch (const std::exception& e) {
            throw ConfigError("inputs", e.what());
        }
    }
    if (!inputs.empty() && loaded.size() != 2) {
        throw ConfigError("inputs", "must provide exactly two labelled embedding sets");
    }
    const std::string kind = field<std::string>(cfg, "synthesize.kind");
    SwapExperiment swap;
    if (inputs.empty()) {
        if (kind == "noncommuting") swap = noncommuting_swap();
        else if (kind == "commuting") swap = commuting_swap();
        else if (kind != "clusters") throw ConfigError("synthesize.kind", "must be noncommuting, commuting or clusters");
        swap.runs = at_least(cfg, "synthesize.runs", 3);
        swap.jitter = nonneg(cfg, "synthesize.jitter");
    }
    const std::size_t points = at_least(cfg, "synthesize.points", 3);
    const std::size_t dim = at_least(cfg, "synthesize.dim", 1);
    const double separation = nonneg(cfg, "synthesize.separation");

    return [=](const Emitter& emit, std::ostream& out, std::ostream&) {
        std::pair<EmbeddingSet, EmbeddingSet> sets;
        if (!inputs.empty()) sets = {loaded[0], loaded[1]};
        else if (kind == "clusters") sets = separated_clusters(points, dim, separation, seed);
        else sets = swapped_order_embeddings(swap, seed);

        const OrderEffectReport rep = order_effect_test(sets.first, sets.second, perms, seed);
        emit.json_file("order_effect.json", json{{"report", rep}});

        std::ostringstream flat;
        flat << "label_a,label_b,silhouette,centroid_ratio,p_value,count_exceeding,n_permutations,seed";
        for (std::size_t c = 0; c < rep.explained.size(); ++c) flat << ",explained_" << c + 1;
        flat << "\n"
             << rep.label_a << "," << rep.label_b << "," << format_double(rep.silhouette) << ","
             << format_double(rep.centroid_ratio) << "," << format_double(rep.p_value) << "," << rep.count_exceeding
             << "," << rep.n_permutations << "," << rep.seed;
        for (double e : rep.explained) flat << "," << format_double(e);
        flat << "\n";
        emit.csv_file("order_effect.csv", flat.str());

        std::ostringstream scatter;
        scatter << "label,x,y\n";
        for (std::size_t i = 0; i < rep.projected.size(); ++i) {
            scatter << (rep.labels[i] == 0 ? rep.label_a : rep.label_b) << "," << format_double(rep.projected[i][0])
                    << "," << format_double(rep.projected[i][1]) << "\n";
        }
        emit.csv_file("pca_scatter.csv", scatter.str());
        out << "order-test: p = " << format_double(rep.p_value) << ", silhouette = " << format_double(rep.silhouette)
            << "\n";
        return kExitOk;
    };
}

Task prepare_interference(const json& cfg) {
    const std::size_t shuffles = at_least(cfg, "shuffles", 1);
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const std::string input = field<std::string>(cfg, "input");
    const std::size_t dim = at_least(cfg, "synthesize.dim", 4);
    std::vector<std::pair<std::string, InterferenceTriple>> triples;
    if (!input.empty()) {
        try {
            const json j = read_json_file(input);
            const json list = j.contains("triples") ? j.at("triples") : json::array({j});
            for (std::size_t t = 0; t < list.size(); ++t) {
                const json& o = list[t];
                triples.emplace_back(o.value("name", "triple_" + std::to_string(t)),
                                     InterferenceTriple{o.at("Y").get<RealVector>(), o.at("Yp").get<RealVector>(),
                                                        o.at("X").get<RealVector>()});
            }
        } catch (const std::exception& e) {
            throw ConfigError("input", e.what());
        }
        if (triples.empty()) throw ConfigError("input", "contains no triples");
    }

    return [=](const Emitter& emit, std::ostream& out, std::ostream&) {
        auto work = triples;
        if (work.empty()) work.emplace_back("sign_mixed", sign_mixed_triple(dim, seed));
        json reports = json::array();
        std::ostringstream csv;
        csv << "name,r,r_prime,r_surrogate_mean,r_surrogate_std,n_shuffles,seed\n";
        for (const auto& [name, t] : work) {
            InterferenceReport rep = interference_surrogate(t.y, t.yp, t.x, shuffles, seed);
            rep.name = name;
            reports.push_back(rep);
            csv << name << "," << format_double(rep.r) << "," << format_double(rep.r_prime) << ","
                << format_double(rep.r_surrogate_mean) << "," << format_double(rep.r_surrogate_std) << ","
                << rep.n_shuffles << "," << rep.seed << "\n";
            out << "interference " << name << ": r = " << format_double(rep.r)
                << ", r' = " << format_double(rep.r_prime) << ", r'' = " << format_double(rep.r_surrogate_mean) << "\n";
        }
        emit.json_file("interference.json", json{{"reports", reports}});
        emit.csv_file("interference.csv", csv.str());
        return kExitOk;
    };
}

Task prepare_cci(const json& cfg) {
    const std::string input = field<std::string>(cfg, "input");
    if (input.empty()) throw ConfigError("input", "must name an evaluation table CSV");
    EvaluationTable table;
    try {
        table = load_evaluation_table(input);
    } catch (const std::exception& e) {
        throw ConfigError("input", e.what());
    }

    return [=](const Emitter& emit, std::ostream& out, std::ostream&) {
        const auto scores = cci_scores(table);
        std::vector<double> cci;
        for (const auto& s : scores) cci.push_back(s.cci);
        std::optional<std::vector<double>> t;
        if (cci.size() >= 2) {
            try {
                t = t_scores(cci);
            } catch (const Error&) {
                t.reset();  // all models tie: no spread to standardise against
            }
        }
        json rows = json::array();
        std::ostringstream csv;
        csv << "model,items,cx_mean,cy_mean,cci,t_score\n";
        for (std::size_t k = 0; k < scores.size(); ++k) {
            json row = scores[k];
            row["t_score"] = t ? json((*t)[k]) : json();
            rows.push_back(std::move(row));
            csv << scores[k].model << "," << scores[k].items << "," << format_double(scores[k].cx_mean) << ","
                << format_double(scores[k].cy_mean) << "," << format_double(scores[k].cci) << ","
                << (t ? format_double((*t)[k]) : std::string("NA")) << "\n";
        }
        emit.json_file("cci_scores.json", json{{"models", rows}});
        emit.csv_file("cci_scores.csv", csv.str());
        out << "cci: " << scores.size() << " models scored\n";
        return kExitOk;
    };
}

Task prepare_demo(const json& cfg) {
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    return [=](const Emitter& emit, std::ostream& out, std::ostream&) {
        const auto results = run_acceptance(AcceptanceOptions{seed, emit.dir / "acceptance"});
        json list = json::array();
        bool all = true;
        for (const auto& r : results) {
            char secs[32];
            std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
            out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (" << secs << " s): " << r.detail
                << "\n";
            all = all && r.passed;
            list.push_back(json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        }
        // Timings vary run to run, so the report keeps only verdicts.
        emit.json_file("demo_report.json", json{{"criteria", list}, {"all_passed", all}});
        return all ? kExitOk : kExitRuntime;
    };
}

}  // namespace

json default_config(const std::string& kind) {
    if (kind == "simulate") {
        return json{{"experiment", kind},
                    {"seed", 1},
                    {"fock", {{"modes", 2}, {"cutoff", 2}}},
                    {"steps", 20},
                    {"initial_occupation", {0, 1}},
                    {"initial_jitter", 0.0},
                    {"initial_params", json::object()},
                    {"generator", GeneratorConfig{0.9, 0.2, 0.5, true, false, 1e-10, {}}},
                    {"portfolio", "canonical"}};
    }
    if (kind == "cvalue") {
        return json{{"experiment", kind},
                    {"seed", 1},
                    {"fock", {{"modes", 2}, {"cutoff", 2}}},
                    {"portfolio", "canonical"},
                    {"state", "occupation:0,1"}};
    }
    if (kind == "order-test") {
        return json{{"experiment", kind},
                    {"seed", 1},
                    {"permutations", 1000},
                    {"inputs", json::array()},
                    {"synthesize",
                     {{"kind", "noncommuting"}, {"runs", 100}, {"jitter", 0.02}, {"points", 50}, {"dim", 8}, {"separation", 10.0}}}};
    }
    if (kind == "interference") {
        return json{{"experiment", kind}, {"seed", 1}, {"shuffles", 1000}, {"input", ""}, {"synthesize", {{"dim", 1024}}}};
    }
    if (kind == "cci") return json{{"experiment", kind}, {"seed", 0}, {"input", ""}};
    if (kind == "demo") return json{{"experiment", kind}, {"seed", 20260101}};
    throw std::invalid_argument("unknown experiment kind '" + kind + "'");
}

std::string config_hash(const json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Algebraic quantum system laboratory: operator dynamics, C-values and order/interference analysis",
                 "aqs"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "aqs-out";
    std::vector<std::string> sets;
    std::vector<std::pair<std::string, json>> flags;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { seed = v; }, "master seed");
        sub->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
        sub->add_option("--set", sets, "override a config field: key.path=JSON")->take_all();
    };
    auto flag = [&]<class T>(CLI::App* sub, const std::string& name, const std::string& path, const std::string& help,
                             T*) {
        sub->add_option_function<T>(name, [&flags, path](const T& v) { flags.emplace_back(path, json(v)); }, help);
    };

    std::vector<std::pair<std::string, CLI::App*>> subs;
    auto* sim = app.add_subcommand("simulate", "run the two-layer S/H-Generator evolution");
    flag(sim, "--modes", "fock.modes", "number of modes", static_cast<std::size_t*>(nullptr));
    flag(sim, "--cutoff", "fock.cutoff", "max occupation per mode", static_cast<std::size_t*>(nullptr));
    flag(sim, "--steps", "steps", "number of steps K", static_cast<std::size_t*>(nullptr));
    flag(sim, "--decay", "generator.decay", "coefficient decay in [0,1]", static_cast<double*>(nullptr));
    flag(sim, "--alpha", "generator.alpha", "on-site feedback gain", static_cast<double*>(nullptr));
    flag(sim, "--beta", "generator.beta", "coupling feedback gain", static_cast<double*>(nullptr));
    flag(sim, "--occupation", "initial_occupation", "initial occupation tuple",
         static_cast<std::vector<std::size_t>*>(nullptr));
    flag(sim, "--jitter", "initial_jitter", "initial-state noise std", static_cast<double*>(nullptr));
    subs.emplace_back("simulate", sim);

    auto* cv = app.add_subcommand("cvalue", "pairwise C-values and Robertson gaps of a portfolio");
    flag(cv, "--modes", "fock.modes", "number of modes", static_cast<std::size_t*>(nullptr));
    flag(cv, "--cutoff", "fock.cutoff", "max occupation per mode", static_cast<std::size_t*>(nullptr));
    flag(cv, "--portfolio", "portfolio", "canonical | pauli | ladder | file:PATH", static_cast<std::string*>(nullptr));
    flag(cv, "--state", "state", "occupation:n0,.. | basis:k | random | file:PATH", static_cast<std::string*>(nullptr));
    subs.emplace_back("cvalue", cv);

    auto* ot = app.add_subcommand("order-test", "order-effect detection with PCA and a permutation test");
    flag(ot, "--permutations", "permutations", "number of label permutations", static_cast<std::size_t*>(nullptr));
    flag(ot, "--input", "inputs", "embedding set files (JSON or CSV)", static_cast<std::vector<std::string>*>(nullptr));
    flag(ot, "--kind", "synthesize.kind", "noncommuting | commuting | clusters", static_cast<std::string*>(nullptr));
    subs.emplace_back("order-test", ot);

    auto* itf = app.add_subcommand("interference", "r, r' and shuffled-surrogate r'' statistics");
    flag(itf, "--input", "input", "JSON file of (Y, Yp, X) triples", static_cast<std::string*>(nullptr));
    flag(itf, "--shuffles", "shuffles", "number of surrogate shuffles", static_cast<std::size_t*>(nullptr));
    subs.emplace_back("interference", itf);

    auto* cci = app.add_subcommand("cci", "Cx / Cy / CCI and T-scores from an evaluation table");
    flag(cci, "--input", "input", "evaluation table CSV", static_cast<std::string*>(nullptr));
    subs.emplace_back("cci", cci);

    auto* demo = app.add_subcommand("demo", "run the end-to-end acceptance suite");
    subs.emplace_back("demo", demo);

    for (auto& [name, sub] : subs) common(sub);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    std::string kind;
    for (auto& [name, sub] : subs)
        if (sub->parsed()) kind = name;

    json cfg;
    Task task;
    try {
        cfg = default_config(kind);
        const json defaults = cfg;
        if (!config_path.empty()) {
            const json file = read_json_file(config_path);
            if (!file.is_object()) throw ConfigError("<root>", "config must be a JSON object");
            check_known_keys(file, defaults, "");
            if (file.contains("experiment") && file.at("experiment") != kind) {
                throw ConfigError("experiment", "is '" + file.at("experiment").dump() + "' but the command is " + kind);
            }
            cfg.merge_patch(file);
        }
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError(s, "override must look like key.path=value");
            const std::string key = s.substr(0, eq);
            if (!known_setting(defaults, key)) throw ConfigError(key, "is not a recognised setting");
            json value = json::parse(s.substr(eq + 1), nullptr, false);
            if (value.is_discarded()) value = s.substr(eq + 1);
            cfg[pointer_for(key)] = value;
        }
        for (const auto& [path, value] : flags) cfg[pointer_for(path)] = value;
        if (seed) cfg["seed"] = *seed;

        if (kind == "simulate") task = prepare_simulate(cfg);
        else if (kind == "cvalue") task = prepare_cvalue(cfg);
        else if (kind == "order-test") task = prepare_order_test(cfg);
        else if (kind == "interference") task = prepare_interference(cfg);
        else if (kind == "cci") task = prepare_cci(cfg);
        else task = prepare_demo(cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: invalid config: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        const Emitter emit{fs::path(out_dir), kind, config_hash(cfg), field<std::uint64_t>(cfg, "seed")};
        write_text_file(emit.dir / "config.json", cfg.dump(2) + "\n");
        return task(emit, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace aqs::cli
