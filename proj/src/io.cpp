#include "aqs/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "aqs/error.hpp"

namespace aqs {

namespace {

json complex_grid(const Operator& op, bool imag) {
    json rows = json::array();
    for (std::size_t i = 0; i < op.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < op.dim(); ++k) row.push_back(imag ? op(i, k).imag() : op(i, k).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ComplexVector> grid_from_json(const json& re, const json& im, std::size_t n) {
    if (!re.is_array() || re.size() != n) throw Error(ErrorCode::DimMismatch, "operator 're' must have dim rows");
    if (!im.is_null() && (!im.is_array() || im.size() != n)) {
        throw Error(ErrorCode::DimMismatch, "operator 'im' must have dim rows");
    }
    std::vector<ComplexVector> rows(n, ComplexVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (re[i].size() != n || (!im.is_null() && im[i].size() != n)) {
            throw Error(ErrorCode::DimMismatch, "operator row " + std::to_string(i) + " has wrong length");
        }
        for (std::size_t k = 0; k < n; ++k)
            rows[i][k] = Complex(re[i][k].get<double>(), im.is_null() ? 0.0 : im[i][k].get<double>());
    }
    return rows;
}

}  // namespace

void to_json(json& j, const State& s) {
    json re = json::array(), im = json::array();
    for (const Complex& z : s.amplitudes()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j = json{{"dim", s.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

State state_from_json(const json& j) {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
    require_same_dim(re.size(), im.size(), "state re/im");
    if (j.contains("dim")) require_same_dim(j.at("dim").get<std::size_t>(), re.size(), "state dim");
    ComplexVector v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = Complex(re[i], im[i]);
    return State::from_amplitudes(std::move(v));
}

void to_json(json& j, const Operator& op) {
    j = json{{"dim", op.dim()}, {"re", complex_grid(op, false)}, {"im", complex_grid(op, true)}};
}

Operator operator_from_json(const json& j) {
    const json& re = j.at("re");
    const std::size_t n = j.contains("dim") ? j.at("dim").get<std::size_t>() : re.size();
    return Operator::from_rows(grid_from_json(re, j.contains("im") ? j.at("im") : json(), n));
}

void to_json(json& j, const FockContext& ctx) { j = json{{"modes", ctx.modes}, {"cutoff", ctx.cutoff}}; }

void from_json(const json& j, FockContext& ctx) {
    ctx.modes = j.at("modes").get<std::size_t>();
    ctx.cutoff = j.at("cutoff").get<std::size_t>();
}

void to_json(json& j, const CValueMatrix& m) {
    json grid = json::array();
    for (std::size_t i = 0; i < m.size; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.size; ++k) row.push_back(m(i, k));
        grid.push_back(std::move(row));
    }
    j = json{{"names", m.names}, {"size", m.size}, {"values", std::move(grid)}};
}

void to_json(json& j, const HamiltonianParams& p) {
    const std::size_t m = p.modes();
    json re = json::array(), im = json::array();
    for (std::size_t a = 0; a < m; ++a) {
        json rr = json::array(), ri = json::array();
        for (std::size_t b = 0; b < m; ++b) {
            rr.push_back(p.g(a, b).real());
            ri.push_back(p.g(a, b).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    j = json{{"step", p.step},
             {"epsilon", p.epsilon},
             {"coupling_re", std::move(re)},
             {"coupling_im", std::move(im)},
             {"hermitian_mode", p.hermitian_mode}};
}

HamiltonianParams params_from_json(const json& j, std::size_t modes) {
    HamiltonianParams p = HamiltonianParams::zeros(modes, j.value("hermitian_mode", true));
    p.step = j.value("step", std::size_t{0});
    if (j.contains("epsilon")) p.epsilon = j.at("epsilon").get<std::vector<double>>();
    require_same_dim(p.epsilon.size(), modes, "epsilon length");
    auto read_part = [&](const char* key, bool imag) {
        if (!j.contains(key)) return;
        const auto grid = j.at(key).get<std::vector<std::vector<double>>>();
        require_same_dim(grid.size(), modes, std::string(key) + " rows");
        for (std::size_t a = 0; a < modes; ++a) {
            require_same_dim(grid[a].size(), modes, std::string(key) + " columns");
            for (std::size_t b = 0; b < modes; ++b) {
                Complex& z = p.g(a, b);
                z = imag ? Complex(z.real(), grid[a][b]) : Complex(grid[a][b], z.imag());
            }
        }
    };
    read_part("coupling_re", false);
    read_part("coupling_im", true);
    p.validate(modes);
    return p;
}

void to_json(json& j, const GeneratorConfig& cfg) {
    j = json{{"decay", cfg.decay},
             {"alpha", cfg.alpha},
             {"beta", cfg.beta},
             {"hermitian_mode", cfg.hermitian_mode},
             {"diagonal_only", cfg.diagonal_only},
             {"norm_floor", cfg.norm_floor},
             {"bias", cfg.bias}};
}

void from_json(const json& j, GeneratorConfig& cfg) {
    GeneratorConfig d;
    cfg.decay = j.value("decay", d.decay);
    cfg.alpha = j.value("alpha", d.alpha);
    cfg.beta = j.value("beta", d.beta);
    cfg.hermitian_mode = j.value("hermitian_mode", d.hermitian_mode);
    cfg.diagonal_only = j.value("diagonal_only", d.diagonal_only);
    cfg.norm_floor = j.value("norm_floor", d.norm_floor);
    cfg.bias = j.value("bias", std::vector<double>{});
}

void to_json(json& j, const Trajectory& t) {
    j = json{{"states", t.states},
             {"params", t.params_history},
             {"c_history", t.c_history},
             {"prenorm", t.prenorm},
             {"annihilated", t.annihilated},
             {"failed_step", t.failed_step ? json(*t.failed_step) : json()},
             {"failed_prenorm", t.failed_prenorm ? json(*t.failed_prenorm) : json()}};
}

void to_json(json& j, const OperatorPortfolio& p) { j = json{{"names", p.names()}, {"ops", p.ops()}}; }

OperatorPortfolio portfolio_from_json(const json& j) {
    std::vector<Operator> ops;
    for (const auto& o : j.at("ops")) ops.push_back(operator_from_json(o));
    return OperatorPortfolio(j.at("names").get<std::vector<std::string>>(), std::move(ops));
}

void to_json(json& j, const EmbeddingSet& s) {
    j = json{{"label", s.label}, {"dim", s.dim()}, {"vectors", s.vectors}};
}

void to_json(json& j, const OrderEffectReport& r) {
    json pts = json::array();
    for (const auto& p : r.projected) pts.push_back({p[0], p[1]});
    j = json{{"label_a", r.label_a},
             {"label_b", r.label_b},
             {"silhouette", r.silhouette},
             {"centroid_ratio", r.centroid_ratio},
             {"p_value", r.p_value},
             {"count_exceeding", r.count_exceeding},
             {"n_permutations", r.n_permutations},
             {"seed", r.seed},
             {"explained", r.explained},
             {"labels", r.labels},
             {"projected", std::move(pts)}};
}

void to_json(json& j, const InterferenceReport& r) {
    j = json{{"name", r.name},
             {"r", r.r},
             {"r_prime", r.r_prime},
             {"r_surrogate_mean", r.r_surrogate_mean},
             {"r_surrogate_std", r.r_surrogate_std},
             {"n_shuffles", r.n_shuffles},
             {"seed", r.seed}};
}

void to_json(json& j, const ModelScore& s) {
    j = json{{"model", s.model}, {"items", s.items}, {"cx_mean", s.cx_mean}, {"cy_mean", s.cy_mean}, {"cci", s.cci}};
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
        cells.emplace_back(cell);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

namespace {

double parse_number(const std::string& cell, const std::string& where) {
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::InvalidArgument, where + ": '" + cell + "' is not a number");
    }
    return v;
}

// Data rows of a CSV, skipping blank and '#' comment lines; the first
// remaining row is the header.
std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw Error(ErrorCode::InvalidArgument, path.string() + ": empty CSV");
    return rows;
}

}  // namespace

std::vector<EmbeddingSet> load_embedding_sets(const std::filesystem::path& path) {
    std::vector<EmbeddingSet> sets;
    if (path.extension() == ".json") {
        const json j = read_json_file(path);
        auto one = [](const json& o) {
            EmbeddingSet s{o.at("label").get<std::string>(), o.at("vectors").get<RealRows>()};
            if (o.contains("dim") && !s.vectors.empty()) require_same_dim(o.at("dim").get<std::size_t>(), s.dim(), "embedding dim");
            return s;
        };
        if (j.is_array()) {
            for (const auto& o : j) sets.push_back(one(o));
        } else {
            sets.push_back(one(j));
        }
    } else {
        const auto rows = read_csv_rows(path);
        if (rows.front().empty() || rows.front().front() != "label") {
            throw Error(ErrorCode::InvalidArgument, path.string() + ": CSV header must start with 'label'");
        }
        const std::size_t d = rows.front().size() - 1;
        std::map<std::string, std::size_t> slot;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            const std::string where = path.string() + " row " + std::to_string(r);
            require_same_dim(row.size(), d + 1, where);
            auto [it, fresh] = slot.try_emplace(row[0], sets.size());
            if (fresh) sets.push_back(EmbeddingSet{row[0], {}});
            RealVector v(d);
            for (std::size_t k = 0; k < d; ++k) v[k] = parse_number(row[k + 1], where);
            sets[it->second].vectors.push_back(std::move(v));
        }
    }
    for (const auto& s : sets) s.validate();
    return sets;
}

EvaluationTable load_evaluation_table(const std::filesystem::path& path) {
    static const std::vector<std::string> kColumns = {"model",   "item",     "novelty",  "surprise", "depth",
                                                      "metacog", "reframe", "autonomy", "engage"};
    const auto rows = read_csv_rows(path);
    std::vector<std::size_t> col(kColumns.size());
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto& header = rows.front();
        const auto it = std::find(header.begin(), header.end(), kColumns[c]);
        if (it == header.end()) {
            throw Error(ErrorCode::InvalidArgument, path.string() + ": missing column '" + kColumns[c] + "'");
        }
        col[c] = static_cast<std::size_t>(it - header.begin());
    }
    EvaluationTable t;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = path.string() + " row " + std::to_string(r);
        require_same_dim(row.size(), rows.front().size(), where);
        EvaluationRow e{row[col[0]], row[col[1]]};
        for (std::size_t k = 0; k < 3; ++k) e.cx[k] = parse_number(row[col[2 + k]], where);
        for (std::size_t k = 0; k < 4; ++k) e.cy[k] = parse_number(row[col[5 + k]], where);
        t.rows.push_back(std::move(e));
    }
    t.validate();
    return t;
}

json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace aqs
