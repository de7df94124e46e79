#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aqs/analysis.hpp"
#include "aqs/creativity.hpp"
#include "aqs/hamiltonian.hpp"

namespace aqs {

using json = nlohmann::json;

// State:        {"dim": n, "re": [...], "im": [...]}
// Operator:     {"dim": n, "re": [[...]], "im": [[...]]}
// FockContext:  {"modes": M, "cutoff": n_max}
void to_json(json& j, const State& s);
State state_from_json(const json& j);
void to_json(json& j, const Operator& op);
Operator operator_from_json(const json& j);
void to_json(json& j, const FockContext& ctx);
void from_json(const json& j, FockContext& ctx);

void to_json(json& j, const CValueMatrix& m);
void to_json(json& j, const HamiltonianParams& p);
HamiltonianParams params_from_json(const json& j, std::size_t modes);
void to_json(json& j, const GeneratorConfig& cfg);
void from_json(const json& j, GeneratorConfig& cfg);
void to_json(json& j, const Trajectory& t);
void to_json(json& j, const OperatorPortfolio& p);
OperatorPortfolio portfolio_from_json(const json& j);

void to_json(json& j, const EmbeddingSet& s);
void to_json(json& j, const OrderEffectReport& r);
void to_json(json& j, const InterferenceReport& r);
void to_json(json& j, const ModelScore& s);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::vector<std::string> split_csv_line(std::string_view line);

/// JSON {"label", "dim", "vectors"} or CSV with header label,v0,...; a CSV
/// may carry several labels, yielding one set per label in first-seen order.
std::vector<EmbeddingSet> load_embedding_sets(const std::filesystem::path& path);

/// CSV with columns model,item,novelty,surprise,depth,metacog,reframe,autonomy,engage.
EvaluationTable load_evaluation_table(const std::filesystem::path& path);

json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace aqs
