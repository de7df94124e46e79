#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace aqs {

using RealVector = std::vector<double>;
using RealRows = std::vector<RealVector>;

/// Labelled samples of output embeddings (one condition of an experiment).
struct EmbeddingSet {
    std::string label;
    RealRows vectors;

    std::size_t dim() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }
    /// >= 2 vectors, equal dims, all finite.
    void validate() const;
};

/// Mean-centred cosine similarity. Throws ConstantVector when either input
/// has no variance.
double pearson(std::span<const double> u, std::span<const double> v);

struct PcaResult {
    RealRows coords;            // one row of `components` values per point
    std::vector<double> explained;
    RealRows loadings;          // unit principal axes, one per component
};

/// Projection of mean-centred points on the top eigenvectors of the sample
/// covariance, in descending eigenvalue order. Each axis is oriented so that
/// its largest-magnitude loading is positive.
PcaResult pca_project(const RealRows& points, std::size_t components);

/// Mean silhouette for a 0/1 labelling under Euclidean distance. Points
/// alone in their cluster contribute 0.
double silhouette(const RealRows& coords, std::span<const int> labels);

/// Distance between the two cluster centroids over the pooled within-cluster
/// RMS spread.
double centroid_ratio(const RealRows& coords, std::span<const int> labels);

struct OrderEffectReport {
    std::string label_a;
    std::string label_b;
    double silhouette = 0.0;
    double centroid_ratio = 0.0;
    double p_value = 1.0;
    std::size_t count_exceeding = 0;
    std::size_t n_permutations = 0;
    std::uint64_t seed = 0;
    std::vector<double> explained;
    std::vector<std::array<double, 2>> projected;  // set A first, then set B
    std::vector<int> labels;                       // 0 = A, 1 = B
};

/// PCA to two dimensions on the pooled sets, then a label-permutation test
/// on centroid_ratio with p = (count + 1) / (n + 1).
OrderEffectReport order_effect_test(const EmbeddingSet& a, const EmbeddingSet& b,
                                    std::size_t n_permutations, std::uint64_t seed);

struct InterferenceStats {
    double r = 0.0;        // corr(Y', X)
    double r_prime = 0.0;  // corr(Y' - Y, X - Y)
};

InterferenceStats interference_stats(std::span<const double> y, std::span<const double> yp,
                                     std::span<const double> x);

struct InterferenceReport {
    std::string name;
    double r = 0.0;
    double r_prime = 0.0;
    double r_surrogate_mean = 0.0;
    double r_surrogate_std = 0.0;  // sample std; 0 for a single shuffle
    std::size_t n_shuffles = 0;
    std::uint64_t seed = 0;
};

/// Produces the permutation used for shuffle `iteration` of a length-n vector.
using PermutationSource = std::function<std::vector<std::size_t>(std::size_t iteration, std::size_t n)>;

/// r'' = corr(Y' - Y_r, X - Y_r) with Y_r a uniformly shuffled copy of Y,
/// averaged over n_shuffles seeded shuffles.
InterferenceReport interference_surrogate(std::span<const double> y, std::span<const double> yp,
                                          std::span<const double> x, std::size_t n_shuffles,
                                          std::uint64_t seed);
InterferenceReport interference_surrogate(std::span<const double> y, std::span<const double> yp,
                                          std::span<const double> x, std::size_t n_shuffles,
                                          std::uint64_t seed, const PermutationSource& permutation);

/// Likert ratings in [1, 8] for one (model, item) response.
struct EvaluationRow {
    std::string model;
    std::string item;
    std::array<double, 3> cx{};  // novelty, surprise, depth
    std::array<double, 4> cy{};  // metacognitive stimulation, reframing, autonomy, engagement
};

struct EvaluationTable {
    std::vector<EvaluationRow> rows;
    /// Throws ScoreOutOfRange for any rating outside [1, 8].
    void validate() const;
};

struct ModelScore {
    std::string model;
    std::size_t items = 0;
    double cx_mean = 0.0;
    double cy_mean = 0.0;
    double cci = 0.0;  // item mean of min(Cx, Cy)
};

/// Per-model scores in order of first appearance.
std::vector<ModelScore> cci_scores(const EvaluationTable& t);

struct Moments {
    double mean = 0.0;
    double std = 0.0;  // population (divide by n)
};

Moments population_moments(std::span<const double> values);

/// 50 + 10 (v - mean) / std with the population std over all values.
std::vector<double> t_scores(std::span<const double> values);

}  // namespace aqs
