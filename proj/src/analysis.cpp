#include "aqs/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "aqs/error.hpp"
#include "aqs/random.hpp"

namespace aqs {

void EmbeddingSet::validate() const {
    if (vectors.size() < 2) throw Error(ErrorCode::TooFewPoints, "embedding set '" + label + "' needs >= 2 vectors");
    const std::size_t d = vectors.front().size();
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "embedding set '" + label + "' has empty vectors");
    for (const auto& v : vectors) {
        require_same_dim(v.size(), d, "embedding set '" + label + "'");
        for (double x : v)
            if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "embedding set '" + label + "' has non-finite entry");
    }
}

double pearson(std::span<const double> u, std::span<const double> v) {
    require_same_dim(u.size(), v.size(), "pearson");
    if (u.size() < 2) throw Error(ErrorCode::InvalidArgument, "pearson needs at least two components");
    const double n = static_cast<double>(u.size());
    const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
    const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double suu = 0.0, svv = 0.0, suv = 0.0, raw_u = 0.0, raw_v = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double du = u[i] - mu;
        const double dv = v[i] - mv;
        suu += du * du;
        svv += dv * dv;
        suv += du * dv;
        raw_u += u[i] * u[i];
        raw_v += v[i] * v[i];
    }
    // Relative test: a constant vector leaves only rounding residue after centring.
    if (suu <= 1e-28 * raw_u || svv <= 1e-28 * raw_v) {
        throw Error(ErrorCode::ConstantVector, "pearson input has zero variance");
    }
    return std::clamp(suv / std::sqrt(suu * svv), -1.0, 1.0);
}

PcaResult pca_project(const RealRows& points, std::size_t components) {
    if (components == 0) throw Error(ErrorCode::InvalidArgument, "components must be >= 1");
    if (points.size() < components + 1) {
        throw Error(ErrorCode::TooFewPoints, "PCA needs at least components + 1 points");
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    const auto d = static_cast<Eigen::Index>(points.front().size());
    if (static_cast<std::size_t>(d) < components) {
        throw Error(ErrorCode::InvalidArgument, "components exceed data dimension");
    }
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        require_same_dim(points[i].size(), static_cast<std::size_t>(d), "pca_project");
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = points[i][j];
    }
    x.rowwise() -= x.colwise().mean();
    const double denom = static_cast<double>(n - 1);
    const double total = x.squaredNorm() / denom;

    // Eigen-decompose whichever of X^T X (d x d) or X X^T (n x n) is smaller;
    // both share their nonzero spectrum.
    const bool gram = d > n;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram ? Eigen::MatrixXd(x * x.transpose() / denom)
                                                               : Eigen::MatrixXd(x.transpose() * x / denom));
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "PCA eigensolver failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
    const Eigen::MatrixXd& evecs = solver.eigenvectors();
    const Eigen::Index m = evals.size();

    PcaResult out;
    out.coords.assign(points.size(), RealVector(components, 0.0));
    for (std::size_t c = 0; c < components; ++c) {
        const Eigen::Index col = m - 1 - static_cast<Eigen::Index>(c);
        Eigen::VectorXd axis = gram ? Eigen::VectorXd(x.transpose() * evecs.col(col)) : Eigen::VectorXd(evecs.col(col));
        const double len = axis.norm();
        if (len > 1e-300) axis /= len;
        else axis.setZero();
        Eigen::Index big = 0;
        for (Eigen::Index j = 1; j < axis.size(); ++j)
            if (std::abs(axis(j)) > std::abs(axis(big))) big = j;
        if (axis(big) < 0.0) axis = -axis;
        const Eigen::VectorXd proj = x * axis;
        for (Eigen::Index i = 0; i < n; ++i) out.coords[i][c] = proj(i);
        out.loadings.emplace_back(axis.data(), axis.data() + axis.size());
        out.explained.push_back(total > 0.0 ? std::max(0.0, evals(col)) / total : 0.0);
    }
    return out;
}

namespace {

double distance(const RealVector& a, const RealVector& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

void check_labels(const RealRows& coords, std::span<const int> labels) {
    require_same_dim(coords.size(), labels.size(), "cluster labels");
    for (int l : labels)
        if (l != 0 && l != 1) throw Error(ErrorCode::InvalidArgument, "cluster labels must be 0 or 1");
}

}  // namespace

double silhouette(const RealRows& coords, std::span<const int> labels) {
    check_labels(coords, labels);
    const std::size_t n = coords.size();
    std::array<std::size_t, 2> count{};
    for (int l : labels) ++count[l];
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int own = labels[i];
        if (count[own] < 2 || count[1 - own] == 0) continue;
        std::array<double, 2> sum{};
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum[labels[j]] += distance(coords[i], coords[j]);
        const double a = sum[own] / static_cast<double>(count[own] - 1);
        const double b = sum[1 - own] / static_cast<double>(count[1 - own]);
        const double scale = std::max(a, b);
        if (scale > 0.0) total += (b - a) / scale;
    }
    return total / static_cast<double>(n);
}

double centroid_ratio(const RealRows& coords, std::span<const int> labels) {
    check_labels(coords, labels);
    if (coords.empty()) return 0.0;
    const std::size_t d = coords.front().size();
    std::array<RealVector, 2> centroid{RealVector(d, 0.0), RealVector(d, 0.0)};
    std::array<std::size_t, 2> count{};
    for (std::size_t i = 0; i < coords.size(); ++i) {
        ++count[labels[i]];
        for (std::size_t k = 0; k < d; ++k) centroid[labels[i]][k] += coords[i][k];
    }
    if (count[0] == 0 || count[1] == 0) throw Error(ErrorCode::TooFewPoints, "both clusters must be non-empty");
    for (int c = 0; c < 2; ++c)
        for (double& v : centroid[c]) v /= static_cast<double>(count[c]);
    double within = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const double r = distance(coords[i], centroid[labels[i]]);
        within += r * r;
    }
    const double spread = std::sqrt(within / static_cast<double>(coords.size()));
    const double between = distance(centroid[0], centroid[1]);
    if (spread == 0.0) return between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return between / spread;
}

OrderEffectReport order_effect_test(const EmbeddingSet& a, const EmbeddingSet& b,
                                    std::size_t n_permutations, std::uint64_t seed) {
    if (a.vectors.size() < 3 || b.vectors.size() < 3) {
        throw Error(ErrorCode::TooFewPoints, "order_effect_test needs >= 3 points per set");
    }
    a.validate();
    b.validate();
    require_same_dim(a.dim(), b.dim(), "order_effect_test");
    if (n_permutations == 0) throw Error(ErrorCode::InvalidArgument, "n_permutations must be >= 1");

    RealRows pooled = a.vectors;
    pooled.insert(pooled.end(), b.vectors.begin(), b.vectors.end());
    std::vector<int> labels(pooled.size(), 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(a.vectors.size()), labels.end(), 1);

    const std::size_t comps = std::min<std::size_t>(2, a.dim());
    PcaResult pca = pca_project(pooled, comps);
    for (auto& row : pca.coords) row.resize(2, 0.0);

    OrderEffectReport rep;
    rep.label_a = a.label;
    rep.label_b = b.label;
    rep.n_permutations = n_permutations;
    rep.seed = seed;
    rep.explained = pca.explained;
    rep.silhouette = silhouette(pca.coords, labels);
    rep.centroid_ratio = centroid_ratio(pca.coords, labels);

    const double threshold = rep.centroid_ratio - 1e-12 * std::max(1.0, std::abs(rep.centroid_ratio));
    std::vector<int> shuffled(labels.size());
    for (std::size_t it = 0; it < n_permutations; ++it) {
        Rng rng = substream(seed, "order-effect-permutation", it);
        shuffled = labels;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (centroid_ratio(pca.coords, shuffled) >= threshold) ++rep.count_exceeding;
    }
    rep.p_value = static_cast<double>(rep.count_exceeding + 1) / static_cast<double>(n_permutations + 1);

    rep.projected.reserve(pca.coords.size());
    for (const auto& row : pca.coords) rep.projected.push_back({row[0], row[1]});
    rep.labels = std::move(labels);
    return rep;
}

namespace {

RealVector difference(std::span<const double> a, std::span<const double> b) {
    RealVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

void check_triple(std::span<const double> y, std::span<const double> yp, std::span<const double> x) {
    require_same_dim(y.size(), yp.size(), "interference Y'");
    require_same_dim(y.size(), x.size(), "interference X");
    if (y.size() < 3) throw Error(ErrorCode::InvalidArgument, "interference vectors need >= 3 components");
}

}  // namespace

InterferenceStats interference_stats(std::span<const double> y, std::span<const double> yp,
                                     std::span<const double> x) {
    check_triple(y, yp, x);
    return {pearson(yp, x), pearson(difference(yp, y), difference(x, y))};
}

InterferenceReport interference_surrogate(std::span<const double> y, std::span<const double> yp,
                                          std::span<const double> x, std::size_t n_shuffles,
                                          std::uint64_t seed) {
    return interference_surrogate(y, yp, x, n_shuffles, seed, [seed](std::size_t it, std::size_t n) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        Rng rng = substream(seed, "interference-shuffle", it);
        std::shuffle(perm.begin(), perm.end(), rng);
        return perm;
    });
}

InterferenceReport interference_surrogate(std::span<const double> y, std::span<const double> yp,
                                          std::span<const double> x, std::size_t n_shuffles,
                                          std::uint64_t seed, const PermutationSource& permutation) {
    if (n_shuffles == 0) throw Error(ErrorCode::InvalidArgument, "n_shuffles must be >= 1");
    const InterferenceStats base = interference_stats(y, yp, x);
    InterferenceReport rep;
    rep.r = base.r;
    rep.r_prime = base.r_prime;
    rep.n_shuffles = n_shuffles;
    rep.seed = seed;

    std::vector<double> samples;
    samples.reserve(n_shuffles);
    RealVector yr(y.size());
    for (std::size_t it = 0; it < n_shuffles; ++it) {
        const auto perm = permutation(it, y.size());
        require_same_dim(perm.size(), y.size(), "surrogate permutation");
        for (std::size_t k = 0; k < y.size(); ++k) yr[k] = y[perm[k]];
        samples.push_back(pearson(difference(yp, yr), difference(x, yr)));
    }
    const double n = static_cast<double>(samples.size());
    rep.r_surrogate_mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double s : samples) ss += (s - rep.r_surrogate_mean) * (s - rep.r_surrogate_mean);
        rep.r_surrogate_std = std::sqrt(ss / (n - 1.0));
    }
    return rep;
}

void EvaluationTable::validate() const {
    auto check = [](double v, const EvaluationRow& row) {
        if (!(v >= 1.0 && v <= 8.0)) {
            throw Error(ErrorCode::ScoreOutOfRange, "score " + std::to_string(v) + " for model '" + row.model +
                                                        "' item '" + row.item + "' is outside [1, 8]");
        }
    };
    for (const auto& row : rows) {
        for (double v : row.cx) check(v, row);
        for (double v : row.cy) check(v, row);
    }
}

std::vector<ModelScore> cci_scores(const EvaluationTable& t) {
    t.validate();
    std::vector<ModelScore> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& row : t.rows) {
        auto [it, fresh] = slot.try_emplace(row.model, out.size());
        if (fresh) out.push_back(ModelScore{row.model});
        ModelScore& s = out[it->second];
        const double cx = (row.cx[0] + row.cx[1] + row.cx[2]) / 3.0;
        const double cy = (row.cy[0] + row.cy[1] + row.cy[2] + row.cy[3]) / 4.0;
        s.cx_mean += cx;
        s.cy_mean += cy;
        s.cci += std::min(cx, cy);
        ++s.items;
    }
    for (auto& s : out) {
        const double n = static_cast<double>(s.items);
        s.cx_mean /= n;
        s.cy_mean /= n;
        s.cci /= n;
    }
    return out;
}

Moments population_moments(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, "moments of an empty vector");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / n)};
}

std::vector<double> t_scores(std::span<const double> values) {
    if (values.size() < 2) throw Error(ErrorCode::InvalidArgument, "t_scores needs >= 2 values");
    const auto [mean, sd] = population_moments(values);
    if (!(sd > 1e-14 * std::max(1.0, std::abs(mean)))) {
        throw Error(ErrorCode::ConstantVector, "t_scores input has zero spread");
    }
    std::vector<double> t;
    t.reserve(values.size());
    for (double v : values) t.push_back(50.0 + 10.0 * (v - mean) / sd);
    return t;
}

}  // namespace aqs
