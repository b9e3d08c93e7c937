#include "tabinsight/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

namespace tabinsight {

namespace {

double gini(std::size_t pos, std::size_t total) {
    if (total == 0) return 0.0;
    double p = static_cast<double>(pos) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double weighted_gini = std::numeric_limits<double>::infinity();
};

struct Builder {
    const std::vector<TrainingSample>& data;
    const TreeParams& params;
    std::vector<DecisionTree::Node> nodes;

    std::int32_t build(std::vector<std::size_t> idx, std::size_t depth) {
        std::size_t pos = 0;
        for (std::size_t i : idx) pos += static_cast<std::size_t>(data[i].label);
        const double parent_gini = gini(pos, idx.size());

        auto make_leaf = [&]() -> std::int32_t {
            DecisionTree::Node leaf;
            leaf.is_leaf = true;
            double p1 = idx.empty() ? 0.0 : static_cast<double>(pos) / static_cast<double>(idx.size());
            leaf.class_probabilities = {1.0 - p1, p1};
            nodes.push_back(leaf);
            return static_cast<std::int32_t>(nodes.size() - 1);
        };

        if (depth >= params.max_depth || idx.size() < 2 * params.min_samples_leaf || pos == 0 ||
            pos == idx.size()) {
            return make_leaf();
        }

        const std::size_t n_features = data[idx[0]].features.size();
        SplitChoice best;
        for (std::size_t f = 0; f < n_features; ++f) {
            std::vector<std::pair<double, int>> vals;
            vals.reserve(idx.size());
            for (std::size_t i : idx) vals.emplace_back(data[i].features[f], data[i].label);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::size_t left_n = 0, left_pos = 0;
            const std::size_t total_n = vals.size();
            for (std::size_t i = 0; i + 1 < total_n; ++i) {
                ++left_n;
                left_pos += static_cast<std::size_t>(vals[i].second);
                if (vals[i].first == vals[i + 1].first) continue;
                std::size_t right_n = total_n - left_n;
                if (left_n < params.min_samples_leaf || right_n < params.min_samples_leaf) continue;
                std::size_t right_pos = pos - left_pos;
                double gl = gini(left_pos, left_n);
                double gr = gini(right_pos, right_n);
                // Per-child non-increase rule: a split never produces a child
                // more impure than its parent.
                const double eps = 1e-12;
                if (gl > parent_gini + eps || gr > parent_gini + eps) continue;
                double weighted = (static_cast<double>(left_n) * gl + static_cast<double>(right_n) * gr) /
                                  static_cast<double>(total_n);
                // Strict improvement on ties keeps the lowest feature index.
                if (weighted + eps < best.weighted_gini) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = 0.5 * (vals[i].first + vals[i + 1].first);
                    best.weighted_gini = weighted;
                }
            }
        }
        if (!best.found || best.weighted_gini >= parent_gini - 1e-12) return make_leaf();

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            if (data[i].features[best.feature] <= best.threshold) {
                left_idx.push_back(i);
            } else {
                right_idx.push_back(i);
            }
        }
        idx.clear();
        idx.shrink_to_fit();

        DecisionTree::Node node;
        node.is_leaf = false;
        node.feature_index = best.feature;
        node.threshold = best.threshold;
        nodes.push_back(node);
        std::size_t self = nodes.size() - 1;
        std::int32_t l = build(std::move(left_idx), depth + 1);
        std::int32_t r = build(std::move(right_idx), depth + 1);
        nodes[self].left = l;
        nodes[self].right = r;
        return static_cast<std::int32_t>(self);
    }
};

}  // namespace

DecisionTree DecisionTree::train(const std::vector<TrainingSample>& dataset, const TreeParams& params,
                                 const std::vector<std::string>& feature_schema) {
    if (dataset.empty()) throw InconsistentFeatures("empty training set");
    const std::size_t width = dataset.front().features.size();
    for (const auto& s : dataset) {
        if (s.features.size() != width) throw InconsistentFeatures("ragged feature vectors");
    }

    DecisionTree tree;
    tree.feature_count_ = width;
    tree.params_ = params;
    tree.schema_ = feature_schema;

    std::vector<std::size_t> idx(dataset.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Builder builder{dataset, params, {}};
    builder.build(std::move(idx), 0);
    tree.nodes_ = std::move(builder.nodes);
    return tree;
}

double DecisionTree::predict(const std::vector<double>& features) const {
    if (features.size() != feature_count_) {
        throw SchemaMismatch("feature vector width " + std::to_string(features.size()) +
                             " does not match trained width " + std::to_string(feature_count_));
    }
    std::size_t at = 0;
    while (!nodes_[at].is_leaf) {
        const auto& n = nodes_[at];
        at = static_cast<std::size_t>(features[n.feature_index] <= n.threshold ? n.left : n.right);
    }
    return nodes_[at].class_probabilities[1];
}

std::string DecisionTree::to_json() const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["feature_names"] = schema_;
    doc["params"] = {{"max_depth", params_.max_depth}, {"min_samples_leaf", params_.min_samples_leaf}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& n : nodes_) {
        nlohmann::ordered_json jn;
        if (n.is_leaf) {
            jn["class_probabilities"] = n.class_probabilities;
        } else {
            jn["feature_index"] = n.feature_index;
            jn["threshold"] = n.threshold;
            jn["left"] = n.left;
            jn["right"] = n.right;
        }
        arr.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(arr);
    return doc.dump(2);
}

DecisionTree DecisionTree::from_json(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    if (doc.at("schema_version").get<int>() != 1) throw SchemaMismatch("unsupported tree schema version");
    DecisionTree tree;
    tree.schema_ = doc.at("feature_names").get<std::vector<std::string>>();
    tree.feature_count_ = tree.schema_.size();
    tree.params_.max_depth = doc.at("params").at("max_depth").get<std::size_t>();
    tree.params_.min_samples_leaf = doc.at("params").at("min_samples_leaf").get<std::size_t>();
    for (const auto& jn : doc.at("nodes")) {
        Node n;
        if (jn.contains("class_probabilities")) {
            n.is_leaf = true;
            auto probs = jn.at("class_probabilities").get<std::vector<double>>();
            n.class_probabilities = {probs.at(0), probs.at(1)};
        } else {
            n.is_leaf = false;
            n.feature_index = jn.at("feature_index").get<std::size_t>();
            n.threshold = jn.at("threshold").get<double>();
            n.left = jn.at("left").get<std::int32_t>();
            n.right = jn.at("right").get<std::int32_t>();
        }
        tree.nodes_.push_back(n);
    }
    if (tree.nodes_.empty()) throw SchemaMismatch("tree has no nodes");
    return tree;
}

std::vector<GroupbyCandidate> predict_groupby(const DecisionTree& tree, const TableProfile& profile) {
    std::vector<GroupbyCandidate> out;
    out.reserve(profile.column_profiles.size());
    for (const auto& cp : profile.column_profiles) {
        GroupbyCandidate c;
        c.column_name = cp.name;
        c.score = tree.predict(profile_features(cp, profile.row_count));
        c.role = GroupbyCandidate::Role::GroupKey;
        out.push_back(std::move(c));
    }
    // Stable: equal scores keep table order.
    std::stable_sort(out.begin(), out.end(),
                     [](const GroupbyCandidate& a, const GroupbyCandidate& b) { return a.score > b.score; });
    return out;
}

std::vector<GroupbyCandidate> predict_aggregate_targets(const TableProfile& profile) {
    std::vector<GroupbyCandidate> out;
    for (const auto& cp : profile.column_profiles) {
        if (cp.dtype != ColumnType::Integer && cp.dtype != ColumnType::Float) continue;
        GroupbyCandidate c;
        c.column_name = cp.name;
        c.score = cp.entropy;
        c.role = GroupbyCandidate::Role::AggregateTarget;
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const GroupbyCandidate& a, const GroupbyCandidate& b) { return a.score > b.score; });
    // Scores are probabilities downstream; squash entropy ranks into (0, 1].
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].score = 1.0 / (1.0 + static_cast<double>(i));
    }
    return out;
}

std::vector<TrainingSample> synthetic_groupby_corpus(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<TrainingSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool positive = (i % 2) == 0;
        TrainingSample s;
        s.label = positive ? 1 : 0;

        ColumnProfile p;
        p.position = static_cast<std::size_t>(unit(rng) * 12.0);
        const std::size_t rows = 200;
        if (positive) {
            // Groupable: string or integer code column, few distinct values,
            // one value dominating a chunk of the rows.
            p.dtype = unit(rng) < 0.8 ? ColumnType::String : ColumnType::Integer;
            p.cardinality = 2 + static_cast<std::size_t>(unit(rng) * 10.0);
            p.peak_frequency = 0.2 + 0.6 * unit(rng);
            p.entropy = 0.5 + 2.5 * unit(rng);
            p.missing_count = static_cast<std::size_t>(unit(rng) * 8.0);
        } else {
            // Measure-like: numeric or near-unique free text.
            double which = unit(rng);
            p.dtype = which < 0.5 ? ColumnType::Float : (which < 0.8 ? ColumnType::Integer : ColumnType::String);
            p.cardinality = 120 + static_cast<std::size_t>(unit(rng) * 80.0);
            p.peak_frequency = 0.005 + 0.05 * unit(rng);
            p.entropy = 5.0 + 2.5 * unit(rng);
            p.missing_count = static_cast<std::size_t>(unit(rng) * 8.0);
        }
        // 4% label noise keeps the corpus from being trivially separable.
        if (unit(rng) < 0.04) s.label = 1 - s.label;
        s.features = profile_features(p, rows);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace tabinsight
