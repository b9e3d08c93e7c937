#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tabinsight/profile.hpp"

namespace tabinsight {

struct TreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentFeatures : TreeError {
    using TreeError::TreeError;
};
struct SchemaMismatch : TreeError {
    using TreeError::TreeError;
};

struct TreeParams {
    std::size_t max_depth = 8;
    std::size_t min_samples_leaf = 5;
};

struct TrainingSample {
    std::vector<double> features;
    int label = 0;  // {0, 1}
};

// CART-style binary classification tree grown by Gini impurity minimization.
// A split is only made when neither child's impurity exceeds the parent's;
// ties between candidate splits go to the lower feature index.
class DecisionTree {
  public:
    struct Node {
        bool is_leaf = true;
        std::size_t feature_index = 0;
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::array<double, 2> class_probabilities = {0.0, 0.0};
    };

    static DecisionTree train(const std::vector<TrainingSample>& dataset, const TreeParams& params,
                              const std::vector<std::string>& feature_schema = feature_names());

    // Probability of class 1 for a feature vector of the training schema.
    double predict(const std::vector<double>& features) const;

    std::size_t feature_count() const { return feature_count_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const TreeParams& params() const { return params_; }
    const std::vector<std::string>& schema() const { return schema_; }

    // Versioned JSON: {schema_version, feature_names, params, nodes}.
    std::string to_json() const;
    static DecisionTree from_json(const std::string& text);

  private:
    std::vector<Node> nodes_;
    std::size_t feature_count_ = 0;
    TreeParams params_;
    std::vector<std::string> schema_;
};

struct GroupbyCandidate {
    std::string column_name;
    double score = 0.0;  // probability in [0, 1]
    enum class Role { GroupKey, AggregateTarget } role = Role::GroupKey;
};

// Scores every column as a grouping-key candidate; returns a permutation of
// the profile's column names, scores non-increasing (ties keep table order).
std::vector<GroupbyCandidate> predict_groupby(const DecisionTree& tree, const TableProfile& profile);

// Numeric columns ranked by entropy, highest first, as aggregation targets.
std::vector<GroupbyCandidate> predict_aggregate_targets(const TableProfile& profile);

// Synthetic training corpus for the groupby predictor: low-cardinality,
// low-entropy string-ish columns are positives. A small fraction of labels
// is flipped so the corpus is not trivially separable.
std::vector<TrainingSample> synthetic_groupby_corpus(std::size_t n, std::uint64_t seed);

}  // namespace tabinsight
