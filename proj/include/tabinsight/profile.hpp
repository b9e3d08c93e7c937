#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tabinsight/table.hpp"

namespace tabinsight {

struct ColumnProfile {
    std::string name;
    ColumnType dtype = ColumnType::String;
    std::size_t position = 0;
    std::size_t missing_count = 0;
    std::size_t cardinality = 0;                       // distinct non-null values
    std::optional<std::pair<Cell, Cell>> extrema;      // numeric/datetime columns only
    double peak_frequency = 0.0;                       // mode count / row_count
    double entropy = 0.0;                              // bits
};

struct TableProfile {
    std::string table_id;
    std::size_t row_count = 0;
    std::vector<ColumnProfile> column_profiles;
};

// Shannon entropy in bits over the column's value distribution. Nulls are
// folded in as one extra symbol; constant columns score 0.
// Throws EmptyColumn for zero-row columns.
double entropy(const Column& col);

ColumnProfile profile_column(const Column& col, std::size_t position, std::size_t row_count);

// Parallel over columns when OpenMP is enabled; the serial variant is the
// reference the tests and the benchmark compare against.
TableProfile profile_table(const Table& t, const std::string& table_id);
TableProfile profile_table_serial(const Table& t, const std::string& table_id);

// Feature encoding consumed by the groupby predictor. Layout is versioned in
// the model file header; keep in sync with feature_names().
std::vector<double> profile_features(const ColumnProfile& p, std::size_t row_count);
const std::vector<std::string>& feature_names();

}  // namespace tabinsight
