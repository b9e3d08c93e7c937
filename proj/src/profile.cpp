#include "tabinsight/profile.hpp"

#include <cmath>
#include <map>

namespace tabinsight {

namespace {

struct CellKeyLess {
    bool operator()(const Cell& a, const Cell& b) const { return compare_cells(a, b) < 0; }
};

std::map<Cell, std::size_t, CellKeyLess> value_histogram(const Column& col) {
    std::map<Cell, std::size_t, CellKeyLess> hist;
    for (const auto& cell : col.cells) {
        if (!is_null(cell)) ++hist[cell];
    }
    return hist;
}

}  // namespace

double entropy(const Column& col) {
    if (col.cells.empty()) throw EmptyColumn("entropy of empty column '" + col.name + "'");
    auto hist = value_histogram(col);
    std::size_t nulls = 0;
    for (const auto& cell : col.cells) {
        if (is_null(cell)) ++nulls;
    }
    const double n = static_cast<double>(col.cells.size());
    double h = 0.0;
    auto add = [&](std::size_t count) {
        if (count == 0) return;
        double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    };
    for (const auto& [value, count] : hist) add(count);
    add(nulls);
    return h < 0.0 ? 0.0 : h;
}

ColumnProfile profile_column(const Column& col, std::size_t position, std::size_t row_count) {
    if (col.cells.empty() || row_count == 0) {
        throw EmptyColumn("profile of empty column '" + col.name + "'");
    }
    ColumnProfile p;
    p.name = col.name;
    p.dtype = col.declared_type;
    p.position = position;

    auto hist = value_histogram(col);
    std::size_t mode_count = 0;
    for (const auto& [value, count] : hist) mode_count = std::max(mode_count, count);
    for (const auto& cell : col.cells) {
        if (is_null(cell)) ++p.missing_count;
    }
    p.cardinality = hist.size();
    p.peak_frequency = static_cast<double>(mode_count) / static_cast<double>(row_count);
    p.entropy = entropy(col);

    if (col.declared_type != ColumnType::String && !hist.empty()) {
        p.extrema = std::make_pair(hist.begin()->first, hist.rbegin()->first);
    }
    return p;
}

TableProfile profile_table_serial(const Table& t, const std::string& table_id) {
    TableProfile profile;
    profile.table_id = table_id;
    profile.row_count = t.row_count;
    profile.column_profiles.resize(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        profile.column_profiles[i] = profile_column(t.columns[i], i, t.row_count);
    }
    return profile;
}

TableProfile profile_table(const Table& t, const std::string& table_id) {
    // Exceptions must not escape the parallel region; reject empty columns up front.
    if (t.row_count == 0 && !t.columns.empty()) {
        throw EmptyColumn("profile of zero-row table '" + table_id + "'");
    }
    TableProfile profile;
    profile.table_id = table_id;
    profile.row_count = t.row_count;
    profile.column_profiles.resize(t.columns.size());
    const std::int64_t n = static_cast<std::int64_t>(t.columns.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        profile.column_profiles[static_cast<std::size_t>(i)] =
            profile_column(t.columns[static_cast<std::size_t>(i)], static_cast<std::size_t>(i), t.row_count);
    }
    return profile;
}

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = {
        "dtype_integer", "dtype_float",     "dtype_string", "dtype_datetime", "position",
        "missing_frac",  "cardinality_frac", "peak_frequency", "entropy"};
    return names;
}

std::vector<double> profile_features(const ColumnProfile& p, std::size_t row_count) {
    const double n = row_count == 0 ? 1.0 : static_cast<double>(row_count);
    std::vector<double> f(9, 0.0);
    switch (p.dtype) {
        case ColumnType::Integer: f[0] = 1.0; break;
        case ColumnType::Float: f[1] = 1.0; break;
        case ColumnType::String: f[2] = 1.0; break;
        case ColumnType::DateTime: f[3] = 1.0; break;
    }
    f[4] = static_cast<double>(p.position);
    f[5] = static_cast<double>(p.missing_count) / n;
    f[6] = static_cast<double>(p.cardinality) / n;
    f[7] = p.peak_frequency;
    f[8] = p.entropy;
    return f;
}

}  // namespace tabinsight
