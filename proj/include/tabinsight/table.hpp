#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tabinsight/cell.hpp"

namespace tabinsight {

struct TableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyInput : TableError {
    using TableError::TableError;
};
struct DecodeError : TableError {
    using TableError::TableError;
};
struct EmptyColumn : TableError {
    using TableError::TableError;
};

struct Column {
    std::string name;
    ColumnType declared_type = ColumnType::String;
    std::vector<Cell> cells;
};

// Rectangular grid of typed cells. Immutable by convention once built:
// every operation returns a new Table.
struct Table {
    std::vector<Column> columns;
    std::size_t row_count = 0;

    const Column* find_column(std::string_view name) const;
    std::optional<std::size_t> column_index(std::string_view name) const;
};

struct CsvOptions {
    char delimiter = ',';
    bool has_header = true;
    std::size_t max_rows = 100000;
};

// RFC-4180 CSV ingestion. Accepts UTF-8 input, with Latin-1 as fallback for
// byte sequences that do not decode as UTF-8. All cells start out as
// Str (empty fields become Null); typing is a separate refinement step.
// Short rows are padded with Null, long rows truncated, duplicate header
// names deduplicated by suffixing _1, _2, ...
// Throws EmptyInput and DecodeError.
Table parse_csv(std::string_view bytes, const CsvOptions& opts = {});

// Integer if every non-null value parses as an integer; else Float if every
// non-null parses as a decimal; else DateTime if at least 95% of non-null
// values parse under the accepted date formats; else String. All-null
// columns are String.
ColumnType infer_column_type(const std::vector<std::optional<std::string>>& raw);

// Re-types every cell; values that fail to parse as `t` become Null.
Column coerce(const Column& column, ColumnType t);

// Convenience: infer and coerce every column of a freshly parsed table.
Table apply_type_inference(const Table& t);

// Deterministic row sample of min(k, row_count) rows. Row 0 is always
// included; the remaining rows are a seeded draw, emitted in table order.
Table sample_rows(const Table& t, std::size_t k, std::uint64_t seed);

// Serialization: {"columns":[{"name","type","cells":[...]}]} with Null as
// JSON null and DateTime as ISO-8601 text.
std::string table_to_json(const Table& t);
Table table_from_json(std::string_view json_text);

// RFC-4180 CSV rendering (quotes fields containing delimiter/quote/newline).
std::string table_to_csv(const Table& t);

std::string csv_escape(std::string_view field, char delimiter = ',');

}  // namespace tabinsight
