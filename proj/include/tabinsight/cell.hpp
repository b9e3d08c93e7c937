#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tabinsight {

// Calendar timestamp at second resolution, stored as seconds since the Unix
// epoch (proleptic Gregorian, no timezone). Round-trips through ISO-8601 text.
struct DateTime {
    std::int64_t seconds = 0;

    friend bool operator==(const DateTime&, const DateTime&) = default;
    friend auto operator<=>(const DateTime&, const DateTime&) = default;
};

enum class ColumnType { Integer, Float, String, DateTime };

const char* column_type_name(ColumnType t);
std::optional<ColumnType> column_type_from_name(std::string_view name);

// One table cell. Null is represented by std::monostate. Float cells are
// never NaN; values that fail numeric parsing stay Str or become Null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, DateTime>;

inline bool is_null(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

// Parsers are total: failure is reported through std::nullopt.
std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<double> parse_float(std::string_view text);

// Accepted formats: ISO-8601 date / datetime ("YYYY-MM-DD[ T]HH:MM[:SS]"),
// "DD/MM/YYYY" and "Month DD, YYYY".
std::optional<DateTime> parse_datetime(std::string_view text);

std::string format_datetime(DateTime dt);

// Text rendering used for display, CSV output and string-typed coercion.
// Null renders as the empty string.
std::string render_cell(const Cell& c);

// Total order used for sorting and group keys: Null < Int/Float (numeric
// order) < DateTime < Str. Int and Float compare by numeric value.
int compare_cells(const Cell& a, const Cell& b);

bool cells_equal(const Cell& a, const Cell& b);

}  // namespace tabinsight
