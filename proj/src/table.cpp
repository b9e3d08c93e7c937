#include "tabinsight/table.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace tabinsight {

namespace {

bool is_valid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        std::size_t extra;
        if (c < 0x80) {
            extra = 0;
        } else if ((c >> 5) == 0x6) {
            extra = 1;
        } else if ((c >> 4) == 0xE) {
            extra = 2;
        } else if ((c >> 3) == 0x1E) {
            extra = 3;
        } else {
            return false;
        }
        if (i + extra >= bytes.size() && extra > 0) return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((static_cast<unsigned char>(bytes[i + k]) >> 6) != 0x2) return false;
        }
        i += extra + 1;
    }
    return true;
}

std::string latin1_to_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    for (unsigned char c : bytes) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

// RFC-4180 field splitter. Quoted fields may contain delimiters, newlines
// and doubled quotes.
std::vector<std::vector<std::string>> split_csv(std::string_view text, char delim) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started && field.empty()) {
            in_quotes = true;
            field_started = true;
        } else if (c == delim) {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() || !row.empty() || field_started) end_row();
        } else if (c == '\r') {
            // swallowed; \r\n handled by the \n branch
        } else {
            field.push_back(c);
            field_started = true;
        }
        ++i;
    }
    if (!field.empty() || !row.empty() || field_started) end_row();
    return rows;
}

std::vector<std::string> dedupe_names(std::vector<std::string> names) {
    std::unordered_set<std::string> seen;
    for (auto& name : names) {
        if (name.empty()) name = "column";
        if (!seen.insert(name).second) {
            int suffix = 1;
            std::string candidate;
            do {
                candidate = name + "_" + std::to_string(suffix++);
            } while (seen.count(candidate));
            name = candidate;
            seen.insert(name);
        }
    }
    return names;
}

Cell parse_cell_as(const std::string& text, ColumnType t) {
    switch (t) {
        case ColumnType::Integer:
            if (auto v = parse_int(text)) return *v;
            return std::monostate{};
        case ColumnType::Float:
            if (auto v = parse_float(text)) return *v;
            return std::monostate{};
        case ColumnType::DateTime:
            if (auto v = parse_datetime(text)) return *v;
            return std::monostate{};
        case ColumnType::String:
            return text;
    }
    return std::monostate{};
}

}  // namespace

const Column* Table::find_column(std::string_view name) const {
    for (const auto& col : columns) {
        if (col.name == name) return &col;
    }
    return nullptr;
}

std::optional<std::size_t> Table::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    return std::nullopt;
}

Table parse_csv(std::string_view bytes, const CsvOptions& opts) {
    std::string decoded;
    std::string_view text = bytes;
    // Strip a UTF-8 BOM if present.
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
        text.remove_prefix(3);
    }
    if (!is_valid_utf8(text)) {
        decoded = latin1_to_utf8(text);
        text = decoded;
        if (!is_valid_utf8(text)) throw DecodeError("input is neither UTF-8 nor Latin-1");
    }

    auto rows = split_csv(text, opts.delimiter);
    if (rows.empty()) throw EmptyInput("no rows in CSV input");

    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.size());
    if (width == 0) throw EmptyInput("no columns in CSV input");

    std::vector<std::string> names;
    std::size_t first_data_row = 0;
    if (opts.has_header) {
        names = rows[0];
        names.resize(width, "");
        first_data_row = 1;
        if (rows.size() == 1) throw EmptyInput("header-only CSV input");
    } else {
        names.reserve(width);
        for (std::size_t i = 0; i < width; ++i) names.push_back("column_" + std::to_string(i));
    }
    names = dedupe_names(std::move(names));

    std::size_t data_rows = rows.size() - first_data_row;
    if (data_rows > opts.max_rows) data_rows = opts.max_rows;

    Table table;
    table.row_count = data_rows;
    table.columns.resize(width);
    for (std::size_t c = 0; c < width; ++c) {
        table.columns[c].name = names[c];
        table.columns[c].declared_type = ColumnType::String;
        table.columns[c].cells.reserve(data_rows);
    }
    for (std::size_t r = 0; r < data_rows; ++r) {
        const auto& row = rows[first_data_row + r];
        for (std::size_t c = 0; c < width; ++c) {
            if (c < row.size() && !row[c].empty()) {
                table.columns[c].cells.emplace_back(row[c]);
            } else {
                table.columns[c].cells.emplace_back(std::monostate{});
            }
        }
    }
    return table;
}

ColumnType infer_column_type(const std::vector<std::optional<std::string>>& raw) {
    std::size_t non_null = 0;
    std::size_t ints = 0, floats = 0, dates = 0;
    for (const auto& v : raw) {
        if (!v) continue;
        ++non_null;
        if (parse_int(*v)) {
            ++ints;
            ++floats;  // every integer is also a valid decimal
        } else if (parse_float(*v)) {
            ++floats;
        }
        if (parse_datetime(*v)) ++dates;
    }
    if (non_null == 0) return ColumnType::String;
    if (ints == non_null) return ColumnType::Integer;
    if (floats == non_null) return ColumnType::Float;
    if (static_cast<double>(dates) >= 0.95 * static_cast<double>(non_null)) return ColumnType::DateTime;
    return ColumnType::String;
}

Column coerce(const Column& column, ColumnType t) {
    Column out;
    out.name = column.name;
    out.declared_type = t;
    out.cells.reserve(column.cells.size());
    for (const auto& cell : column.cells) {
        if (is_null(cell)) {
            out.cells.emplace_back(std::monostate{});
            continue;
        }
        if (t == ColumnType::String) {
            out.cells.emplace_back(render_cell(cell));
            continue;
        }
        // Already the target representation? Keep it (Integer is acceptable
        // inside a Float column).
        switch (t) {
            case ColumnType::Integer:
                if (cell.index() == 1) {
                    out.cells.push_back(cell);
                    continue;
                }
                break;
            case ColumnType::Float:
                if (cell.index() == 1 || cell.index() == 2) {
                    out.cells.push_back(cell);
                    continue;
                }
                break;
            case ColumnType::DateTime:
                if (cell.index() == 4) {
                    out.cells.push_back(cell);
                    continue;
                }
                break;
            default: break;
        }
        out.cells.push_back(parse_cell_as(render_cell(cell), t));
    }
    return out;
}

Table apply_type_inference(const Table& t) {
    Table out;
    out.row_count = t.row_count;
    out.columns.reserve(t.columns.size());
    for (const auto& col : t.columns) {
        std::vector<std::optional<std::string>> raw;
        raw.reserve(col.cells.size());
        for (const auto& cell : col.cells) {
            if (is_null(cell)) {
                raw.emplace_back(std::nullopt);
            } else {
                raw.emplace_back(render_cell(cell));
            }
        }
        out.columns.push_back(coerce(col, infer_column_type(raw)));
    }
    return out;
}

Table sample_rows(const Table& t, std::size_t k, std::uint64_t seed) {
    if (k == 0) k = 1;
    std::size_t n = t.row_count;
    std::size_t take = std::min(k, n);

    std::vector<std::size_t> picked;
    picked.reserve(take);
    if (take > 0) picked.push_back(0);
    if (take > 1) {
        std::vector<std::size_t> rest(n - 1);
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = i + 1;
        std::mt19937_64 rng(seed);
        // Partial Fisher-Yates: draw take-1 rows from [1, n).
        for (std::size_t i = 0; i < take - 1; ++i) {
            std::uniform_int_distribution<std::size_t> dist(i, rest.size() - 1);
            std::swap(rest[i], rest[dist(rng)]);
        }
        rest.resize(take - 1);
        std::sort(rest.begin(), rest.end());
        picked.insert(picked.end(), rest.begin(), rest.end());
    }

    Table out;
    out.row_count = picked.size();
    out.columns.reserve(t.columns.size());
    for (const auto& col : t.columns) {
        Column c;
        c.name = col.name;
        c.declared_type = col.declared_type;
        c.cells.reserve(picked.size());
        for (std::size_t r : picked) c.cells.push_back(col.cells[r]);
        out.columns.push_back(std::move(c));
    }
    return out;
}

namespace {

nlohmann::ordered_json cell_to_json(const Cell& c) {
    switch (c.index()) {
        case 0: return nullptr;
        case 1: return std::get<std::int64_t>(c);
        case 2: return std::get<double>(c);
        case 3: return std::get<std::string>(c);
        case 4: return format_datetime(std::get<DateTime>(c));
    }
    return nullptr;
}

Cell cell_from_json(const nlohmann::json& j, ColumnType t) {
    if (j.is_null()) return std::monostate{};
    switch (t) {
        case ColumnType::Integer: return j.get<std::int64_t>();
        case ColumnType::Float:
            if (j.is_number_integer()) return j.get<std::int64_t>();
            return j.get<double>();
        case ColumnType::DateTime: {
            auto v = parse_datetime(j.get<std::string>());
            if (!v) throw DecodeError("bad datetime in table JSON: " + j.get<std::string>());
            return *v;
        }
        case ColumnType::String: return j.get<std::string>();
    }
    return std::monostate{};
}

}  // namespace

std::string table_to_json(const Table& t) {
    nlohmann::ordered_json doc;
    doc["columns"] = nlohmann::ordered_json::array();
    for (const auto& col : t.columns) {
        nlohmann::ordered_json jcol;
        jcol["name"] = col.name;
        jcol["type"] = column_type_name(col.declared_type);
        auto cells = nlohmann::ordered_json::array();
        for (const auto& cell : col.cells) cells.push_back(cell_to_json(cell));
        jcol["cells"] = std::move(cells);
        doc["columns"].push_back(std::move(jcol));
    }
    return doc.dump();
}

Table table_from_json(std::string_view json_text) {
    auto doc = nlohmann::json::parse(json_text);
    Table t;
    for (const auto& jcol : doc.at("columns")) {
        Column col;
        col.name = jcol.at("name").get<std::string>();
        auto type = column_type_from_name(jcol.at("type").get<std::string>());
        if (!type) throw DecodeError("unknown column type in table JSON");
        col.declared_type = *type;
        for (const auto& jc : jcol.at("cells")) col.cells.push_back(cell_from_json(jc, *type));
        t.columns.push_back(std::move(col));
    }
    t.row_count = t.columns.empty() ? 0 : t.columns.front().cells.size();
    for (const auto& col : t.columns) {
        if (col.cells.size() != t.row_count) throw DecodeError("ragged columns in table JSON");
    }
    return t;
}

std::string csv_escape(std::string_view field, char delimiter) {
    bool needs_quotes = field.find_first_of("\"\n\r") != std::string_view::npos ||
                        field.find(delimiter) != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string table_to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out.push_back(',');
        out += csv_escape(t.columns[c].name);
    }
    out.push_back('\n');
    for (std::size_t r = 0; r < t.row_count; ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out.push_back(',');
            out += csv_escape(render_cell(t.columns[c].cells[r]));
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace tabinsight
