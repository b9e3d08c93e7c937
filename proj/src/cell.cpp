#include "tabinsight/cell.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tabinsight {

namespace {

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Days since 1970-01-01 for a proleptic Gregorian civil date.
// Howard Hinnant's days_from_civil algorithm.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

bool valid_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dmax = days[static_cast<std::size_t>(m - 1)];
    if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) dmax = 29;
    return d <= dmax;
}

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

std::optional<int> month_from_name(std::string_view name) {
    std::string lower;
    lower.reserve(name.size());
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
        if (lower == kMonthNames[i]) return static_cast<int>(i + 1);
        // Three-letter abbreviations ("Jan", "Feb", ...) are also accepted.
        if (lower.size() == 3 && kMonthNames[i].substr(0, 3) == lower) return static_cast<int>(i + 1);
    }
    return std::nullopt;
}

std::optional<DateTime> make_datetime(int y, int mo, int d, int h, int mi, int s) {
    if (!valid_date(y, mo, d)) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) return std::nullopt;
    std::int64_t days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
    return DateTime{days * 86400 + h * 3600 + mi * 60 + s};
}

// "YYYY-MM-DD" optionally followed by "[ T]HH:MM[:SS]" and an optional 'Z'.
std::optional<DateTime> parse_iso(std::string_view s) {
    int y, mo, d;
    if (!parse_fixed_uint(s, 0, 4, y)) return std::nullopt;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_fixed_uint(s, 5, 2, mo) || !parse_fixed_uint(s, 8, 2, d)) return std::nullopt;
    if (s.size() == 10) return make_datetime(y, mo, d, 0, 0, 0);
    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    int h, mi, sec = 0;
    if (!parse_fixed_uint(s, 11, 2, h)) return std::nullopt;
    if (s.size() < 16 || s[13] != ':') return std::nullopt;
    if (!parse_fixed_uint(s, 14, 2, mi)) return std::nullopt;
    std::size_t rest = 16;
    if (s.size() >= 19 && s[16] == ':') {
        if (!parse_fixed_uint(s, 17, 2, sec)) return std::nullopt;
        rest = 19;
    }
    if (rest < s.size() && !(rest + 1 == s.size() && s[rest] == 'Z')) return std::nullopt;
    return make_datetime(y, mo, d, h, mi, sec);
}

// "DD/MM/YYYY"
std::optional<DateTime> parse_dmy(std::string_view s) {
    if (s.size() != 10 || s[2] != '/' || s[5] != '/') return std::nullopt;
    int d, m, y;
    if (!parse_fixed_uint(s, 0, 2, d) || !parse_fixed_uint(s, 3, 2, m) || !parse_fixed_uint(s, 6, 4, y))
        return std::nullopt;
    return make_datetime(y, m, d, 0, 0, 0);
}

// "Month DD, YYYY" with full or three-letter month name.
std::optional<DateTime> parse_month_name(std::string_view s) {
    auto sp = s.find(' ');
    if (sp == std::string_view::npos) return std::nullopt;
    auto month = month_from_name(s.substr(0, sp));
    if (!month) return std::nullopt;
    std::string_view rest = trim(s.substr(sp + 1));
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto day = parse_int(trim(rest.substr(0, comma)));
    auto year = parse_int(trim(rest.substr(comma + 1)));
    if (!day || !year) return std::nullopt;
    return make_datetime(static_cast<int>(*year), *month, static_cast<int>(*day), 0, 0, 0);
}

}  // namespace

const char* column_type_name(ColumnType t) {
    switch (t) {
        case ColumnType::Integer: return "integer";
        case ColumnType::Float: return "float";
        case ColumnType::String: return "string";
        case ColumnType::DateTime: return "datetime";
    }
    return "string";
}

std::optional<ColumnType> column_type_from_name(std::string_view name) {
    if (name == "integer") return ColumnType::Integer;
    if (name == "float") return ColumnType::Float;
    if (name == "string") return ColumnType::String;
    if (name == "datetime") return ColumnType::DateTime;
    return std::nullopt;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_float(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    std::string buf(text);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<DateTime> parse_datetime(std::string_view text) {
    text = trim(text);
    if (text.size() < 8) return std::nullopt;
    if (auto v = parse_iso(text)) return v;
    if (auto v = parse_dmy(text)) return v;
    if (auto v = parse_month_name(text)) return v;
    return std::nullopt;
}

std::string format_datetime(DateTime dt) {
    std::int64_t days = dt.seconds / 86400;
    std::int64_t rem = dt.seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    int h = static_cast<int>(rem / 3600);
    int mi = static_cast<int>((rem % 3600) / 60);
    int s = static_cast<int>(rem % 60);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", y, mo, d, h, mi, s);
    return buf;
}

std::string render_cell(const Cell& c) {
    switch (c.index()) {
        case 0: return "";
        case 1: return std::to_string(std::get<std::int64_t>(c));
        case 2: {
            double v = std::get<double>(c);
            // Integral floats render without a trailing ".0" ambiguity;
            // %.12g keeps round-trippable precision for the rest.
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return buf;
        }
        case 3: return std::get<std::string>(c);
        case 4: return format_datetime(std::get<DateTime>(c));
    }
    return "";
}

namespace {

// Rank used to order cells of different variants: Null < numeric < DateTime < Str.
int type_rank(const Cell& c) {
    switch (c.index()) {
        case 0: return 0;
        case 1:
        case 2: return 1;
        case 4: return 2;
        default: return 3;
    }
}

double as_double(const Cell& c) {
    return c.index() == 1 ? static_cast<double>(std::get<std::int64_t>(c)) : std::get<double>(c);
}

}  // namespace

int compare_cells(const Cell& a, const Cell& b) {
    int ra = type_rank(a), rb = type_rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (ra) {
        case 0: return 0;
        case 1: {
            if (a.index() == 1 && b.index() == 1) {
                auto x = std::get<std::int64_t>(a), y = std::get<std::int64_t>(b);
                return x < y ? -1 : (x > y ? 1 : 0);
            }
            double x = as_double(a), y = as_double(b);
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        case 2: {
            auto x = std::get<DateTime>(a).seconds, y = std::get<DateTime>(b).seconds;
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        default: {
            const auto& x = std::get<std::string>(a);
            const auto& y = std::get<std::string>(b);
            return x < y ? -1 : (x > y ? 1 : 0);
        }
    }
}

bool cells_equal(const Cell& a, const Cell& b) {
    if (is_null(a) || is_null(b)) return is_null(a) && is_null(b);
    return compare_cells(a, b) == 0;
}

}  // namespace tabinsight
