#include "timepref/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace timepref {

std::string format_fixed(Real value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (digits < 0) digits = 0;

    long double scale = 1.0L;
    for (int i = 0; i < digits; ++i) scale *= 10.0L;
    const long double scaled = static_cast<long double>(value) * scale;
    const long double fl = std::floor(scaled);
    const long double frac = scaled - fl;

    long long n;
    if (std::abs(frac - 0.5L) <= 1e-9L) {
        // decimal tie: round to the even scaled integer
        const long long f = static_cast<long long>(fl);
        n = (f % 2 == 0) ? f : f + 1;
    } else {
        n = static_cast<long long>(std::llroundl(scaled));
    }

    const bool negative = n < 0;
    unsigned long long mag = negative ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                                      : static_cast<unsigned long long>(n);
    std::string digits_str = std::to_string(mag);
    if (static_cast<int>(digits_str.size()) <= digits)
        digits_str.insert(0, digits + 1 - digits_str.size(), '0');

    std::string out;
    if (negative) out += '-';
    out += digits_str.substr(0, digits_str.size() - digits);
    if (digits > 0) {
        out += '.';
        out += digits_str.substr(digits_str.size() - digits);
    }
    return out;
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> widths;
    for (const auto& row : rows) {
        if (row.size() > widths.size()) widths.resize(row.size(), 0);
        for (size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    }
    std::ostringstream oss;
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            oss << row[c];
            if (c + 1 < row.size())
                oss << std::string(widths[c] - row[c].size() + 2, ' ');
        }
        oss << '\n';
    }
    return oss.str();
}

} // namespace timepref
