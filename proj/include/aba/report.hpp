#pragma once

// Structured run reports and their serializers. Serialization is fully
// deterministic: insertion-ordered keys, %.17g floats, no wall-clock values
// in the payload (timing goes to stderr), so reruns with the same seed are
// byte-identical.

#include <algorithm>
#include <ostream>
#include <sstream>
#include <variant>

#include "aba/types.hpp"

namespace aba::report {

using Value = std::variant<std::string, double, Cplx, std::int64_t, bool>;

struct Item {
    std::vector<std::pair<std::string, Value>> fields;

    template <typename T>
    Item& set(const std::string& key, const T& v) {
        if constexpr (std::is_same_v<T, bool>)
            fields.emplace_back(key, Value(v));
        else if constexpr (std::is_integral_v<T>)
            fields.emplace_back(key, Value(std::int64_t(v)));
        else if constexpr (std::is_floating_point_v<T>)
            fields.emplace_back(key, Value(double(v)));
        else if constexpr (std::is_convertible_v<T, std::string>)
            fields.emplace_back(key, Value(std::string(v)));
        else
            fields.emplace_back(key, Value(v));  // Cplx
        return *this;
    }
};

struct Report {
    std::string task;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<Item> items;
    bool pass = true;
};

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string value_to_json(const Value& v) {
    if (std::holds_alternative<std::string>(v))
        return "\"" + json_escape(std::get<std::string>(v)) + "\"";
    if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
    if (std::holds_alternative<Cplx>(v))
        return "\"" + format_complex(std::get<Cplx>(v)) + "\"";
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    return std::get<bool>(v) ? "true" : "false";
}

inline std::string value_to_text(const Value& v) {
    if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
    if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
    if (std::holds_alternative<Cplx>(v)) return format_complex(std::get<Cplx>(v));
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    return std::get<bool>(v) ? "true" : "false";
}

}  // namespace detail

/// One JSON object per line: a header, each item, then a summary.
inline void emit_jsonl(const Report& r, std::ostream& os) {
    os << "{\"type\":\"header\",\"task\":\"" << detail::json_escape(r.task) << "\",\"seed\":"
       << r.seed << ",\"config\":{";
    for (size_t i = 0; i < r.config_echo.size(); ++i) {
        if (i) os << ",";
        os << "\"" << detail::json_escape(r.config_echo[i].first) << "\":\""
           << detail::json_escape(r.config_echo[i].second) << "\"";
    }
    os << "}}\n";
    for (const Item& it : r.items) {
        os << "{\"type\":\"item\"";
        for (const auto& [k, v] : it.fields)
            os << ",\"" << detail::json_escape(k) << "\":" << detail::value_to_json(v);
        os << "}\n";
    }
    os << "{\"type\":\"summary\",\"items\":" << r.items.size()
       << ",\"pass\":" << (r.pass ? "true" : "false") << "}\n";
}

/// Header row from the union of item keys (insertion order), one row per item.
inline void emit_csv(const Report& r, std::ostream& os) {
    std::vector<std::string> cols;
    for (const Item& it : r.items)
        for (const auto& [k, v] : it.fields)
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const Item& it : r.items) {
        for (size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ",";
            for (const auto& [k, v] : it.fields)
                if (k == cols[i]) {
                    std::string cell = detail::value_to_text(v);
                    bool quote = cell.find(',') != std::string::npos;
                    os << (quote ? "\"" : "") << cell << (quote ? "\"" : "");
                    break;
                }
        }
        os << "\n";
    }
}

inline void emit_human(const Report& r, std::ostream& os) {
    os << "== task " << r.task << " (seed " << r.seed << ") ==\n";
    for (const auto& [k, v] : r.config_echo) os << "   " << k << " = " << v << "\n";
    for (const Item& it : r.items) {
        bool has_pass = false, passed = false;
        std::string name;
        for (const auto& [k, v] : it.fields) {
            if (k == "passed" && std::holds_alternative<bool>(v)) {
                has_pass = true;
                passed = std::get<bool>(v);
            }
            if (name.empty() && std::holds_alternative<std::string>(v))
                name = std::get<std::string>(v);
        }
        if (has_pass)
            os << (passed ? "[PASS] " : "[FAIL] ");
        else
            os << "       ";
        bool first = true;
        for (const auto& [k, v] : it.fields) {
            if (!first) os << "  ";
            os << k << "=" << detail::value_to_text(v);
            first = false;
        }
        os << "\n";
    }
    os << (r.pass ? "== ALL CHECKS PASSED ==" : "== FAILURES PRESENT ==") << "\n";
}

inline std::string serialize(const Report& r, const std::string& format) {
    std::ostringstream os;
    if (format == "json-lines") emit_jsonl(r, os);
    else if (format == "csv-summary") emit_csv(r, os);
    else if (format == "human-text") emit_human(r, os);
    else throw std::invalid_argument("unknown report format: " + format);
    return os.str();
}

}  // namespace aba::report
