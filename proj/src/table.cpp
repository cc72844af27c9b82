#include "compwalk/table.hpp"

#include "compwalk/numeric.hpp"

#include <json.hpp>

namespace compwalk {

namespace {

bool needs_quoting(const std::string& cell) {
    return cell.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_cell(const std::string& cell) {
    if (!needs_quoting(cell)) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string emit_csv(const OutputTable& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string emit_json(const OutputTable& t) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["meta"] = std::move(meta);
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return j.dump(2) + "\n";
}

OutputTable parse_json_table(const std::string& text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
    OutputTable t;
    for (const auto& [k, v] : j.at("meta").items()) t.meta.emplace_back(k, v.get<std::string>());
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    return t;
}

}  // namespace compwalk
