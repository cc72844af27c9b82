#pragma once

#include <string>
#include <utility>
#include <vector>

namespace compwalk {

/// Column-ordered output table with string cells; exact rationals serialize
/// as "num/den", floats as shortest round-trip decimals.
struct OutputTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const OutputTable&) const = default;
};

std::string emit_csv(const OutputTable& t);
std::string emit_json(const OutputTable& t);

/// Inverse of emit_json; the round trip is exact.
OutputTable parse_json_table(const std::string& text);

}  // namespace compwalk
