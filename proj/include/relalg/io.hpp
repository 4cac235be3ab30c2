#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/network.hpp"

namespace relalg {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg);
    int line;
};

std::string trim(const std::string& s);
std::vector<std::string> split_ws(const std::string& s);
std::string read_text(const std::string& path);

// key/value lines of one record, with their line numbers; '#' starts a comment
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<int> lines;
    int first_line = 0;
    const std::string* get(const std::string& key) const;
};

// Records separated by blank lines.
std::vector<Record> parse_records(const std::string& text);

Algebra algebra_from_record(const Record& rec, const std::vector<std::string>& extra_keys = {});
Algebra parse_algebra(const std::string& text);
std::string format_algebra(const Algebra& ra);

Element parse_element(const Algebra& ra, const std::string& token, int line);
Network parse_network(const Algebra& ra, const std::string& text);
std::string format_network(const Algebra& ra, const Network& net);

}  // namespace relalg
