#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpw {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads a line-delimited JSON file. Blank lines are skipped; a malformed
// line raises ParseError naming the 1-based line number.
std::vector<nlohmann::json> read_jsonl(const std::string& path);

// Calls fn(line_number, record) for every non-blank line.
void for_each_jsonl(const std::string& path,
                    const std::function<void(size_t, const nlohmann::json&)>& fn);

void write_jsonl(const std::string& path, const std::vector<std::string>& lines);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mpw
