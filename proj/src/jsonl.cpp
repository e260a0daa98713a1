#include "mpw/jsonl.hpp"

#include "mpw/text_util.hpp"

#include <fstream>
#include <sstream>

namespace mpw {

void for_each_jsonl(const std::string& path,
                    const std::function<void(size_t, const nlohmann::json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": malformed record: " + e.what());
        }
        fn(line_no, record);
    }
}

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    std::vector<nlohmann::json> records;
    for_each_jsonl(path, [&](size_t, const nlohmann::json& r) { records.push_back(r); });
    return records;
}

void write_jsonl(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    for (const auto& line : lines) out << line << '\n';
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << content;
}

}  // namespace mpw
