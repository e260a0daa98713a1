#include "mpw/text_util.hpp"

#include <algorithm>
#include <cctype>

namespace mpw {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

}  // namespace

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_run = false;
    for (unsigned char c : s) {
        if (is_space(c)) {
            in_run = true;
            continue;
        }
        if (in_run && !out.empty()) out.push_back(' ');
        in_run = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view s) {
    // Multi-byte punctuation that must separate tokens like its ASCII
    // counterparts (dashes, curly quotes, ellipsis, guillemets, middle dot).
    static const std::vector<std::string_view> kWidePunct = {
        "–", "—", "‘", "’", "“",
        "”", "…", "«", "»", "·",
    };
    std::string cleaned(s);
    for (const auto& p : kWidePunct) {
        size_t pos = 0;
        while ((pos = cleaned.find(p, pos)) != std::string::npos) {
            cleaned.replace(pos, p.size(), " ");
        }
    }
    std::string norm;
    norm.reserve(cleaned.size());
    for (unsigned char c : cleaned) {
        if ((c < 0x80 && std::ispunct(c)) || is_space(c)) {
            norm.push_back(' ');
        } else {
            norm.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < norm.size()) {
        while (i < norm.size() && norm[i] == ' ') ++i;
        size_t j = i;
        while (j < norm.size() && norm[j] != ' ') ++j;
        if (j > i) tokens.emplace_back(norm.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::unordered_set<std::string> token_set(std::string_view s) {
    auto tokens = tokenize(s);
    return {tokens.begin(), tokens.end()};
}

double jaccard(const std::unordered_set<std::string>& a,
               const std::unordered_set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    for (const auto& t : small) {
        if (large.count(t)) ++inter;
    }
    size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

bool contains(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return false;
    return haystack.find(needle) != std::string_view::npos;
}

bool icontains(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return false;
    return contains(to_lower_ascii(haystack), to_lower_ascii(needle));
}

}  // namespace mpw
