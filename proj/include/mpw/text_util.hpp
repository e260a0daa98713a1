#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mpw {

std::string trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

// Collapses every whitespace run to a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Lowercases ASCII, maps ASCII punctuation to spaces, splits on whitespace.
std::vector<std::string> tokenize(std::string_view s);
std::unordered_set<std::string> token_set(std::string_view s);

double jaccard(const std::unordered_set<std::string>& a,
               const std::unordered_set<std::string>& b);

bool contains(std::string_view haystack, std::string_view needle);

// Case-insensitive (ASCII) substring test.
bool icontains(std::string_view haystack, std::string_view needle);

}  // namespace mpw
