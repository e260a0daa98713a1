#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mpw {

inline constexpr int kSerpEntryCount = 4;

struct CalendarDate {
    int year = 2027;
    unsigned month = 1;
    unsigned day = 1;

    static std::optional<CalendarDate> parse(const std::string& iso);  // "YYYY-MM-DD"
    std::string to_string() const;
    CalendarDate plus_days(int days) const;

    bool operator==(const CalendarDate&) const = default;
};

struct SerpEntry {
    int id = 0;
    std::string title;
    std::string content;
    CalendarDate date;

    bool operator==(const SerpEntry&) const = default;
};

// A simulated results page. Invariant: exactly kSerpEntryCount entries.
struct Serp {
    std::string search_query;
    std::vector<SerpEntry> entries;

    bool operator==(const Serp&) const = default;
};

// Per-tool-call record of what the engine decided about a query.
struct HitLog {
    bool hit = false;
    std::vector<std::string> matched_fact_keys;  // at most one element
    bool is_compound_query = false;
    std::string query;
    int call_index = 0;  // 1-based, assigned by the orchestrator

    bool operator==(const HitLog&) const = default;
};

nlohmann::ordered_json serp_to_json(const Serp& serp);
nlohmann::ordered_json hitlog_to_json(const HitLog& log);
HitLog hitlog_from_json(const nlohmann::json& j);

}  // namespace mpw
