#include "mpw/serp.hpp"

#include <chrono>
#include <cstdio>

namespace mpw {

std::optional<CalendarDate> CalendarDate::parse(const std::string& iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(iso.c_str(), "%4d-%2u-%2u", &y, &m, &d) != 3) return std::nullopt;
    if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
    return CalendarDate{y, m, d};
}

std::string CalendarDate::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
    return buf;
}

CalendarDate CalendarDate::plus_days(int days) const {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    sys_days sd = sys_days{ymd} + std::chrono::days{days};
    year_month_day out{sd};
    return CalendarDate{int(out.year()), unsigned(out.month()), unsigned(out.day())};
}

nlohmann::ordered_json serp_to_json(const Serp& serp) {
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& e : serp.entries) {
        results.push_back({
            {"id", e.id},
            {"title", e.title},
            {"content", e.content},
            {"date", e.date.to_string()},
        });
    }
    return nlohmann::ordered_json{
        {"search_query", serp.search_query},
        {"search_result", std::move(results)},
    };
}

nlohmann::ordered_json hitlog_to_json(const HitLog& log) {
    return nlohmann::ordered_json{
        {"hit", log.hit},
        {"matched_fact_keys", log.matched_fact_keys},
        {"is_compound_query", log.is_compound_query},
        {"query", log.query},
        {"call_index", log.call_index},
    };
}

HitLog hitlog_from_json(const nlohmann::json& j) {
    HitLog log;
    log.hit = j.value("hit", false);
    if (j.contains("matched_fact_keys")) {
        log.matched_fact_keys = j["matched_fact_keys"].get<std::vector<std::string>>();
    }
    log.is_compound_query = j.value("is_compound_query", false);
    log.query = j.value("query", std::string{});
    log.call_index = j.value("call_index", 0);
    return log;
}

}  // namespace mpw
