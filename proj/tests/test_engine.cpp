#include "mpw/engine.hpp"

#include "mpw/serp.hpp"
#include "support/fixtures.hpp"
#include "support/mock_clients.hpp"

#include <doctest.h>

#include <random>

using namespace mpw;

TEST_CASE("classify_query on the guidance-box exemplars") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();
    CHECK(engine.classify_query("Barcelona 2023-24 season home win rate", s) ==
          QueryClass::Atomic);
    CHECK(engine.classify_query("Which has a higher home win rate, Barcelona or Real Madrid?",
                                s) == QueryClass::Compound);
    CHECK(engine.classify_query("", s) == QueryClass::LowQuality);
    CHECK(engine.classify_query("   \t  ", s) == QueryClass::LowQuality);
    CHECK(engine.classify_query(std::string(600, 'x'), s) == QueryClass::LowQuality);
}

TEST_CASE("classification ignores whether a fact matches") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();
    // Atomic in shape, no corresponding fact: must stay atomic, not compound.
    CHECK(engine.classify_query("Erling Haaland 2027-28 Premier League clean sheets kept", s) ==
          QueryClass::Atomic);
}

TEST_CASE("verbatim case-study queries stay atomic despite shared context tokens") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();
    for (const auto& fact : s.facts) {
        CHECK(engine.classify_query(fact.key, s) == QueryClass::Atomic);
    }
    // The question itself bundles both players and says "compare".
    CHECK(engine.classify_query(s.question, s) == QueryClass::Compound);
}

TEST_CASE("match_fact on the case-study fixture") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();

    auto key = engine.match_fact("Bruno Guimarães 2027-28 Premier League fouls against", s);
    REQUIRE(key.has_value());
    CHECK(*key == "Bruno Guimarães 2027-28 Premier League fouls against");

    CHECK_FALSE(engine.match_fact("quantum beekeeping subsidies", s).has_value());

    key = engine.match_fact("Rúben Dias 2027-28 Premier League interceptions", s);
    REQUIRE(key.has_value());
    CHECK(*key == "Rúben Dias 2027-28 Premier League interceptions");
}

TEST_CASE("match_fact refuses ties") {
    ScriptedEngine engine;
    // Two keys with identical token sets: the best score is not unique.
    Scenario s = test::tiny_scenario("tie", {{"alpha beta", "1 unit", FactKind::Measurement},
                                             {"beta alpha", "2 units", FactKind::Measurement}});
    CHECK_FALSE(engine.match_fact("alpha beta", s).has_value());
}

TEST_CASE("generate regime 1: truth entry carries the matched value") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();
    EngineResult r =
        engine.generate("Bruno Guimarães 2027-28 Premier League fouls against", s);
    REQUIRE(r.ok);
    CHECK(r.log.hit);
    CHECK_FALSE(r.log.is_compound_query);
    REQUIRE(r.log.matched_fact_keys.size() == 1);
    REQUIRE(r.serp.entries.size() == 4);
    CHECK(r.serp.entries[0].content.find("90 fouls against") != std::string::npos);
    CHECK(leak_check(r.serp, r.log, s).empty());
}

TEST_CASE("generate regime 3: the full question is gated") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();
    EngineResult r = engine.generate(s.question, s);
    REQUIRE(r.ok);
    CHECK_FALSE(r.log.hit);
    CHECK(r.log.is_compound_query);
    CHECK(r.log.matched_fact_keys.empty());
    CHECK(r.serp.entries.size() == 4);
    CHECK(leak_check(r.serp, r.log, s).empty());
}

TEST_CASE("generate regime 2: atomic query about an absent entity") {
    ScriptedEngine engine;
    const Scenario s = test::case_scenario();
    EngineResult r = engine.generate("Erling Haaland 2027-28 Premier League goal tally", s);
    REQUIRE(r.ok);
    CHECK_FALSE(r.log.hit);
    CHECK_FALSE(r.log.is_compound_query);
    CHECK(r.serp.entries.size() == 4);
    CHECK(leak_check(r.serp, r.log, s).empty());
}

TEST_CASE("scripted generate is deterministic") {
    ScriptedEngine engine;
    const Scenario s = test::appendix_scenario();
    for (const std::string& query :
         {std::string("Ethan Graham — Official Match Minutes"), s.question,
          std::string("weather in 2027")}) {
        EngineResult a = engine.generate(query, s);
        EngineResult b = engine.generate(query, s);
        CHECK(a.serp == b.serp);
        CHECK(a.log == b.log);
        CHECK(serp_to_json(a.serp).dump() == serp_to_json(b.serp).dump());
    }
}

TEST_CASE("leak_check flags fact values and ground truth under hit=false") {
    const Scenario s = test::case_scenario();
    ScriptedEngine engine;
    Serp serp = engine.background_serp("some query", s);
    serp.entries[2].content += " Insiders put the figure at 75 key passes.";
    HitLog log;
    log.query = "some query";
    auto violations = leak_check(serp, log, s);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].entry_id == 3);
    CHECK(violations[0].fact_key == "Bruno Guimarães 2027-28 Premier League key passes");

    Serp gt_leak = engine.noise_serp("another query", s);
    gt_leak.entries[0].title = "Why Rúben Dias will win this debate";
    violations = leak_check(gt_leak, log, s);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].fact_key.empty());
    CHECK(violations[0].description.find("ground truth") != std::string::npos);
}

TEST_CASE("leak_check permits the matched value in regime 1") {
    const Scenario s = test::case_scenario();
    Serp serp;
    serp.search_query = "Rúben Dias 2027-28 Premier League interceptions";
    serp.entries.push_back({1, "report", "he recorded 27 interceptions this term", {}});
    for (int i = 2; i <= 4; ++i) serp.entries.push_back({i, "bg", "no figures here", {}});
    HitLog log;
    log.hit = true;
    log.matched_fact_keys = {"Rúben Dias 2027-28 Premier League interceptions"};
    log.query = serp.search_query;
    CHECK(leak_check(serp, log, s).empty());
}

TEST_CASE("gating property: compound implies no hit, always four entries") {
    ScriptedEngine engine;
    const Scenario fixture = test::case_scenario();
    const Scenario appendix = test::appendix_scenario();
    std::mt19937_64 rng(23);
    const std::vector<std::string> fragments = {
        "compare", "Bruno",  "Guimarães", "2027-28", "difference", "fouls", "against",
        "key",     "passes", "higher",    "total",   "Dias",       "and",   "interceptions",
        "random",  "blimp",
    };
    for (int i = 0; i < 2000; ++i) {
        const Scenario& s = i % 2 == 0 ? fixture : appendix;
        std::string query;
        const size_t words = rng() % 10;
        for (size_t w = 0; w < words; ++w) {
            query += fragments[rng() % fragments.size()];
            query += " ";
        }
        EngineResult r = engine.generate(query, s);
        REQUIRE(r.ok);
        CHECK(r.serp.entries.size() == 4);
        CHECK(r.log.matched_fact_keys.size() <= 1);
        if (r.log.is_compound_query) CHECK_FALSE(r.log.hit);
        if (r.log.hit) {
            REQUIRE(r.log.matched_fact_keys.size() == 1);
            CHECK(s.has_fact(r.log.matched_fact_keys[0]));
        }
    }
}

TEST_CASE("llm engine: compliant output passes through") {
    const Scenario s = test::case_scenario();
    nlohmann::ordered_json payload = {
        {"search_query", "Rúben Dias 2027-28 Premier League fouls committed"},
        {"search_result", nlohmann::ordered_json::array()},
        {"hit", true},
        {"matched_fact_keys", {"Rúben Dias 2027-28 Premier League fouls committed"}},
        {"is_compound_query", false},
    };
    payload["search_result"].push_back({{"id", 1},
                                        {"title", "PL Discipline Report"},
                                        {"content", "Dias finished on 15 fouls this season"},
                                        {"date", "2027-08-22"}});
    for (int i = 2; i <= 4; ++i) {
        payload["search_result"].push_back(
            {{"id", i}, {"title", "context"}, {"content", "background only"}, {"date", "2027-08-23"}});
    }
    test::ScriptQueueClient client({payload.dump()});
    LlmEngine engine(client);
    EngineResult r = engine.generate("Rúben Dias 2027-28 Premier League fouls committed", s);
    REQUIRE(r.ok);
    CHECK(r.log.hit);
    CHECK(r.serp.entries.size() == 4);
    CHECK(client.calls() == 1);
}

TEST_CASE("llm engine: leaking output degrades to templates after one retry") {
    const Scenario s = test::case_scenario();
    nlohmann::ordered_json leaking = {
        {"search_query", "q"},
        {"search_result", nlohmann::ordered_json::array()},
        {"hit", false},
        {"matched_fact_keys", nlohmann::json::array()},
        {"is_compound_query", false},
    };
    for (int i = 1; i <= 4; ++i) {
        leaking["search_result"].push_back(
            {{"id", i}, {"title", "oops"}, {"content", "the answer is 90 fouls against"},
             {"date", "2027-08-22"}});
    }
    test::ScriptQueueClient client({leaking.dump(), leaking.dump()});
    LlmEngine engine(client);
    EngineResult r = engine.generate("some atomic query", s);
    REQUIRE(r.ok);
    CHECK(client.calls() == 2);  // regenerated once, then degraded
    CHECK_FALSE(r.log.hit);
    CHECK(leak_check(r.serp, r.log, s).empty());
}

TEST_CASE("llm engine: hard invariants override model claims") {
    const Scenario s = test::case_scenario();
    nlohmann::ordered_json claim = {
        {"search_query", "q"},
        {"search_result", nlohmann::ordered_json::array()},
        {"hit", true},
        {"matched_fact_keys", {"Bruno Guimarães 2027-28 Premier League fouls against"}},
        {"is_compound_query", true},  // contradiction: compound claiming a hit
    };
    for (int i = 1; i <= 4; ++i) {
        claim["search_result"].push_back(
            {{"id", i}, {"title", "noise"}, {"content", "chatter"}, {"date", "2027-08-22"}});
    }
    test::ScriptQueueClient client({claim.dump()});
    LlmEngine engine(client);
    EngineResult r = engine.generate("q", s);
    REQUIRE(r.ok);
    CHECK_FALSE(r.log.hit);
    CHECK(r.log.is_compound_query);
    CHECK(r.log.matched_fact_keys.empty());
}

TEST_CASE("llm engine: transport failure surfaces as retryable error") {
    const Scenario s = test::case_scenario();
    test::FailingClient client;
    LlmEngine engine(client);
    EngineResult r = engine.generate("q", s);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.error.empty());
}
