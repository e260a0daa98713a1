#include "mpw/pipeline.hpp"

#include "mpw/jsonl.hpp"
#include "mpw/prompts.hpp"
#include "mpw/protocol.hpp"
#include "mpw/text_util.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <unordered_set>

namespace mpw {

const std::vector<std::string>* EntityPool::find(const std::string& domain) const {
    for (const auto& [name, entities] : domains) {
        if (name == domain) return &entities;
    }
    return nullptr;
}

EntityPool load_entity_pool(const std::string& path) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": malformed entity pool: " + e.what());
    }
    if (!parsed.is_object()) throw ValidationError(path + ": entity pool must be an object");
    EntityPool pool;
    for (const auto& [domain, names] : parsed.items()) {
        if (!names.is_array()) {
            throw ValidationError(path + ": domain '" + domain + "' must map to an array");
        }
        std::vector<std::string> entities;
        std::unordered_set<std::string> seen;
        for (const auto& n : names) {
            if (!n.is_string()) {
                throw ValidationError(path + ": non-string entity in domain '" + domain + "'");
            }
            std::string name = trim(n.get<std::string>());
            if (name.empty()) {
                throw ValidationError(path + ": empty entity name in domain '" + domain + "'");
            }
            if (!seen.insert(name).second) {
                throw ValidationError(path + ": duplicate entity '" + name + "' in domain '" +
                                      domain + "'");
            }
            entities.push_back(std::move(name));
        }
        pool.domains.emplace_back(domain, std::move(entities));
    }
    return pool;
}

namespace {

std::uint64_t fnv1a(std::uint64_t seed, std::string_view s) {
    std::uint64_t h = seed ^ 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Explicit Fisher-Yates so shuffles are reproducible across standard
// libraries (std::shuffle leaves the draw sequence implementation-defined).
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

std::vector<EntityPair> sample_pairs(const EntityPool& pool, int total, std::uint64_t seed) {
    if (total == 0) return {};
    if (total < 0) throw ConfigError("sample_pairs: total must be >= 0");
    if (pool.domains.empty()) throw ConfigError("sample_pairs: empty entity pool");
    for (const auto& [domain, entities] : pool.domains) {
        if (entities.empty()) {
            throw ValidationError("sample_pairs: domain '" + domain + "' has no entities");
        }
    }

    std::mt19937_64 rng(seed);
    const size_t domain_count = pool.domains.size();

    // All distinct in-domain pairs, shuffled once per domain; quota draws and
    // compensation both consume from the front.
    std::vector<std::vector<EntityPair>> candidates(domain_count);
    size_t total_capacity = 0;
    for (size_t d = 0; d < domain_count; ++d) {
        const auto& [domain, entities] = pool.domains[d];
        for (size_t i = 0; i < entities.size(); ++i) {
            for (size_t j = i + 1; j < entities.size(); ++j) {
                candidates[d].push_back({domain, entities[i], entities[j]});
            }
        }
        deterministic_shuffle(candidates[d], rng);
        total_capacity += candidates[d].size();
    }
    if (static_cast<size_t>(total) > total_capacity) {
        throw ConfigError("sample_pairs: total exceeds the number of distinct in-domain pairs");
    }

    // Even quota: every domain gets total/D, the remainder goes to a seeded
    // random subset so counts stay within one of total/D.
    std::vector<size_t> quota(domain_count, static_cast<size_t>(total) / domain_count);
    std::vector<size_t> order(domain_count);
    for (size_t d = 0; d < domain_count; ++d) order[d] = d;
    deterministic_shuffle(order, rng);
    for (size_t r = 0; r < static_cast<size_t>(total) % domain_count; ++r) ++quota[order[r]];

    std::vector<size_t> taken(domain_count, 0);
    size_t deficit = 0;
    for (size_t d = 0; d < domain_count; ++d) {
        taken[d] = std::min(quota[d], candidates[d].size());
        deficit += quota[d] - taken[d];
    }

    // Balanced compensation: round-robin over domains ordered by remaining
    // capacity (largest first), one extra pair per pass.
    while (deficit > 0) {
        std::vector<size_t> by_capacity;
        for (size_t d = 0; d < domain_count; ++d) {
            if (candidates[d].size() > taken[d]) by_capacity.push_back(d);
        }
        std::stable_sort(by_capacity.begin(), by_capacity.end(), [&](size_t a, size_t b) {
            return candidates[a].size() - taken[a] > candidates[b].size() - taken[b];
        });
        for (size_t d : by_capacity) {
            if (deficit == 0) break;
            ++taken[d];
            --deficit;
        }
    }

    std::vector<EntityPair> pairs;
    pairs.reserve(static_cast<size_t>(total));
    for (size_t d = 0; d < domain_count; ++d) {
        for (size_t i = 0; i < taken[d]; ++i) pairs.push_back(candidates[d][i]);
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// Deterministic mock backends
// ---------------------------------------------------------------------------

namespace {

// Attribute phrases with pairwise-disjoint token sets, free of compound
// lexicon terms, so verbatim key queries stay atomic and unambiguous.
const std::vector<std::pair<std::string, std::string>>& attribute_pool() {
    static const std::vector<std::pair<std::string, std::string>> attrs = {
        {"home win rate", "percent"},
        {"away goal haul", "goals"},
        {"season pass accuracy", "passes"},
        {"league debut score", "points"},
        {"shirt sale volume", "units"},
        {"stadium seat capacity", "seats"},
        {"annual revenue estimate", "credits"},
        {"fan club membership", "members"},
        {"trophy cabinet count", "trophies"},
        {"transfer fee outlay", "installments"},
        {"training camp duration", "sessions"},
        {"social media reach", "followers"},
        {"charity bout earnings", "donations"},
        {"press conference tally", "briefings"},
        {"injury absence spell", "absences"},
        {"captain armband tenure", "matches"},
    };
    return attrs;
}

const std::string kTieRuleKey = "tie break rule basis";
const std::string kTieRuleValue =
    "If the combined figures are level, the entity listed first in the fixture "
    "announcement prevails.";

std::string join_attrs(const std::vector<size_t>& attr_ids) {
    const auto& pool = attribute_pool();
    std::string out;
    for (size_t i = 0; i < attr_ids.size(); ++i) {
        if (i > 0) out += attr_ids.size() == 2 ? " and " : (i + 1 == attr_ids.size() ? ", and " : ", ");
        out += pool[attr_ids[i]].first;
    }
    return out;
}

std::vector<size_t> pick_attrs(std::mt19937_64& rng, size_t count) {
    std::vector<size_t> ids(attribute_pool().size());
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    deterministic_shuffle(ids, rng);
    ids.resize(count);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

std::optional<std::vector<RankedQuestion>> MockWorldModel::generate_questions(
    const EntityPair& pair) {
    std::mt19937_64 rng(fnv1a(seed_, pair.domain + "|" + pair.a + "|" + pair.b));
    std::vector<RankedQuestion> questions;
    for (int rank = 1; rank <= 4; ++rank) {
        size_t attr_count = 1;
        if (rank == 2) attr_count = 2;
        if (rank == 3) attr_count = 3 + rng() % 2;  // 3-4
        if (rank == 4) attr_count = 5 + rng() % 3;  // 5-7
        const auto attrs = pick_attrs(rng, attr_count);
        std::string q;
        if (rank == 1) {
            q = "In the 2027-28 season, which of " + pair.a + " and " + pair.b +
                " posts the higher " + join_attrs(attrs) + "?";
        } else {
            q = "Across the 2027-28 season, which of " + pair.a + " and " + pair.b +
                " finishes with the higher combined figure over " + join_attrs(attrs) +
                "? Apply the tie break rule basis on record.";
        }
        questions.push_back({rank, std::move(q)});
    }
    return questions;
}

std::optional<LawSet> MockLawModel::generate_laws(const std::string& question,
                                                  const EntityPair& pair) {
    const auto& pool = attribute_pool();
    std::vector<size_t> attrs;
    for (size_t i = 0; i < pool.size(); ++i) {
        if (question.find(pool[i].first) != std::string::npos) attrs.push_back(i);
    }
    if (attrs.empty()) return std::nullopt;  // unrecognized question shape

    std::mt19937_64 rng(fnv1a(seed_, question));
    LawSet laws;
    for (int attempt = 0; attempt < 64; ++attempt) {
        laws.facts.clear();
        std::vector<int> values(90);
        for (int i = 0; i < 90; ++i) values[static_cast<size_t>(i)] = 10 + i;
        deterministic_shuffle(values, rng);
        size_t next = 0;
        for (size_t a : attrs) {
            for (const std::string& entity : {pair.a, pair.b}) {
                AtomicFact fact;
                fact.key = entity + " " + pool[a].first;
                fact.value = std::to_string(values[next++]) + " " + pool[a].second;
                laws.facts.push_back(std::move(fact));
            }
        }
        if (attrs.size() >= 2) {
            laws.facts.push_back({kTieRuleKey, kTieRuleValue, FactKind::RuleConvention});
        }

        Scenario probe;
        probe.entity_pair = {pair.a, pair.b};
        probe.facts = laws.facts;
        // Redraw on ties so the derived answer never depends on the rule-fact
        // tiebreak; keeps flipped ground truths unambiguously wrong.
        long long sum_a = 0, sum_b = 0;
        for (const auto& f : laws.facts) {
            if (f.kind != FactKind::Measurement) continue;
            long long v = std::stoll(f.value);
            if (f.key.rfind(pair.a + " ", 0) == 0) sum_a += v;
            if (f.key.rfind(pair.b + " ", 0) == 0) sum_b += v;
        }
        if (sum_a == sum_b) continue;

        auto derived = solve_by_entity_totals(probe);
        if (!derived) continue;
        laws.ground_truth = *derived;

        // Self-check: coherent keys and a derivable unique answer.
        std::unordered_set<std::string> keys;
        bool coherent = true;
        for (const auto& f : laws.facts) {
            if (f.key.empty() || f.value.empty() || !keys.insert(f.key).second) coherent = false;
        }
        if (coherent) return laws;
    }
    return std::nullopt;
}

std::optional<std::string> solve_by_entity_totals(const Scenario& scenario) {
    long long totals[2] = {0, 0};
    for (const auto& fact : scenario.facts) {
        if (fact.kind != FactKind::Measurement) continue;
        const std::string text = fact.key + " " + fact.value;
        const bool mentions_a = contains(text, scenario.entity_pair[0]);
        const bool mentions_b = contains(text, scenario.entity_pair[1]);
        if (mentions_a == mentions_b) continue;  // ambiguous or unrelated

        // Sum integer runs in the value; commas inside digit runs are
        // thousands separators ("1,830" -> 1830).
        long long sum = 0;
        long long current = 0;
        bool in_number = false;
        const std::string& v = fact.value;
        for (size_t i = 0; i <= v.size(); ++i) {
            const char c = i < v.size() ? v[i] : '\0';
            if (std::isdigit(static_cast<unsigned char>(c))) {
                current = current * 10 + (c - '0');
                in_number = true;
            } else if (in_number && c == ',' && i + 1 < v.size() &&
                       std::isdigit(static_cast<unsigned char>(v[i + 1]))) {
                continue;
            } else if (in_number) {
                sum += current;
                current = 0;
                in_number = false;
            }
        }
        totals[mentions_a ? 0 : 1] += sum;
    }
    if (totals[0] == 0 && totals[1] == 0) return std::nullopt;
    return totals[0] >= totals[1] ? scenario.entity_pair[0] : scenario.entity_pair[1];
}

AuditResult MockAuditor::audit(const Scenario& scenario) {
    AuditResult result;

    // Stage 1: internal non-contradiction (near-duplicate keys must agree on
    // their value) and magnitude plausibility.
    result.stage1_pass = true;
    for (size_t i = 0; i < scenario.facts.size() && result.stage1_pass; ++i) {
        const auto tokens_i = token_set(scenario.facts[i].key);
        for (size_t j = i + 1; j < scenario.facts.size(); ++j) {
            if (jaccard(tokens_i, token_set(scenario.facts[j].key)) >= 0.6 &&
                trim(scenario.facts[i].value) != trim(scenario.facts[j].value)) {
                result.stage1_pass = false;
                result.notes = "contradiction: '" + scenario.facts[i].key + "' vs '" +
                               scenario.facts[j].key + "'";
                break;
            }
        }
    }
    if (result.stage1_pass) {
        for (const auto& fact : scenario.facts) {
            long long current = 0;
            for (char c : fact.value) {
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    current = current * 10 + (c - '0');
                    if (current > 1000000000LL) {
                        result.stage1_pass = false;
                        result.notes = "implausible magnitude in fact '" + fact.key + "'";
                        break;
                    }
                } else if (c != ',') {
                    current = 0;
                }
            }
            if (!result.stage1_pass) break;
        }
    }

    // Stage 2, three votes: recompute the answer from the facts alone and
    // compare with the stored ground truth.
    const auto derived = solve_by_entity_totals(scenario);
    const bool vote =
        derived && exact_match(scenario.ground_truth, *derived).verdict == Verdict::Correct;
    result.stage2_votes = {vote, vote, vote};

    result.accepted = result.stage1_pass && vote;
    return result;
}

// ---------------------------------------------------------------------------
// LLM-backed pipeline models
// ---------------------------------------------------------------------------

namespace {

const char* kWorldModelSystem =
    R"(You invent future-situated benchmark questions for a fictional 2027-28 timeline. Given a domain and two entities from it, write exactly four self-contained questions anchored on the pair, with strictly increasing structural complexity from rank 1 (single explicit comparison) to rank 4 (multiple implicit sub-goals with multi-hop dependencies). Every question must require combining several retrievable facts and must not be answerable from general knowledge.

Respond with a JSON array of exactly four objects: [{"rank": 1, "question": "..."}, ...], ranks 1..4 each exactly once, and nothing else.)";

const char* kLawModelSystem =
    R"(You define the complete factual ground of a fictional scenario. Given a question about two entities, produce the minimal set of atomic facts that determine its unique answer. Each fact is one minimal, independently retrievable unit: a key phrased as a natural-language description (one entity, one attribute) and a short value. Include any computation or convention rule the question needs as a fact with kind "rule". Facts must not contradict each other, must cover everything required, and must make the answer unique. Derive the answer yourself from your facts.

Respond with one JSON object: {"facts": [{"key": "...", "value": "...", "kind": "measurement"|"rule"}, ...], "ground_truth": "..."} and nothing else.)";

const char* kLawSelfCheckSystem =
    R"(You verify a fact set for a question. Check: (1) the facts are mutually coherent, (2) no fact can be decomposed into smaller independently retrievable facts, (3) the stated answer follows from the facts alone and is unique. Reply in the format:
<think>
Your reasoning
</think>
<answer>
Pass or Fail (only one of the two)
</answer>)";

const char* kAuditorStage1System =
    R"(You audit the fact set of a benchmark scenario. Check that (1) the facts are internally non-contradictory and (2) they satisfy basic real-world plausibility: valid units, realistic durations and travel times, and magnitudes that make sense for the stated quantities. Reply in the format:
<think>
Your reasoning
</think>
<answer>
Pass or Fail (only one of the two)
</answer>)";

const char* kAuditorStage2System =
    R"(Answer the question using only the provided facts. Reply in the format:
<think>
Your reasoning
</think>
<answer>
Your final answer
</answer>)";

std::string facts_block(const std::vector<AtomicFact>& facts) {
    std::string out;
    for (const auto& f : facts) {
        out += "- " + f.key + ": " + f.value + (f.kind == FactKind::RuleConvention ? " [rule]" : "") +
               "\n";
    }
    return out;
}

std::optional<std::string> tagged_answer(const std::string& content) {
    AgentAction action = parse_action(content);
    if (action.kind != AgentAction::Kind::Answer) return std::nullopt;
    return action.answer;
}

CompletionResult complete_with_retries(ChatClient& client, const CompletionRequest& request,
                                       int attempts = 4) {
    CompletionResult result;
    for (int i = 0; i < attempts; ++i) {
        result = client.complete(request);
        if (result.ok) return result;
    }
    return result;
}

}  // namespace

std::optional<std::vector<RankedQuestion>> LlmWorldModel::generate_questions(
    const EntityPair& pair) {
    CompletionRequest request;
    request.messages = {
        {"system", kWorldModelSystem},
        {"user", "Domain: " + pair.domain + "\nEntity pair: " + pair.a + " / " + pair.b},
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        CompletionResult result = client_.complete(request);
        if (!result.ok) continue;
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(trim(result.content));
        } catch (const nlohmann::json::exception&) {
            continue;
        }
        if (!parsed.is_array() || parsed.size() != 4) continue;
        std::vector<RankedQuestion> questions;
        std::unordered_set<int> ranks;
        bool valid = true;
        for (const auto& q : parsed) {
            const int rank = q.value("rank", 0);
            const std::string text = trim(q.value("question", std::string{}));
            if (rank < 1 || rank > 4 || text.empty() || !ranks.insert(rank).second) {
                valid = false;
                break;
            }
            questions.push_back({rank, text});
        }
        if (!valid) continue;
        std::sort(questions.begin(), questions.end(),
                  [](const RankedQuestion& a, const RankedQuestion& b) { return a.rank < b.rank; });
        return questions;
    }
    return std::nullopt;
}

std::optional<LawSet> LlmLawModel::generate_laws(const std::string& question,
                                                 const EntityPair& pair) {
    CompletionRequest request;
    request.messages = {
        {"system", kLawModelSystem},
        {"user", "Entity pair: " + pair.a + " / " + pair.b + "\nQuestion: " + question},
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        CompletionResult result = client_.complete(request);
        if (!result.ok) continue;
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(trim(result.content));
        } catch (const nlohmann::json::exception&) {
            continue;
        }
        if (!parsed.is_object() || !parsed.contains("facts") || !parsed["facts"].is_array()) {
            continue;
        }
        LawSet laws;
        laws.ground_truth = trim(parsed.value("ground_truth", std::string{}));
        std::unordered_set<std::string> keys;
        bool valid = !laws.ground_truth.empty();
        for (const auto& f : parsed["facts"]) {
            AtomicFact fact;
            fact.key = trim(f.value("key", std::string{}));
            fact.value = f.value("value", std::string{});
            fact.kind = f.value("kind", std::string{"measurement"}) == "rule"
                            ? FactKind::RuleConvention
                            : FactKind::Measurement;
            if (fact.key.empty() || fact.value.empty() || !keys.insert(fact.key).second) {
                valid = false;
                break;
            }
            laws.facts.push_back(std::move(fact));
        }
        if (!valid || laws.facts.empty()) continue;

        // Coherence + non-decomposability self-check before returning.
        CompletionRequest check;
        check.messages = {
            {"system", kLawSelfCheckSystem},
            {"user", "Question: " + question + "\n\nFacts:\n" + facts_block(laws.facts) +
                         "\nStated answer: " + laws.ground_truth},
        };
        CompletionResult verdict = client_.complete(check);
        if (verdict.ok) {
            auto answer = tagged_answer(verdict.content);
            if (answer && trim(*answer) == "Pass") return laws;
        }
    }
    return std::nullopt;
}

AuditResult LlmAuditor::audit(const Scenario& scenario) {
    AuditResult result;

    CompletionRequest stage1;
    stage1.messages = {
        {"system", kAuditorStage1System},
        {"user", "Question: " + scenario.question + "\n\nFacts:\n" + facts_block(scenario.facts)},
    };
    CompletionResult stage1_result = complete_with_retries(auditor_, stage1);
    if (!stage1_result.ok) {
        result.indeterminate = true;
        result.notes = "stage 1 endpoint failure: " + stage1_result.error;
        return result;
    }
    auto stage1_verdict = tagged_answer(stage1_result.content);
    result.stage1_pass = stage1_verdict && trim(*stage1_verdict) == "Pass";

    // Stage 2 repeated three times to damp auditor stochasticity; consistency
    // is judged, not string-matched.
    for (auto& vote : result.stage2_votes) {
        CompletionRequest stage2;
        stage2.messages = {
            {"system", kAuditorStage2System},
            {"user",
             "Question: " + scenario.question + "\n\nFacts:\n" + facts_block(scenario.facts)},
        };
        CompletionResult answer_result = complete_with_retries(auditor_, stage2);
        if (!answer_result.ok) {
            result.indeterminate = true;
            result.notes = "stage 2 endpoint failure: " + answer_result.error;
            return result;
        }
        auto answer = tagged_answer(answer_result.content);
        if (!answer) {
            vote = false;
            continue;
        }
        Judgment j = judge(scenario.question, scenario.ground_truth, *answer, judge_);
        if (j.transport_failed) {
            result.indeterminate = true;
            result.notes = "stage 2 judge failure";
            return result;
        }
        vote = j.verdict == Verdict::Correct;
    }

    result.accepted = result.stage1_pass && result.stage2_votes[0] && result.stage2_votes[1] &&
                      result.stage2_votes[2];
    return result;
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

namespace {

std::string domain_slug(const std::string& domain) {
    std::string slug;
    for (unsigned char c : domain) {
        if (std::isalnum(c)) {
            slug.push_back(static_cast<char>(std::tolower(c)));
        } else if (!slug.empty() && slug.back() != '-') {
            slug.push_back('-');
        }
    }
    while (!slug.empty() && slug.back() == '-') slug.pop_back();
    return slug;
}

}  // namespace

GenerationOutcome generate_scenarios(const EntityPool& pool, int count, std::uint64_t seed,
                                     WorldModel& world, LawModel& law) {
    GenerationOutcome outcome;
    if (count <= 0) return outcome;

    const int pairs_needed = (count + 3) / 4;
    std::vector<EntityPair> pairs = sample_pairs(pool, pairs_needed, seed);

    int serial = 0;
    for (const auto& pair : pairs) {
        if (static_cast<int>(outcome.scenarios.size()) >= count) break;
        auto questions = world.generate_questions(pair);
        if (!questions) {
            outcome.skipped.push_back("pair " + pair.a + "/" + pair.b +
                                      ": question generation failed");
            continue;
        }
        for (const auto& rq : *questions) {
            if (static_cast<int>(outcome.scenarios.size()) >= count) break;
            auto laws = law.generate_laws(rq.question, pair);
            if (!laws) {
                outcome.skipped.push_back("pair " + pair.a + "/" + pair.b + " rank " +
                                          std::to_string(rq.rank) + ": law generation rejected");
                continue;
            }
            Scenario scenario;
            scenario.id = "mpw-" + domain_slug(pair.domain) + "-" + std::to_string(++serial) +
                          "-r" + std::to_string(rq.rank);
            scenario.domain = pair.domain;
            scenario.entity_pair = {pair.a, pair.b};
            scenario.question = rq.question;
            scenario.facts = laws->facts;
            scenario.ground_truth = laws->ground_truth;
            try {
                // Route through the serializer so every generated scenario
                // passes the loader's validation.
                scenario = scenario_from_json(scenario_to_json(scenario));
            } catch (const ValidationError& e) {
                outcome.skipped.push_back(std::string("invalid generated scenario: ") + e.what());
                continue;
            }
            outcome.scenarios.push_back(std::move(scenario));
        }
    }
    return outcome;
}

std::vector<Scenario> synthesize_corpus(const EntityPool& pool, int count, std::uint64_t seed) {
    MockWorldModel world(seed);
    MockLawModel law(seed);
    GenerationOutcome outcome = generate_scenarios(pool, count, seed, world, law);
    if (static_cast<int>(outcome.scenarios.size()) != count) {
        throw IntegrityError("synthesize_corpus: expected " + std::to_string(count) +
                             " scenarios, got " + std::to_string(outcome.scenarios.size()));
    }
    return outcome.scenarios;
}

EntityPool builtin_entity_pool() {
    static const std::vector<std::string> adjectives = {
        "Crimson", "Azure",  "Golden", "Obsidian", "Emerald", "Silver",
        "Scarlet", "Cobalt", "Ivory",  "Amber",
    };
    static const std::vector<std::vector<std::string>> nouns = {
        {"Falcons", "Wolves", "Rovers", "Mariners", "Titans", "Comets", "Pumas", "Drakes",
         "Lynx", "Orcas"},
        {"Meridian", "Vertex", "Quasar", "Zephyr", "Nimbus", "Paragon", "Solstice", "Vanguard",
         "Cascade", "Horizon"},
    };
    EntityPool pool;
    size_t domain_index = 0;
    for (const auto& domain : known_domains()) {
        const auto& noun_list = nouns[domain_index % nouns.size()];
        std::vector<std::string> entities;
        for (size_t i = 0; i < adjectives.size(); ++i) {
            entities.push_back(adjectives[i] + " " + noun_list[(i + domain_index) % noun_list.size()]);
        }
        pool.domains.emplace_back(domain, std::move(entities));
        ++domain_index;
    }
    return pool;
}

AuditAccounting audit_corpus(const std::vector<Scenario>& scenarios, Auditor& auditor,
                             std::vector<Scenario>& accepted_out,
                             std::vector<AuditResult>& results_out) {
    AuditAccounting accounting;
    accounting.generated = static_cast<int>(scenarios.size());
    for (const auto& scenario : scenarios) {
        AuditResult result = auditor.audit(scenario);
        if (result.indeterminate) {
            ++accounting.indeterminate;
        } else if (result.accepted) {
            ++accounting.accepted;
            accepted_out.push_back(scenario);
        } else {
            ++accounting.rejected;
        }
        results_out.push_back(std::move(result));
    }
    return accounting;
}

}  // namespace mpw
