#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"
#include "taas/config.hpp"
#include "taas/error.hpp"
#include "taas/json_io.hpp"
#include "taas/types.hpp"

using namespace taas;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const TrustError& e) {
        return e.code();
    }
    FAIL("expected a TrustError");
    return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("default model weights are accepted") {
    ModelConfig cfg;
    cfg.psi = 0.5;
    cfg.phi = 0.5;
    cfg.alpha = 0.7;
    cfg.beta = 0.3;
    cfg.window_weights.weights = {0.6, 0.3, 0.1};
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("satisfaction weights must sum to one") {
    ModelConfig cfg;
    cfg.psi = 0.7;
    cfg.phi = 0.7;
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kWeightSum);
    cfg.psi = 0.5;
    cfg.phi = 0.5;
    cfg.alpha = 0.9;
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kWeightSum);
}

TEST_CASE("window weights may not grow with age") {
    ModelConfig cfg;
    cfg.window_weights.weights = {0.2, 0.3, 0.5};
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kWindowWeights);
    cfg.window_weights.weights = {0.6, 0.3};
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kWindowWeights);
    cfg.window_weights.weights = {};
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kWindowWeights);
    cfg.window_weights.weights = {1.0};
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("out of range config fields") {
    ModelConfig cfg;
    cfg.psi = -0.1;
    cfg.phi = 1.1;
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kRange);
    cfg = {};
    cfg.decay_half_life = 0.0;
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kRange);
    cfg = {};
    cfg.recommender_list_size = 0;
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kRange);
    cfg = {};
    cfg.assessor = "eigentrust";
    CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("stats validation") {
    CHECK_NOTHROW(validate_stats(test::mixed_stats()));
    auto s = test::mixed_stats();
    s.available_assets = 11;
    s.total_assets = 10;
    CHECK(code_of([&] { validate_stats(s); }) == ErrorCode::kCounts);
    s = test::mixed_stats();
    s.managed_violations = 3;
    s.unmanaged_violations = 2;
    s.predicted_violations = 4;
    CHECK(code_of([&] { validate_stats(s); }) == ErrorCode::kCounts);
    s = test::mixed_stats();
    s.unpredicted_violations = -1;
    CHECK(code_of([&] { validate_stats(s); }) == ErrorCode::kCounts);
    s = test::mixed_stats();
    s.available_assets_location = 5;
    CHECK(code_of([&] { validate_stats(s); }) == ErrorCode::kCounts);
    s = test::mixed_stats();
    s.window_index = 0;
    CHECK_THROWS_AS(validate_stats(s), TrustError);
}

TEST_CASE("offer type accepts exactly five tokens") {
    const std::set<std::string> valid = {"RAN", "SPECTRUM", "VNF_CNF", "SLICE", "EDGE"};
    for (auto t : kAllOfferTypes) {
        CHECK(valid.contains(std::string(to_string(t))));
        CHECK(parse_offer_type(to_string(t)) == t);
    }
    std::mt19937_64 rng(7);
    std::size_t rejected = 0;
    for (int i = 0; i < 20000; ++i) {
        auto token = test::random_token(rng);
        if (i % 5 == 0) {
            // Near misses of valid tokens.
            token = *std::next(valid.begin(), (i / 5) % 5);
            token[std::uniform_int_distribution<std::size_t>(0, token.size() - 1)(rng)] ^= 0x20;
        }
        if (valid.contains(token)) continue;
        CHECK_THROWS_AS(parse_offer_type(token), TrustError);
        ++rejected;
    }
    CHECK(rejected > 19000);
    CHECK_THROWS_AS(parse_offer_type("ran"), TrustError);
    CHECK_THROWS_AS(parse_offer_type("VNF/CNF"), TrustError);
    CHECK_THROWS_AS(parse_offer_type(""), TrustError);
}

TEST_CASE("event kinds and delta modes parse their own tokens") {
    for (auto k : kAllEventKinds) CHECK(parse_event_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_event_kind("SLA"), TrustError);
    CHECK(parse_delta_mode("PUNISH") == DeltaMode::kPunish);
    CHECK(parse_delta_mode("REWARD") == DeltaMode::kReward);
    CHECK_THROWS_AS(parse_delta_mode("reward"), TrustError);
}

TEST_CASE("stakeholder identity ignores the domain label") {
    const auto a = make_stakeholder("op-1", "domain-a");
    const auto b = make_stakeholder("op-1", "domain-b");
    CHECK(a == b);
    CHECK_FALSE(a < b);
    CHECK_THROWS_AS(make_stakeholder(""), TrustError);
}

TEST_CASE("trust events are range checked") {
    TrustEvent e{EventKind::kSlaViolation, StakeholderId{"p"}, std::nullopt, 10, 1.5};
    CHECK(code_of([&] { validate_event(e); }) == ErrorCode::kRange);
    e.magnitude = 0.5;
    CHECK_NOTHROW(validate_event(e));
}

TEST_CASE("round trip of every domain type through JSON") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const StakeholderId who{"s-" + std::to_string(i), i % 2 ? "dom-" + std::to_string(i % 3) : ""};
        CHECK(json(who).get<StakeholderId>().id == who.id);
        CHECK(json(who).get<StakeholderId>().domain == who.domain);

        const auto type = kAllOfferTypes[static_cast<std::size_t>(i) % kAllOfferTypes.size()];
        CHECK(json(type).get<OfferType>() == type);

        ProductOffer offer{"o-" + std::to_string(i), who, type, "loc-" + std::to_string(i % 4), 1000 + i};
        CHECK(json(offer).get<ProductOffer>() == offer);

        const auto stats = test::random_stats(rng, 1 + i % 3);
        CHECK(json(stats).get<ProviderStats>() == stats);

        Recommendation rec{StakeholderId{"r"}, who, i % 3 ? std::optional(type) : std::nullopt, u(rng), 5 + i};
        const auto rec2 = json(rec).get<Recommendation>();
        CHECK(rec2.recommender == rec.recommender);
        CHECK(rec2.offer_type == rec.offer_type);
        CHECK(rec2.rating == rec.rating);
        CHECK(rec2.issued_at == rec.issued_at);

        TrustScore score;
        score.evaluator = StakeholderId{"e", "x"};
        score.target = who;
        if (i % 2) score.offer_id = offer.offer_id;
        score.score = u(rng);
        score.satisfaction = u(rng);
        score.credibility = u(rng);
        score.transaction_factor = u(rng);
        score.community_factor = u(rng);
        score.version = static_cast<std::uint64_t>(i + 1);
        score.computed_at = 77 + i;
        score.cold_start = i % 3 == 0;
        score.degraded = i % 5 == 0;
        CHECK(json(score).get<TrustScore>() == score);
        CHECK(json::parse(json(score).dump()).get<TrustScore>() == score);

        const auto kind = kAllEventKinds[static_cast<std::size_t>(i) % kAllEventKinds.size()];
        TrustEvent ev{kind, who, i % 2 ? std::optional(offer.offer_id) : std::nullopt, 99 + i, u(rng)};
        CHECK(json(ev).get<TrustEvent>() == ev);
    }
    const auto defaults = PolicySet::defaults();
    for (const auto& [kind, rule] : defaults.rules()) {
        CHECK(json(rule).get<PolicyRule>() == rule);
    }
}

TEST_CASE("recommendation decoding rejects self recommendation and bad ratings") {
    json j{{"recommender", "a"}, {"target", "a"}, {"offer_type", nullptr}, {"rating", 0.5}, {"issued_at", 1}};
    CHECK_THROWS_AS(j.get<Recommendation>(), TrustError);
    j["target"] = "b";
    j["rating"] = 1.5;
    CHECK_THROWS_AS(j.get<Recommendation>(), TrustError);
}

TEST_CASE("config document round trip and field order independence") {
    const auto text = test::read_file(test::fixture("config_default.json"));
    const auto doc = json::parse(text);
    const auto parsed = parse_config(doc);
    CHECK(parsed.model == ModelConfig{});
    CHECK(parsed.policies == PolicySet::defaults());
    CHECK(config_to_json(parsed) == doc);

    // Same fields in many arrival orders give the same result.
    std::vector<std::pair<std::string, json>> items;
    for (const auto& [k, v] : doc.items()) items.emplace_back(k, v);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        std::shuffle(items.begin(), items.end(), rng);
        nlohmann::ordered_json shuffled = nlohmann::ordered_json::object();
        for (const auto& [k, v] : items) shuffled[k] = v;
        const auto again = parse_config(json::parse(shuffled.dump()));
        CHECK(again.model == parsed.model);
        CHECK(again.policies == parsed.policies);
    }
}

TEST_CASE("config parsing errors") {
    CHECK(code_of([] { parse_config(json{{"gamma", 1.0}}); }) == ErrorCode::kConfigInvalid);
    CHECK(code_of([] { parse_config(json{{"psi", "half"}}); }) == ErrorCode::kConfigInvalid);
    CHECK(code_of([] { parse_config(json{{"psi", 0.7}, {"phi", 0.7}}); }) == ErrorCode::kWeightSum);
    CHECK(code_of([] { load_config("/nonexistent/taas.json"); }) == ErrorCode::kConfigInvalid);
    CHECK(code_of([] {
              parse_config(json{{"policies", {{"DECAY_TICK", {{"delta_mode", "PUNISH"}, {"weight", 0.1}}}}}});
          }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("policy overrides replace the default rule set") {
    const auto doc = parse_config(json{{"policies", {{"SLA_VIOLATION", {{"delta_mode", "PUNISH"}, {"weight", 0.9}}}}}});
    REQUIRE(doc.policies.find(EventKind::kSlaViolation));
    CHECK(doc.policies.find(EventKind::kSlaViolation)->weight == 0.9);
    CHECK_FALSE(doc.policies.find(EventKind::kSuccessfulInteraction));
}

TEST_CASE("default policies") {
    const auto p = PolicySet::defaults();
    CHECK(p.find(EventKind::kSecurityThreat)->weight == 0.8);
    CHECK(p.find(EventKind::kSlaViolation)->weight == 0.5);
    CHECK(p.find(EventKind::kExecutionFailure)->weight == 0.4);
    CHECK(p.find(EventKind::kPolicyChange)->weight == 0.2);
    CHECK(p.find(EventKind::kSuccessfulInteraction)->delta_mode == DeltaMode::kReward);
    CHECK_FALSE(p.find(EventKind::kDecayTick));
    PolicySet q;
    q.add({EventKind::kSlaViolation, DeltaMode::kPunish, 0.5});
    CHECK_THROWS_AS(q.add({EventKind::kSlaViolation, DeltaMode::kPunish, 0.4}), TrustError);
}

TEST_CASE("error codes print their tokens") {
    CHECK(to_string(ErrorCode::kWeightSum) == std::string_view("WEIGHT_SUM"));
    CHECK(to_string(ErrorCode::kWindowWeights) == std::string_view("WINDOW_WEIGHTS"));
    CHECK(to_string(ErrorCode::kSensitiveField) == std::string_view("SENSITIVE_FIELD"));
    CHECK(to_string(ErrorCode::kVersionConflict) == std::string_view("VERSION_CONFLICT"));
    CHECK(to_string(ErrorCode::kNoScore) == std::string_view("NO_SCORE"));
    CHECK(to_string(ErrorCode::kEmptyCatalog) == std::string_view("EMPTY_CATALOG"));
}
