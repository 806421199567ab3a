#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "taas/error.hpp"
#include "taas/json_io.hpp"
#include "taas/sim/marketplace.hpp"
#include "taas/storage/data_lake.hpp"

using namespace taas;
using namespace taas::sim;

TEST_CASE("same seed gives byte-identical world files") {
    ScenarioSpec spec;
    spec.dishonest_recommenders = 2;
    test::TempDir a, b;
    write_world(generate_world(spec), a.path());
    write_world(generate_world(spec), b.path());
    for (const auto* name : {"catalog.jsonl", "datalake.jsonl", "truth.json"}) {
        const auto text = test::read_file(a / name);
        CHECK_FALSE(text.empty());
        CHECK(text == test::read_file(b / name));
    }
    spec.seed = 43;
    test::TempDir c;
    write_world(generate_world(spec), c.path());
    CHECK(test::read_file(a / "datalake.jsonl") != test::read_file(c / "datalake.jsonl"));
}

TEST_CASE("catalog size is providers times offers") {
    ScenarioSpec spec;
    spec.num_providers = 5;
    spec.offers_per_provider = 100;
    const auto world = generate_world(spec);
    const auto offers = world.catalog.offers();
    CHECK(offers.size() == 500);
    std::set<std::string> ids;
    for (const auto& o : offers) ids.insert(o.offer_id);
    CHECK(ids.size() == 500);
    test::TempDir d;
    write_world(world, d.path());
    CHECK(test::line_count(d / "catalog.jsonl") >= 500);
}

TEST_CASE("zero violation rate forces clean stats") {
    ScenarioSpec spec;
    spec.sla_violation_rate = 0.0;
    spec.num_providers = 30;
    const auto world = generate_world(spec);
    std::size_t seen = 0;
    for (const auto& p : world.providers) {
        for (const auto type : kAllOfferTypes) {
            for (const auto& s : world.catalog.asset_stats(p.id, type)) {
                CHECK(s.unmanaged_violations == 0);
                CHECK(s.unpredicted_violations == 0);
                ++seen;
            }
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("generated worlds are valid and complete") {
    ScenarioSpec spec;
    spec.num_providers = 12;
    spec.honest_recommenders = 4;
    spec.dishonest_recommenders = 3;
    const auto world = generate_world(spec);
    CHECK(world.providers.size() == 12);
    CHECK(world.recommenders.size() == 7);
    for (const auto& p : world.providers) CHECK(in_unit(p.quality));
    for (const auto& o : world.catalog.offers()) {
        const auto stats = world.catalog.asset_stats(o.provider, o.offer_type);
        CHECK(stats.size() == static_cast<std::size_t>(spec.windows));
        for (const auto& s : stats) CHECK_NOTHROW(validate_stats(s));
    }
    std::set<std::string> evaluator_targets;
    storage::DataLake lake;
    for (const auto& e : world.feedback) {
        CHECK_NOTHROW(lake.append(e));
        CHECK(in_unit(e.rating));
        CHECK(e.recorded_at <= spec.now);
        if (e.reporter == world.evaluator) evaluator_targets.insert(e.target.id);
    }
    CHECK(evaluator_targets.size() == 12);
}

TEST_CASE("scenario json round trip and validation") {
    ScenarioSpec spec;
    spec.seed = 7;
    spec.dishonesty_mode = DishonestyMode::kRandom;
    spec.offer_type_mix = {{OfferType::kEdge, 2.0}};
    CHECK(scenario_from_json(scenario_to_json(spec)) == spec);
    auto bad = scenario_to_json(spec);
    bad["surprise"] = 1;
    CHECK_THROWS_AS(scenario_from_json(bad), TrustError);
    spec.windows = 0;
    CHECK_THROWS_AS(validate_scenario(spec), TrustError);
    try {
        (void)load_scenario("/nonexistent/scenario.json");
        FAIL("expected FILE_NOT_FOUND");
    } catch (const TrustError& e) {
        CHECK(e.code() == ErrorCode::kFileNotFound);
    }
}

TEST_CASE("spearman against hand-computed ranks") {
    const std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> up = {10, 20, 30, 40};
    const std::vector<double> down = {4, 3, 2, 1};
    CHECK(spearman(x, up) == doctest::Approx(1.0));
    CHECK(spearman(x, down) == doctest::Approx(-1.0));
    // Ranks (1, 2.5, 2.5, 4) against (1, 2, 3, 4): 4.5 / sqrt(4.5 * 5).
    const std::vector<double> tied = {1, 2, 2, 3};
    CHECK(std::abs(spearman(tied, x) - 4.5 / std::sqrt(22.5)) <= 1e-12);
    const std::vector<double> flat = {5, 5, 5, 5};
    CHECK(spearman(flat, x) == 0.0);
}

TEST_CASE("scenario reports are deterministic") {
    ScenarioSpec spec;
    spec.dishonest_recommenders = 2;
    const ConfigDocument cfg;
    const auto a = run_scenario(spec, cfg);
    const auto b = run_scenario(spec, cfg);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.report["offers_scored"] == spec.num_providers * spec.offers_per_provider);
    CHECK(a.report["offer_errors"] == 0);
    CHECK(a.timings["offers"] == spec.num_providers * spec.offers_per_provider);
    CHECK(a.report["events_skipped"] == 1);
    CHECK_FALSE(render_report_table(a.report).empty());
}

TEST_CASE("all-honest baseline") {
    ScenarioSpec spec;
    const auto out = run_scenario(spec, ConfigDocument{});
    const auto& cr = out.report["credibility"];
    CHECK(cr["dishonest_mean"].is_null());
    CHECK(cr["separated"] == true);
    for (const auto& r : out.report["recommenders"]) {
        CHECK(r["honest"] == true);
        CHECK(in_unit(r["credibility"].get<double>()));
    }
}

TEST_CASE("bad mouthing lowers credibility") {
    ScenarioSpec spec;
    spec.num_providers = 50;
    spec.offers_per_provider = 2;
    spec.honest_recommenders = 5;
    spec.dishonest_recommenders = 5;
    const auto out = run_scenario(spec, ConfigDocument{});
    const auto& cr = out.report["credibility"];
    CHECK(cr["honest_mean"].get<double>() > cr["dishonest_mean"].get<double>());
    CHECK(cr["dishonest_max"].get<double>() < cr["honest_min"].get<double>());
    CHECK(cr["separated"] == true);
}

TEST_CASE("better providers score higher") {
    ScenarioSpec spec;
    spec.num_providers = 20;
    const auto out = run_scenario(spec, ConfigDocument{});
    const auto& rows = out.report["providers"];
    std::size_t best = 0, worst = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i]["quality"].get<double>() > rows[best]["quality"].get<double>()) best = i;
        if (rows[i]["quality"].get<double>() < rows[worst]["quality"].get<double>()) worst = i;
    }
    CHECK(rows[best]["provider_score"].get<double>() > rows[worst]["provider_score"].get<double>());
    CHECK(rows[best]["mean_offer_score"].get<double>() > rows[worst]["mean_offer_score"].get<double>());
    CHECK(out.report["spearman_quality_vs_score"].get<double>() > 0.5);
}
