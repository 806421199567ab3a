// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/service/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "taas/computation/engine.hpp"
#include "taas/error.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/private_store.hpp"

namespace taas::service {

namespace {

struct Stores {
    storage::DataLake datalake;
    storage::PrivateStore store;
};

void seed_feedback(const sim::World& world, storage::DataLake& datalake) {
    for (auto e : world.feedback) datalake.append(std::move(e));
}

BenchReport timed_run(computation::TrustEngine& engine, const sim::World& world,
                      std::span<const ProductOffer> offers, bool cold) {
    computation::PhaseTimings phases;
    const auto start = std::chrono::steady_clock::now();
    const auto results = engine.score_offers(world.evaluator, offers, world.spec.now, &phases);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    BenchReport r;
    r.offers = offers.size();
    r.total_seconds = total;
    r.phase_seconds = {{"gathering", phases.gathering}, {"compute", phases.compute}, {"storage", phases.storage}};
    r.pillar_seconds = {{"satisfaction", phases.pillars.satisfaction},
                        {"credibility", phases.pillars.credibility},
                        {"tf", phases.pillars.transaction_factor},
                        {"cf", phases.pillars.community_factor}};
    r.cold_start = cold;
    return r;
}

BenchReport median(std::vector<BenchReport> runs) {
    std::sort(runs.begin(), runs.end(),
              [](const auto& a, const auto& b) { return a.total_seconds < b.total_seconds; });
    return runs[runs.size() / 2];
}

}  // namespace

sim::World bench_world(const sim::ScenarioSpec& base, std::size_t offers) {
    sim::ScenarioSpec spec = base;
    const std::size_t per = std::max<std::size_t>(1, base.offers_per_provider);
    spec.offers_per_provider = per;
    spec.num_providers = std::max<std::size_t>(1, (offers + per - 1) / per);
    auto world = sim::generate_world(spec);
    auto all = world.catalog.offers();
    if (all.size() > offers) {
        gathering::InMemoryCatalog trimmed;
        for (std::size_t i = 0; i < offers; ++i) trimmed.add_offer(all[i]);
        for (const auto& p : world.providers) {
            for (auto type : kAllOfferTypes) {
                for (const auto& s : world.catalog.asset_stats(p.id, type)) trimmed.set_stats(p.id, type, s);
            }
        }
        world.catalog = std::move(trimmed);
    }
    return world;
}

std::vector<BenchReport> run_bench(const BenchOptions& options, const ConfigDocument& cfg,
                                   const sim::ScenarioSpec& base) {
    if (options.repetitions == 0) fail(ErrorCode::kConfigInvalid, "repetitions must be >= 1");
    ModelConfig model = cfg.model;
    model.max_workers = std::max<std::size_t>(1, options.workers);
    std::vector<BenchReport> reports;
    for (const auto count : options.counts) {
        if (count == 0) fail(ErrorCode::kConfigInvalid, "offer counts must be positive");
        const auto world = bench_world(base, count);
        const auto offers = world.catalog.offers();

        std::vector<BenchReport> cold;
        std::vector<BenchReport> warm;
        for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
            Stores stores;
            seed_feedback(world, stores.datalake);
            computation::TrustEngine engine(model, world.catalog, stores.datalake, stores.store);
            cold.push_back(timed_run(engine, world, offers, true));
        }
        for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
            Stores stores;
            seed_feedback(world, stores.datalake);
            computation::TrustEngine engine(model, world.catalog, stores.datalake, stores.store);
            engine.score_offers(world.evaluator, offers, world.spec.now);
            warm.push_back(timed_run(engine, world, offers, false));
        }
        reports.push_back(median(std::move(cold)));
        reports.push_back(median(std::move(warm)));
    }
    return reports;
}

nlohmann::json bench_to_json(const std::vector<BenchReport>& reports) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) {
        rows.push_back({{"offers", r.offers},
                        {"cold_start", r.cold_start},
                        {"total_seconds", r.total_seconds},
                        {"phase_seconds", r.phase_seconds},
                        {"pillar_seconds", r.pillar_seconds}});
    }
    return {{"schema_version", 1}, {"reports", rows}};
}

std::string render_bench_table(const std::vector<BenchReport>& reports) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%7s %5s %10s %10s %10s %10s | %9s %9s %9s %9s\n", "offers", "mode",
                  "total_s", "gather_s", "compute_s", "store_s", "sat_s", "cr_s", "tf_s", "cf_s");
    out += line;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%7zu %5s %10.4f %10.4f %10.4f %10.4f | %9.4f %9.4f %9.4f %9.4f\n",
                      r.offers, r.cold_start ? "cold" : "warm", r.total_seconds,
                      r.phase_seconds.at("gathering"), r.phase_seconds.at("compute"),
                      r.phase_seconds.at("storage"), r.pillar_seconds.at("satisfaction"),
                      r.pillar_seconds.at("credibility"), r.pillar_seconds.at("tf"), r.pillar_seconds.at("cf"));
        out += line;
    }
    return out;
}

}  // namespace taas::service
