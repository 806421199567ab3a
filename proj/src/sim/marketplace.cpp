// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/sim/marketplace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "taas/computation/peertrust.hpp"
#include "taas/error.hpp"
#include "taas/json_io.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/private_store.hpp"
#include "taas/update/continuous_update.hpp"

namespace taas::sim {

std::string_view to_string(DishonestyMode mode) noexcept {
    return mode == DishonestyMode::kBadMouth ? "BAD_MOUTH" : "RANDOM";
}

DishonestyMode parse_dishonesty_mode(std::string_view token) {
    if (token == "BAD_MOUTH") return DishonestyMode::kBadMouth;
    if (token == "RANDOM") return DishonestyMode::kRandom;
    fail(ErrorCode::kConfigInvalid, "unknown dishonesty mode '" + std::string(token) + "'");
}

const ScenarioSpec& validate_scenario(const ScenarioSpec& spec) {
    if (spec.windows < 1) fail(ErrorCode::kConfigInvalid, "windows must be >= 1");
    if (spec.window_seconds <= 0) fail(ErrorCode::kConfigInvalid, "window_seconds must be positive");
    if (spec.now <= spec.windows * spec.window_seconds) {
        fail(ErrorCode::kConfigInvalid, "now must lie after the oldest window");
    }
    if (!in_unit(spec.sla_violation_rate)) {
        fail(ErrorCode::kConfigInvalid, "sla_violation_rate outside [0,1]");
    }
    if (!(spec.rating_noise >= 0.0)) fail(ErrorCode::kConfigInvalid, "rating_noise must be >= 0");
    double mix = 0.0;
    for (const auto& [_, w] : spec.offer_type_mix) {
        if (!(w >= 0.0)) fail(ErrorCode::kConfigInvalid, "offer_type_mix weights must be >= 0");
        mix += w;
    }
    if (spec.num_providers > 0 && spec.offers_per_provider > 0 && !(mix > 0.0)) {
        fail(ErrorCode::kConfigInvalid, "offer_type_mix must have positive mass");
    }
    return spec;
}

nlohmann::json scenario_to_json(const ScenarioSpec& spec) {
    nlohmann::json mix = nlohmann::json::object();
    for (const auto& [type, w] : spec.offer_type_mix) mix[std::string(to_string(type))] = w;
    return {{"seed", spec.seed},
            {"num_providers", spec.num_providers},
            {"offers_per_provider", spec.offers_per_provider},
            {"offer_type_mix", mix},
            {"honest_recommenders", spec.honest_recommenders},
            {"dishonest_recommenders", spec.dishonest_recommenders},
            {"dishonesty_mode", std::string(to_string(spec.dishonesty_mode))},
            {"sla_violation_rate", spec.sla_violation_rate},
            {"windows", spec.windows},
            {"now", spec.now},
            {"window_seconds", spec.window_seconds},
            {"rating_noise", spec.rating_noise}};
}

ScenarioSpec scenario_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail(ErrorCode::kConfigInvalid, "scenario must be an object");
    ScenarioSpec s;
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "seed") s.seed = v.get<std::uint64_t>();
            else if (key == "num_providers") s.num_providers = v.get<std::size_t>();
            else if (key == "offers_per_provider") s.offers_per_provider = v.get<std::size_t>();
            else if (key == "offer_type_mix") {
                s.offer_type_mix.clear();
                for (const auto& [t, w] : v.items()) s.offer_type_mix[parse_offer_type(t)] = w.get<double>();
            } else if (key == "honest_recommenders") s.honest_recommenders = v.get<std::size_t>();
            else if (key == "dishonest_recommenders") s.dishonest_recommenders = v.get<std::size_t>();
            else if (key == "dishonesty_mode") s.dishonesty_mode = parse_dishonesty_mode(v.get<std::string>());
            else if (key == "sla_violation_rate") s.sla_violation_rate = v.get<double>();
            else if (key == "windows") s.windows = v.get<int>();
            else if (key == "now") s.now = v.get<Timestamp>();
            else if (key == "window_seconds") s.window_seconds = v.get<std::int64_t>();
            else if (key == "rating_noise") s.rating_noise = v.get<double>();
            else fail(ErrorCode::kConfigInvalid, "unknown scenario key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kConfigInvalid, std::string("scenario: ") + e.what());
    } catch (const TrustError& e) {
        if (e.code() == ErrorCode::kConfigInvalid) throw;
        fail(ErrorCode::kConfigInvalid, e.what());
    }
    validate_scenario(s);
    return s;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kFileNotFound, "cannot open scenario " + path.string());
    try {
        return scenario_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::kConfigInvalid, std::string("scenario parse error: ") + e.what());
    }
}

namespace {

std::string numbered(const char* prefix, std::size_t i, int width = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-%0*zu", prefix, width, i);
    return buf;
}

std::string domain_for(std::size_t i) { return numbered("domain", i % 4, 1); }

class Draw {
  public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    std::int64_t binomial(std::int64_t n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        return std::binomial_distribution<std::int64_t>(n, std::min(p, 1.0))(rng_);
    }
    double noisy(double center, double sigma) {
        if (sigma <= 0.0) return clamp_unit(center);
        return clamp_unit(center + std::normal_distribution<double>(0.0, sigma)(rng_));
    }
    std::size_t pick(const std::vector<double>& weights) {
        return std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng_);
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace

World generate_world(const ScenarioSpec& spec) {
    validate_scenario(spec);
    Draw draw(spec.seed);
    World world;
    world.spec = spec;
    world.evaluator = StakeholderId{"evaluator", domain_for(0)};

    std::vector<OfferType> mix_types;
    std::vector<double> mix_weights;
    for (const auto& [type, w] : spec.offer_type_mix) {
        mix_types.push_back(type);
        mix_weights.push_back(w);
    }
    const std::array<std::string, 4> locations = {"barcelona", "madrid", "athens", "bristol"};
    const std::int64_t horizon = spec.windows * spec.window_seconds;

    std::vector<std::set<OfferType>> offered(spec.num_providers);
    for (std::size_t p = 0; p < spec.num_providers; ++p) {
        world.providers.push_back({StakeholderId{numbered("provider", p), domain_for(p + 1)}, draw.uniform()});
    }
    for (std::size_t p = 0; p < spec.num_providers; ++p) {
        const auto& provider = world.providers[p];
        for (std::size_t o = 0; o < spec.offers_per_provider; ++o) {
            ProductOffer offer;
            offer.offer_id = numbered("offer", p) + numbered("", o, 4);
            offer.provider = provider.id;
            offer.offer_type = mix_types[draw.pick(mix_weights)];
            offer.location = locations[static_cast<std::size_t>(draw.between(0, 3))];
            offer.created_at = spec.now - draw.between(1, horizon);
            offered[p].insert(offer.offer_type);
            world.catalog.add_offer(offer);
        }
    }

    // Windowed asset and SLA statistics driven by the latent quality.
    const double rate = spec.sla_violation_rate;
    for (std::size_t p = 0; p < spec.num_providers; ++p) {
        const auto& provider = world.providers[p];
        const double q = provider.quality;
        const double violation_p = std::min(1.0, 2.0 * rate * (1.0 - q));
        for (auto type : offered[p]) {
            for (int k = 1; k <= spec.windows; ++k) {
                ProviderStats s;
                s.window_index = k;
                s.total_assets = draw.between(5, 20);
                s.available_assets = draw.binomial(s.total_assets, q);
                s.total_assets_location = draw.between(1, s.total_assets);
                s.available_assets_location = draw.binomial(s.total_assets_location, q);
                s.predicted_violations = draw.between(1, 8);
                s.managed_violations = draw.binomial(s.predicted_violations, q);
                s.unmanaged_violations =
                    rate > 0.0 ? draw.binomial(s.predicted_violations - s.managed_violations, violation_p) : 0;
                s.unpredicted_violations = rate > 0.0 ? draw.binomial(4, violation_p) : 0;
                world.catalog.set_stats(provider.id, type, s);
            }
        }
    }

    std::size_t r = 0;
    for (std::size_t i = 0; i < spec.honest_recommenders; ++i, ++r) {
        world.recommenders.push_back({StakeholderId{numbered("recommender", r), domain_for(r + 2)}, true});
    }
    for (std::size_t i = 0; i < spec.dishonest_recommenders; ++i, ++r) {
        world.recommenders.push_back({StakeholderId{numbered("recommender", r), domain_for(r + 2)}, false});
    }

    std::uint64_t interaction = 0;
    auto publish = [&](const StakeholderId& reporter, const StakeholderId& target,
                       std::optional<OfferType> type, double rating) {
        DataLakeEntry e;
        e.reporter = StakeholderId{reporter.id};
        e.target = StakeholderId{target.id};
        e.offer_type = type;
        e.rating = storage::round_rating(rating);
        e.interaction_id = numbered("fb", ++interaction, 6);
        e.recorded_at = spec.now - draw.between(0, horizon - 1);
        e.sequence = world.feedback.size() + 1;
        world.feedback.push_back(std::move(e));
    };

    // The evaluator's own past experience with every provider.
    for (const auto& provider : world.providers) {
        publish(world.evaluator, provider.id, std::nullopt, draw.noisy(provider.quality, spec.rating_noise));
    }
    for (const auto& rec : world.recommenders) {
        for (std::size_t p = 0; p < spec.num_providers; ++p) {
            const auto& provider = world.providers[p];
            for (auto type : offered[p]) {
                double rating = 0.0;
                if (rec.honest) {
                    rating = draw.noisy(provider.quality, spec.rating_noise);
                } else if (spec.dishonesty_mode == DishonestyMode::kBadMouth) {
                    rating = draw.noisy(1.0 - provider.quality, spec.rating_noise);
                } else {
                    rating = draw.uniform();
                }
                publish(rec.id, provider.id, type, rating);
            }
        }
    }
    return world;
}

void write_world(const World& world, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    world.catalog.save(dir / "catalog.jsonl");
    {
        std::ofstream out(dir / "datalake.jsonl", std::ios::binary | std::ios::trunc);
        for (const auto& e : world.feedback) out << storage::DataLake::serialize_line(e) << '\n';
    }
    nlohmann::json truth;
    truth["scenario"] = scenario_to_json(world.spec);
    truth["evaluator"] = world.evaluator;
    for (const auto& p : world.providers) truth["providers"].push_back({{"id", p.id}, {"quality", p.quality}});
    truth["recommenders"] = nlohmann::json::array();
    for (const auto& r : world.recommenders) truth["recommenders"].push_back({{"id", r.id}, {"honest", r.honest}});
    std::ofstream out(dir / "truth.json", std::ios::binary | std::ios::trunc);
    out << truth.dump(2) << '\n';
}

double spearman(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return 0.0;
    auto ranks = [n](std::span<const double> v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<double> rank(n);
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
            i = j + 1;
        }
        return rank;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

ScenarioReport run_scenario(const ScenarioSpec& spec, const ConfigDocument& cfg) {
    const auto world = generate_world(spec);
    storage::DataLake datalake;
    for (auto e : world.feedback) datalake.append(std::move(e));
    storage::PrivateStore store;
    computation::TrustEngine engine(cfg.model, world.catalog, datalake, store);

    const auto offers = world.catalog.offers();
    computation::PhaseTimings phases;
    const auto start = std::chrono::steady_clock::now();
    const auto results = engine.score_offers(world.evaluator, offers, spec.now, &phases);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // Per-provider and per-recommender views of what the engine computed.
    std::map<std::string, std::vector<double>> offer_scores;
    std::map<std::string, std::vector<double>> observed_cr;
    std::size_t errors = 0;
    for (const auto& r : results) {
        if (!r.ok()) {
            ++errors;
            continue;
        }
        offer_scores[r.score->target.id].push_back(r.score->score);
        const auto raw = store.get_raw("context", world.evaluator.id + "/" + r.offer_id + "/" +
                                                      std::to_string(r.score->version));
        if (raw && raw->contains("credibilities")) {
            for (const auto& [id, cr] : raw->at("credibilities").items()) {
                observed_cr[id].push_back(cr.get<double>());
            }
        }
    }

    std::vector<double> qualities;
    std::vector<double> provider_scores;
    nlohmann::json providers = nlohmann::json::array();
    std::map<std::string, double> before_events;
    for (const auto& p : world.providers) {
        const auto latest = store.get_latest_score(world.evaluator, p.id);
        const double score = latest ? latest->score : 0.0;
        before_events[p.id.id] = score;
        qualities.push_back(p.quality);
        provider_scores.push_back(score);
        const auto& scores = offer_scores[p.id.id];
        nlohmann::json row{{"id", p.id.id},
                           {"quality", p.quality},
                           {"offers", scores.size()},
                           {"provider_score", latest ? nlohmann::json(score) : nlohmann::json(nullptr)}};
        if (!scores.empty()) {
            row["mean_offer_score"] =
                std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
            row["min_offer_score"] = *std::min_element(scores.begin(), scores.end());
            row["max_offer_score"] = *std::max_element(scores.begin(), scores.end());
        }
        providers.push_back(std::move(row));
    }

    nlohmann::json recommenders = nlohmann::json::array();
    double honest_sum = 0.0, dishonest_sum = 0.0;
    std::size_t honest_n = 0, dishonest_n = 0;
    double honest_min = 1.0, dishonest_max = 0.0;
    for (const auto& r : world.recommenders) {
        nlohmann::json row{{"id", r.id.id}, {"honest", r.honest}};
        const auto it = observed_cr.find(r.id.id);
        if (it == observed_cr.end() || it->second.empty()) {
            row["credibility"] = nullptr;
        } else {
            const double cr = std::accumulate(it->second.begin(), it->second.end(), 0.0) /
                              static_cast<double>(it->second.size());
            row["credibility"] = cr;
            if (r.honest) {
                honest_sum += cr;
                ++honest_n;
                honest_min = std::min(honest_min, cr);
            } else {
                dishonest_sum += cr;
                ++dishonest_n;
                dishonest_max = std::max(dishonest_max, cr);
            }
        }
        recommenders.push_back(std::move(row));
    }

    // Scripted runtime events: poor providers breach an SLA, strong ones
    // complete an interaction, then a week passes for everyone.
    std::vector<TrustEvent> events;
    const Timestamp hour = 3600;
    for (const auto& p : world.providers) {
        if (p.quality < 0.3) events.push_back({EventKind::kSlaViolation, p.id, std::nullopt, spec.now + hour, 1.0});
        if (p.quality > 0.7) events.push_back({EventKind::kSuccessfulInteraction, p.id, std::nullopt, spec.now + hour, 1.0});
    }
    for (const auto& p : world.providers) {
        events.push_back({EventKind::kDecayTick, p.id, std::nullopt, spec.now + 7 * 24 * hour, 0.0});
    }
    events.push_back({EventKind::kSlaViolation, StakeholderId{"unknown-provider"}, std::nullopt,
                      spec.now + 2 * hour, 1.0});
    update::ContinuousUpdater updater(world.evaluator, cfg.policies, cfg.model, store);
    const auto updates = updater.evaluate_triggers(events);
    nlohmann::json event_rows = nlohmann::json::array();
    std::size_t skipped = 0;
    for (const auto& u : updates) {
        nlohmann::json row{{"kind", u.event.kind}, {"target", u.event.target.id}, {"occurred_at", u.event.occurred_at}};
        if (u.outcome) {
            row["previous"] = u.outcome->previous.score;
            row["updated"] = u.outcome->updated.score;
            row["version"] = u.outcome->updated.version;
            row["below_threshold"] = u.outcome->below_threshold;
        } else {
            row["error"] = std::string(to_string(*u.error));
            ++skipped;
        }
        event_rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < world.providers.size(); ++i) {
        const auto latest = store.get_latest_score(world.evaluator, world.providers[i].id);
        providers[i]["after_events"] = latest ? nlohmann::json(latest->score) : nlohmann::json(nullptr);
    }

    ScenarioReport out;
    out.report = {{"schema_version", 1},
                  {"scenario", scenario_to_json(spec)},
                  {"config", config_to_json(cfg)},
                  {"evaluator", world.evaluator.id},
                  {"offers_scored", results.size() - errors},
                  {"offer_errors", errors},
                  {"spearman_quality_vs_score", spearman(qualities, provider_scores)},
                  {"providers", providers},
                  {"recommenders", recommenders},
                  {"credibility",
                   {{"honest_mean", honest_n ? nlohmann::json(honest_sum / honest_n) : nlohmann::json(nullptr)},
                    {"dishonest_mean", dishonest_n ? nlohmann::json(dishonest_sum / dishonest_n) : nlohmann::json(nullptr)},
                    {"honest_min", honest_n ? nlohmann::json(honest_min) : nlohmann::json(nullptr)},
                    {"dishonest_max", dishonest_n ? nlohmann::json(dishonest_max) : nlohmann::json(nullptr)},
                    {"separated", honest_n == 0 || dishonest_n == 0 || dishonest_max < honest_min}}},
                  {"events", event_rows},
                  {"events_skipped", skipped}};
    out.timings = {{"schema_version", 1},
                   {"offers", offers.size()},
                   {"total_seconds", total},
                   {"phase_seconds",
                    {{"gathering", phases.gathering}, {"compute", phases.compute}, {"storage", phases.storage}}},
                   {"pillar_seconds",
                    {{"satisfaction", phases.pillars.satisfaction},
                     {"credibility", phases.pillars.credibility},
                     {"tf", phases.pillars.transaction_factor},
                     {"cf", phases.pillars.community_factor}}}};
    return out;
}

std::string render_report_table(const nlohmann::json& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %8s %10s %10s %10s\n", "provider", "quality", "score",
                  "mean_offer", "after");
    out += line;
    auto num = [](const nlohmann::json& j, const char* key) {
        return j.contains(key) && j.at(key).is_number() ? j.at(key).get<double>() : NAN;
    };
    for (const auto& p : report.at("providers")) {
        std::snprintf(line, sizeof line, "%-16s %8.4f %10.4f %10.4f %10.4f\n",
                      p.at("id").get<std::string>().c_str(), num(p, "quality"), num(p, "provider_score"),
                      num(p, "mean_offer_score"), num(p, "after_events"));
        out += line;
    }
    out += "\n";
    std::snprintf(line, sizeof line, "%-16s %8s %12s\n", "recommender", "honest", "credibility");
    out += line;
    for (const auto& r : report.at("recommenders")) {
        std::snprintf(line, sizeof line, "%-16s %8s %12.4f\n", r.at("id").get<std::string>().c_str(),
                      r.at("honest").get<bool>() ? "yes" : "no", num(r, "credibility"));
        out += line;
    }
    std::snprintf(line, sizeof line, "\nspearman(quality, score) = %.4f   offers scored = %zu\n",
                  report.at("spearman_quality_vs_score").get<double>(),
                  report.at("offers_scored").get<std::size_t>());
    out += line;
    return out;
}

}  // namespace taas::sim
