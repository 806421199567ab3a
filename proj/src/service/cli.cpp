// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/service/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <csignal>
#include <fstream>

#include <CLI11.hpp>

#include "taas/computation/engine.hpp"
#include "taas/error.hpp"
#include "taas/gathering/catalog.hpp"
#include "taas/json_io.hpp"
#include "taas/service/bench.hpp"
#include "taas/service/server.hpp"
#include "taas/sim/marketplace.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/private_store.hpp"

namespace taas::service {

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

Timestamp wall_clock_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::unique_ptr<storage::DataLake> open_datalake(const std::string& path) {
    return path.empty() ? std::make_unique<storage::DataLake>()
                        : std::make_unique<storage::DataLake>(path);
}

std::unique_ptr<storage::PrivateStore> open_store(const std::string& path) {
    return path.empty() ? std::make_unique<storage::PrivateStore>()
                        : std::make_unique<storage::PrivateStore>(path);
}

gathering::InMemoryCatalog load_catalog(const std::string& path) {
    auto catalog = gathering::InMemoryCatalog::load(path);
    if (catalog.offer_count() == 0) fail(ErrorCode::kEmptyCatalog, "catalog " + path + " has no offers");
    return catalog;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::kIo, "cannot write " + path);
    f << text;
}

std::optional<std::filesystem::path> opt_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

ConfigDocument resolve_config(const std::optional<std::filesystem::path>& path) {
    if (path) return load_config(*path);
    if (const char* env = std::getenv("TAAS_CONFIG"); env && *env) return load_config(env);
    return ConfigDocument{};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trust scoring for marketplace product offers"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "Configuration file (overrides $TAAS_CONFIG)");

    auto* score = app.add_subcommand("score", "Score catalog offers for an evaluator");
    std::string evaluator, catalog_path, datalake_path, store_path;
    std::vector<std::string> offer_ids;
    std::optional<Timestamp> now;
    score->add_option("--evaluator", evaluator, "Evaluating stakeholder id")->required();
    score->add_option("--catalog", catalog_path, "Catalog JSON-lines file")->required();
    score->add_option("--datalake", datalake_path, "Data Lake JSON-lines file");
    score->add_option("--store", store_path, "Private store log file");
    score->add_option("--offer", offer_ids, "Offer ids to score (default: all)");
    score->add_option("--now", now, "Evaluation time, epoch seconds");

    auto* simulate = app.add_subcommand("simulate", "Generate a marketplace and run a scenario");
    std::string scenario_path, world_dir, report_path, timings_path;
    std::optional<std::uint64_t> seed;
    bool json_out = false;
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file");
    simulate->add_option("--seed", seed, "Override the scenario seed");
    simulate->add_option("--world-dir", world_dir, "Write catalog, Data Lake and truth files here");
    simulate->add_option("--report", report_path, "Write the JSON report here");
    simulate->add_option("--timings", timings_path, "Write the wall-clock timings here");
    simulate->add_flag("--json", json_out, "Print the JSON report instead of the table");

    auto* bench = app.add_subcommand("bench", "Time the scoring pipeline at several offer counts");
    BenchOptions bench_options;
    std::string bench_out, bench_scenario;
    bool bench_json = false;
    bench->add_option("--counts", bench_options.counts, "Offer counts")->delimiter(',');
    bench->add_option("--reps", bench_options.repetitions, "Repetitions per count and mode");
    bench->add_option("--workers", bench_options.workers, "Compute threads (1 = sequential)");
    bench->add_option("--scenario", bench_scenario, "Scenario JSON used as the world template");
    bench->add_option("--out", bench_out, "Write the JSON reports here");
    bench->add_flag("--json", bench_json, "Print JSON instead of the table");

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    std::string host = "127.0.0.1", owner;
    int port = 8080;
    std::string serve_catalog, serve_datalake, serve_store;
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port (0 picks a free one)");
    serve->add_option("--owner", owner, "Evaluator whose scores ingest-event updates")->required();
    serve->add_option("--catalog", serve_catalog, "Catalog JSON-lines file")->required();
    serve->add_option("--datalake", serve_datalake, "Data Lake JSON-lines file");
    serve->add_option("--store", serve_store, "Private store log file");

    auto* validate = app.add_subcommand("validate-config", "Check a configuration file");
    std::string validate_path;
    validate->add_option("path", validate_path, "Configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << error_body(ErrorCode::kInvalidValue, e.what()).dump() << '\n';
        return kExitUsage;
    }

    try {
        if (*validate) {
            const auto doc = resolve_config(opt_path(validate_path.empty() ? config_path : validate_path));
            out << config_to_json(doc).dump(2) << '\n';
            return 0;
        }
        const auto cfg = resolve_config(opt_path(config_path));

        if (*score) {
            const auto catalog = load_catalog(catalog_path);
            auto datalake = open_datalake(datalake_path);
            auto store = open_store(store_path);
            computation::TrustEngine engine(cfg.model, catalog, *datalake, *store);
            if (offer_ids.empty()) {
                for (const auto& o : catalog.offers()) offer_ids.push_back(o.offer_id);
            }
            const auto results = engine.score_offers(StakeholderId{evaluator},
                                                     std::span<const std::string>(offer_ids),
                                                     now.value_or(wall_clock_now()));
            nlohmann::json scores = nlohmann::json::array();
            bool all_ok = true;
            for (const auto& r : results) {
                scores.push_back(offer_result_to_json(r));
                all_ok = all_ok && r.ok();
            }
            out << scores.dump(2) << '\n';
            return all_ok ? 0 : kExitError;
        }

        if (*simulate) {
            auto spec = scenario_path.empty() ? sim::ScenarioSpec{} : sim::load_scenario(scenario_path);
            if (seed) spec.seed = *seed;
            if (!world_dir.empty()) sim::write_world(sim::generate_world(spec), world_dir);
            const auto result = sim::run_scenario(spec, cfg);
            if (!report_path.empty()) write_file(report_path, result.report.dump(2) + "\n");
            if (!timings_path.empty()) write_file(timings_path, result.timings.dump(2) + "\n");
            out << (json_out ? result.report.dump(2) + "\n" : sim::render_report_table(result.report));
            return 0;
        }

        if (*bench) {
            const auto base = bench_scenario.empty() ? sim::ScenarioSpec{} : sim::load_scenario(bench_scenario);
            const auto reports = run_bench(bench_options, cfg, base);
            const auto doc = bench_to_json(reports);
            if (!bench_out.empty()) write_file(bench_out, doc.dump(2) + "\n");
            out << (bench_json ? doc.dump(2) + "\n" : render_bench_table(reports));
            return 0;
        }

        if (*serve) {
            const auto catalog = load_catalog(serve_catalog);
            auto datalake = open_datalake(serve_datalake);
            auto store = open_store(serve_store);
            TrustService service(cfg, catalog, *datalake, *store, StakeholderId{owner});
            HttpServer server(service);
            const int bound = server.bind(host, port);
            out << nlohmann::json{{"listening", host + ":" + std::to_string(bound)}}.dump() << std::endl;
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            server.run();
            g_server = nullptr;
            return 0;
        }
    } catch (const TrustError& e) {
        err << error_body(e.code(), e.what()).dump() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << error_body(ErrorCode::kIo, e.what()).dump() << '\n';
        return kExitError;
    }
    return kExitUsage;
}

}  // namespace taas::service
