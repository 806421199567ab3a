// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/service/server.hpp"

#include <chrono>

#include <httplib.h>

#include "taas/json_io.hpp"

namespace taas::service {

namespace {

constexpr std::size_t kMaxOffersPerRequest = 10'000;

Response error_response(ErrorCode code, std::string_view message) {
    return {http_status(code), error_body(code, message)};
}

Timestamp wall_clock_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

nlohmann::json parse_body(std::string_view body) {
    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        fail(ErrorCode::kMalformedPayload, "request body must be a JSON object");
    }
    return doc;
}

// Decoding failures of a well-formed document are still the caller's fault.
template <typename F>
auto decode(F&& f) {
    try {
        return f();
    } catch (const TrustError& e) {
        if (e.code() == ErrorCode::kRange) throw;
        fail(ErrorCode::kMalformedPayload, e.what());
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kMalformedPayload, e.what());
    }
}

}  // namespace

nlohmann::json error_body(ErrorCode code, std::string_view message) {
    return {{"error", {{"code", std::string(to_string(code))}, {"message", std::string(message)}}}};
}

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kNoScore:
        case ErrorCode::kNotFound:
        case ErrorCode::kFileNotFound:
            return 404;
        case ErrorCode::kVersionConflict:
            return 409;
        case ErrorCode::kNoRule:
        case ErrorCode::kNoRecommenders:
        case ErrorCode::kEmptyCatalog:
            return 422;
        case ErrorCode::kSourceUnavailable:
        case ErrorCode::kIo:
            return 503;
        case ErrorCode::kBindFailure:
            return 500;
        default:
            return 400;
    }
}

nlohmann::json offer_result_to_json(const computation::OfferResult& r) {
    if (r.score) return *r.score;
    return {{"offer_id", r.offer_id},
            {"error",
             {{"code", std::string(to_string(r.error.value_or(ErrorCode::kSourceUnavailable)))},
              {"message", r.message}}}};
}

nlohmann::json update_result_to_json(const update::UpdateResult& r) {
    nlohmann::json out{{"event", r.event}};
    if (r.outcome) {
        const auto& o = *r.outcome;
        out["previous"] = o.previous.score;
        out["updated"] = o.updated.score;
        out["version"] = o.updated.version;
        out["applied_rule"] = o.applied_rule ? nlohmann::json(*o.applied_rule) : nlohmann::json(nullptr);
        out["below_threshold"] = o.below_threshold;
    } else {
        out.update(error_body(r.error.value_or(ErrorCode::kSourceUnavailable), r.message));
    }
    return out;
}

TrustService::TrustService(ConfigDocument cfg, const gathering::CatalogSource& catalog,
                           storage::FeedbackLog& datalake, storage::PrivateStore& store,
                           StakeholderId owner)
    : cfg_(std::move(cfg)),
      catalog_(catalog),
      datalake_(datalake),
      store_(store),
      updater_(std::move(owner), cfg_.policies, cfg_.model, store),
      events_(updater_) {
    validate_config(cfg_.model);
}

TrustService::~TrustService() = default;

computation::TrustEngine& TrustService::engine_for(const StakeholderId& evaluator) {
    std::lock_guard lock(engines_mutex_);
    auto& slot = engines_[evaluator.id];
    if (!slot.second) {
        slot.first = std::make_unique<std::mutex>();
        slot.second = std::make_unique<computation::TrustEngine>(cfg_.model, catalog_, datalake_, store_);
    }
    return *slot.second;
}

Response TrustService::health() const { return {200, {{"status", "ok"}}}; }

Response TrustService::score_offers(std::string_view body) {
    try {
        const auto doc = parse_body(body);
        const auto evaluator = decode([&] { return required<StakeholderId>(doc, "evaluator"); });
        const auto offer_ids = decode([&] { return required<std::vector<std::string>>(doc, "offer_ids"); });
        if (offer_ids.empty() || offer_ids.size() > kMaxOffersPerRequest) {
            fail(ErrorCode::kMalformedPayload, "offer_ids must hold 1 to 10000 ids");
        }
        const Timestamp now = doc.contains("now") ? decode([&] { return required<Timestamp>(doc, "now"); })
                                                  : wall_clock_now();
        auto& engine = engine_for(evaluator);
        std::mutex* batch_mutex = nullptr;
        {
            std::lock_guard lock(engines_mutex_);
            batch_mutex = engines_.at(evaluator.id).first.get();
        }
        std::vector<computation::OfferResult> results;
        {
            std::lock_guard lock(*batch_mutex);
            results = engine.score_offers(evaluator, std::span<const std::string>(offer_ids), now);
        }
        nlohmann::json scores = nlohmann::json::array();
        for (const auto& r : results) scores.push_back(offer_result_to_json(r));
        return {200, {{"scores", std::move(scores)}}};
    } catch (const TrustError& e) {
        return error_response(e.code(), e.what());
    }
}

Response TrustService::get_trust(const std::map<std::string, std::string>& params) const {
    const auto evaluator = params.find("evaluator");
    const auto target = params.find("target");
    if (evaluator == params.end() || target == params.end() || evaluator->second.empty() ||
        target->second.empty()) {
        return error_response(ErrorCode::kMalformedPayload, "evaluator and target are required");
    }
    std::optional<std::string> offer_id;
    if (auto it = params.find("offer_id"); it != params.end() && !it->second.empty()) {
        offer_id = it->second;
    }
    const auto score = store_.get_latest_score(StakeholderId{evaluator->second},
                                               StakeholderId{target->second}, offer_id);
    if (!score) {
        return error_response(ErrorCode::kNoScore, "no trust score for '" + target->second + "'");
    }
    return {200, *score};
}

Response TrustService::ingest_event(std::string_view body) {
    try {
        const auto doc = parse_body(body);
        auto event = decode([&] { return doc.get<TrustEvent>(); });
        const auto result = events_.enqueue(std::move(event)).get();
        auto json = update_result_to_json(result);
        return {result.outcome ? 200 : http_status(*result.error), std::move(json)};
    } catch (const TrustError& e) {
        return error_response(e.code(), e.what());
    }
}

Response TrustService::handle(std::string_view method, std::string_view path,
                              const std::map<std::string, std::string>& params,
                              std::string_view body) {
    if (method == "GET" && path == "/health") return health();
    if (method == "POST" && path == "/score-offers") return score_offers(body);
    if (method == "GET" && path == "/trust") return get_trust(params);
    if (method == "POST" && path == "/ingest-event") return ingest_event(body);
    return error_response(ErrorCode::kNotFound,
                          "no route " + std::string(method) + " " + std::string(path));
}

HttpServer::HttpServer(TrustService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> params;
        for (const auto& [k, v] : req.params) params.emplace(k, v);
        const auto out = service_.handle(req.method, req.path, params, req.body);
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json");
    };
    server_->Get(".*", route);
    server_->Post(".*", route);
    // Without SO_REUSEPORT a second listener on a taken port fails to bind.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    int bound = -1;
    if (port == 0) {
        bound = server_->bind_to_any_port(host);
    } else if (server_->bind_to_port(host, port)) {
        bound = port;
    }
    if (bound <= 0) {
        fail(ErrorCode::kBindFailure, "cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() {
    if (server_) server_->stop();
}

}  // namespace taas::service
