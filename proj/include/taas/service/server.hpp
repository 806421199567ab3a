// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "taas/computation/engine.hpp"
#include "taas/config.hpp"
#include "taas/error.hpp"
#include "taas/gathering/catalog.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/private_store.hpp"
#include "taas/update/continuous_update.hpp"

namespace httplib {
class Server;
}

namespace taas::service {

struct Response {
    int status{200};
    nlohmann::json body;
};

// {"error":{"code":..,"message":..}}
nlohmann::json error_body(ErrorCode code, std::string_view message);
int http_status(ErrorCode code) noexcept;

nlohmann::json offer_result_to_json(const computation::OfferResult& r);
nlohmann::json update_result_to_json(const update::UpdateResult& r);

// Request handling independent of the transport. Endpoints:
//   GET  /health
//   POST /score-offers   {"evaluator":..,"offer_ids":[..],"now":..?}
//   GET  /trust?evaluator=..&target=..[&offer_id=..]
//   POST /ingest-event   TrustEvent, applied to the owner's scores
class TrustService {
  public:
    TrustService(ConfigDocument cfg, const gathering::CatalogSource& catalog,
                 storage::FeedbackLog& datalake, storage::PrivateStore& store, StakeholderId owner);
    ~TrustService();

    TrustService(const TrustService&) = delete;
    TrustService& operator=(const TrustService&) = delete;

    Response health() const;
    Response score_offers(std::string_view body);
    Response get_trust(const std::map<std::string, std::string>& params) const;
    Response ingest_event(std::string_view body);

    // Dispatch by method and path; unknown routes answer NOT_FOUND.
    Response handle(std::string_view method, std::string_view path,
                    const std::map<std::string, std::string>& params, std::string_view body);

  private:
    computation::TrustEngine& engine_for(const StakeholderId& evaluator);

    ConfigDocument cfg_;
    const gathering::CatalogSource& catalog_;
    storage::FeedbackLog& datalake_;
    storage::PrivateStore& store_;
    std::mutex engines_mutex_;
    // One engine (and recommender list) per evaluator, each serialising its
    // own batches.
    std::map<std::string, std::pair<std::unique_ptr<std::mutex>,
                                    std::unique_ptr<computation::TrustEngine>>> engines_;
    update::ContinuousUpdater updater_;
    update::EventProcessor events_;
};

// HTTP front end. bind() with port 0 picks a free port.
class HttpServer {
  public:
    explicit HttpServer(TrustService& service);
    ~HttpServer();

    // Returns the bound port; throws TrustError(kBindFailure).
    int bind(const std::string& host, int port);
    // Blocks until stop().
    void run();
    void stop();

  private:
    TrustService& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace taas::service
