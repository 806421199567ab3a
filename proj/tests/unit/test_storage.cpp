#include <doctest.h>

#include <atomic>
#include <barrier>
#include <random>
#include <thread>

#include "support.hpp"
#include "taas/error.hpp"
#include "taas/json_io.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/kv_store.hpp"
#include "taas/storage/private_store.hpp"

using namespace taas;
using storage::DataLake;
using storage::PrivateStore;

namespace {

TrustScore make_score(const std::string& e, const std::string& t, std::uint64_t version, double value,
                      std::optional<std::string> offer = std::nullopt) {
    TrustScore s;
    s.evaluator = StakeholderId{e};
    s.target = StakeholderId{t};
    s.offer_id = std::move(offer);
    s.score = value;
    s.satisfaction = value / 2;
    s.credibility = 0.75;
    s.transaction_factor = 0.5;
    s.community_factor = 0.25;
    s.version = version;
    s.computed_at = 1000 + static_cast<Timestamp>(version);
    return s;
}

DataLakeEntry make_entry(const std::string& reporter, const std::string& target,
                         std::optional<OfferType> type, double rating, Timestamp at) {
    DataLakeEntry e;
    e.reporter = StakeholderId{reporter, "reporter-domain"};
    e.target = StakeholderId{target, "target-domain"};
    e.offer_type = type;
    e.rating = rating;
    e.interaction_id = reporter + ":" + target + ":" + std::to_string(at);
    e.recorded_at = at;
    return e;
}

}  // namespace

TEST_CASE("kv store replays its log") {
    test::TempDir dir;
    {
        storage::KvStore kv(dir / "kv.log");
        kv.put("a", "1");
        kv.put("b/x", "2");
        kv.put("a", "3");
        CHECK(kv.put_if_absent("c", "4"));
        CHECK_FALSE(kv.put_if_absent("c", "5"));
    }
    storage::KvStore kv(dir / "kv.log");
    CHECK(kv.get("a") == "3");
    CHECK(kv.get("c") == "4");
    CHECK(kv.size() == 3);
    CHECK(kv.scan_prefix("b/").size() == 1);
    CHECK_FALSE(kv.get("zzz"));
}

TEST_CASE("first score gets version 1, second version 2, history retained") {
    PrivateStore store;
    CHECK(store.put_trust_score(make_score("u", "p", 1, 0.5)) == 1);
    CHECK(store.put_trust_score(make_score("u", "p", 2, 0.6)) == 2);
    const auto latest = store.get_latest_score(StakeholderId{"u"}, StakeholderId{"p"});
    REQUIRE(latest);
    CHECK(latest->version == 2);
    CHECK(latest->score == 0.6);
    const auto hist = store.history(StakeholderId{"u"}, StakeholderId{"p"});
    REQUIRE(hist.size() == 2);
    CHECK(hist[0].version == 1);
    CHECK(hist[0].score == 0.5);
}

TEST_CASE("versions must advance by exactly one") {
    PrivateStore store;
    CHECK_THROWS_AS(store.put_trust_score(make_score("u", "p", 2, 0.5)), TrustError);
    store.put_trust_score(make_score("u", "p", 1, 0.5));
    try {
        store.put_trust_score(make_score("u", "p", 1, 0.7));
        FAIL("expected conflict");
    } catch (const TrustError& e) {
        CHECK(e.code() == ErrorCode::kVersionConflict);
    }
    CHECK_THROWS_AS(store.put_trust_score(make_score("u", "p", 2, 1.5)), TrustError);
}

TEST_CASE("unknown pair is absent and scopes are distinct") {
    PrivateStore store;
    CHECK_FALSE(store.get_latest_score(StakeholderId{"u"}, StakeholderId{"p"}));
    store.put_trust_score(make_score("u", "p", 1, 0.5));
    CHECK_FALSE(store.get_latest_score(StakeholderId{"u"}, StakeholderId{"p"}, std::string("offer-1")));
    store.put_trust_score(make_score("u", "p", 1, 0.9, "offer-1"));
    CHECK(store.get_latest_score(StakeholderId{"u"}, StakeholderId{"p"}, std::string("offer-1"))->score == 0.9);
    CHECK(store.get_latest_score(StakeholderId{"u"}, StakeholderId{"p"})->score == 0.5);
}

TEST_CASE("stored scores read back bit-identically, also after reopening") {
    test::TempDir dir;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TrustScore> written;
    {
        PrivateStore store(dir / "private.log");
        for (int i = 0; i < 200; ++i) {
            auto s = make_score("u", "p" + std::to_string(i % 7), 0, u(rng),
                                i % 2 ? std::optional<std::string>("of/" + std::to_string(i % 3) + "%") : std::nullopt);
            s.version = store.latest_version(s.evaluator, s.target, s.offer_id) + 1;
            s.satisfaction = u(rng);
            store.put_trust_score(s);
            CHECK(*store.get_latest_score(s.evaluator, s.target, s.offer_id) == s);
            written.push_back(s);
        }
    }
    PrivateStore reopened(dir / "private.log");
    for (const auto& s : written) {
        const auto hist = reopened.history(s.evaluator, s.target, s.offer_id);
        REQUIRE(hist.size() >= s.version);
        CHECK(hist[s.version - 1] == s);
    }
}

TEST_CASE("concurrent writers on the same base version admit exactly one winner") {
    for (int round = 0; round < 50; ++round) {
        PrivateStore store;
        store.put_trust_score(make_score("u", "p", 1, 0.5));
        constexpr int kWriters = 8;
        std::atomic<int> wins{0};
        std::atomic<int> conflicts{0};
        std::barrier start(kWriters);
        std::vector<std::jthread> threads;
        for (int w = 0; w < kWriters; ++w) {
            threads.emplace_back([&, w] {
                start.arrive_and_wait();
                try {
                    store.put_trust_score(make_score("u", "p", 2, 0.1 * w));
                    ++wins;
                } catch (const TrustError& e) {
                    if (e.code() == ErrorCode::kVersionConflict) ++conflicts;
                }
            });
        }
        threads.clear();
        CHECK(wins == 1);
        CHECK(conflicts == kWriters - 1);
        CHECK(store.history(StakeholderId{"u"}, StakeholderId{"p"}).size() == 2);
    }
}

TEST_CASE("private store keys escape separators") {
    const auto k = PrivateStore::score_key(StakeholderId{"a/b"}, StakeholderId{"c%d"}, std::string("o/1"), 3);
    CHECK(k == "scores/a%2Fb/c%25d/o%2F1/00000000000000000003");
    CHECK(PrivateStore::score_key(StakeholderId{"a"}, StakeholderId{"b"}, std::nullopt, 1) ==
          "scores/a/b/_/00000000000000000001");
}

TEST_CASE("raw records live beside scores") {
    PrivateStore store;
    store.put_raw("context", "u/o/1", {{"x", 1}});
    CHECK(store.get_raw("context", "u/o/1")->at("x") == 1);
    CHECK_FALSE(store.get_raw("context", "u/o/2"));
}

TEST_CASE("data lake sequences and line count over 1000 appends") {
    test::TempDir dir;
    const auto path = dir / "lake.jsonl";
    DataLake lake(path);
    CHECK(lake.append(make_entry("r", "t", OfferType::kRan, 0.5, 10)) == 1);
    for (int i = 2; i <= 1000; ++i) {
        CHECK(lake.append(make_entry("r" + std::to_string(i % 9), "t" + std::to_string(i % 13),
                                     kAllOfferTypes[static_cast<std::size_t>(i) % 5], (i % 100) / 100.0, 10 + i)) ==
              static_cast<std::uint64_t>(i));
    }
    CHECK(test::line_count(path) == 1000);
    CHECK(lake.last_sequence() == 1000);
}

TEST_CASE("sensitive fields are rejected") {
    DataLake lake;
    nlohmann::json record{{"reporter", "u"},   {"target", "p"},           {"offer_type", "RAN"},
                          {"rating", 0.5},     {"interaction_id", "ix-1"}, {"recorded_at", 100},
                          {"sla_details", "x"}};
    try {
        lake.append_record(record);
        FAIL("expected SENSITIVE_FIELD");
    } catch (const TrustError& e) {
        CHECK(e.code() == ErrorCode::kSensitiveField);
    }
    record.erase("sla_details");
    CHECK(lake.append_record(record) == 1);
    record["seq"] = 7;
    CHECK_THROWS_AS(lake.append_record(record), TrustError);
    CHECK(lake.size() == 1);
}

TEST_CASE("data lake queries filter by target, type and time") {
    DataLake lake;
    lake.append(make_entry("a", "t", OfferType::kSpectrum, 0.5, 100));
    lake.append(make_entry("b", "t", OfferType::kRan, 0.5, 200));
    lake.append(make_entry("c", "t", OfferType::kSpectrum, 0.5, 300));
    lake.append(make_entry("d", "t", OfferType::kEdge, 0.5, 400));
    lake.append(make_entry("e", "t", OfferType::kSlice, 0.5, 500));
    lake.append(make_entry("a", "other", OfferType::kRan, 0.5, 600));
    CHECK(lake.query(StakeholderId{"t"}).size() == 5);
    CHECK(lake.query(StakeholderId{"other"}).size() == 1);
    CHECK(lake.query(StakeholderId{"t"}, OfferType::kSpectrum).size() == 2);
    CHECK(lake.query(StakeholderId{"t"}, std::nullopt, 10'000).empty());
    CHECK(lake.query(StakeholderId{"t"}, std::nullopt, 300).size() == 3);
    CHECK(lake.by_reporter(StakeholderId{"a"}).size() == 2);
}

TEST_CASE("three entries for a target, one for another") {
    DataLake lake;
    lake.append(make_entry("a", "t", std::nullopt, 0.1, 1));
    lake.append(make_entry("b", "t", std::nullopt, 0.2, 2));
    lake.append(make_entry("c", "t", std::nullopt, 0.3, 3));
    lake.append(make_entry("a", "u", std::nullopt, 0.4, 4));
    CHECK(lake.query(StakeholderId{"t"}).size() == 3);
}

TEST_CASE("replaying the log reproduces every query after random operations") {
    test::TempDir dir;
    const auto path = dir / "lake.jsonl";
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> who(0, 9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<DataLakeEntry>> before;
    {
        DataLake lake(path);
        for (int i = 0; i < 1000; ++i) {
            const bool typed = who(rng) < 7;
            lake.append(make_entry("r" + std::to_string(who(rng)), "t" + std::to_string(who(rng)),
                                   typed ? std::optional(kAllOfferTypes[static_cast<std::size_t>(who(rng)) % 5])
                                         : std::nullopt,
                                   u(rng), 1 + who(rng) * 1000));
        }
        for (int t = 0; t < 10; ++t) {
            before.push_back(lake.query(StakeholderId{"t" + std::to_string(t)}));
            before.push_back(lake.query(StakeholderId{"t" + std::to_string(t)}, OfferType::kEdge, 4000));
            before.push_back(lake.by_reporter(StakeholderId{"r" + std::to_string(t)}));
        }
    }
    DataLake replayed(path);
    std::size_t q = 0;
    for (int t = 0; t < 10; ++t) {
        CHECK(replayed.query(StakeholderId{"t" + std::to_string(t)}) == before[q++]);
        CHECK(replayed.query(StakeholderId{"t" + std::to_string(t)}, OfferType::kEdge, 4000) == before[q++]);
        CHECK(replayed.by_reporter(StakeholderId{"r" + std::to_string(t)}) == before[q++]);
    }
    CHECK(replayed.size() == 1000);
}

TEST_CASE("data lake line format round-trips bit-exactly") {
    const auto text = test::read_file(test::fixture("datalake_two_reporters.jsonl"));
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        const auto line = text.substr(pos, end - pos);
        CHECK(DataLake::serialize_line(DataLake::parse_line(line)) == line);
        pos = end + 1;
    }
    test::TempDir dir;
    const auto copy = dir.copy_fixture("datalake_two_reporters.jsonl");
    {
        DataLake lake(copy);
        CHECK(lake.size() == 3);
    }
    CHECK(test::read_file(copy) == text);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        auto e = make_entry("r", "t", i % 2 ? std::optional(OfferType::kVnfCnf) : std::nullopt,
                            storage::round_rating(u(rng)), 1 + i);
        e.reporter.domain.clear();
        e.target.domain.clear();
        e.sequence = static_cast<std::uint64_t>(i + 1);
        const auto line = DataLake::serialize_line(e);
        CHECK(DataLake::parse_line(line) == e);
        CHECK(DataLake::serialize_line(DataLake::parse_line(line)) == line);
    }
}

TEST_CASE("strict line parsing") {
    CHECK_THROWS_AS(DataLake::parse_line(R"({"seq":1,"reporter":"a","target":"b"})"), TrustError);
    CHECK_THROWS_AS(DataLake::parse_line("not json"), TrustError);
    CHECK_THROWS_AS(
        DataLake::parse_line(
            R"({"seq":1,"reporter":"a","target":"b","offer_type":null,"rating":0.5,"interaction_id":"x","recorded_at":1,"extra":1})"),
        TrustError);
}

TEST_CASE("published entries drop domains and round ratings") {
    DataLake lake;
    lake.append(make_entry("r", "t", std::nullopt, 0.123456789, 5));
    const auto e = lake.entries().front();
    CHECK(e.reporter.domain.empty());
    CHECK(e.target.domain.empty());
    CHECK(e.rating == 0.1235);
}

TEST_CASE("private values never reach the data lake") {
    test::TempDir dir;
    PrivateStore store(dir / "private.log");
    DataLake lake(dir / "lake.jsonl");
    auto s = make_score("u", "p", 1, 0.987654321);
    s.credibility = 0.123123123;
    store.put_trust_score(s);
    store.put_raw("context", "u/o/1", {{"provider_stats", "secret-sla-record"}});
    lake.append(make_entry("u", "p", std::nullopt, 0.5, 10));

    const auto lake_text = test::read_file(dir / "lake.jsonl");
    for (const auto& key : store.keys()) CHECK(lake_text.find(key) == std::string::npos);
    CHECK(lake_text.find("secret-sla-record") == std::string::npos);
    CHECK(lake_text.find("0.987654321") == std::string::npos);
    CHECK(lake_text.find("credibility") == std::string::npos);
    lake.scan([&](const DataLakeEntry& e) {
        CHECK(e.rating != s.score);
        CHECK(e.rating != s.credibility);
    });
}
