#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "hallseek/oracle.hpp"
#include "hallseek/search.hpp"

using namespace hallseek;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hallseek_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::set<Int> xs_of(const std::vector<Hit>& hits) {
    std::set<Int> out;
    for (const Hit& h : hits) out.insert(h.point.x);
    return out;
}

std::set<Int> xs_in_file(const std::string& path, OutputFormat format = OutputFormat::tsv) {
    std::set<Int> out;
    for (const Hit& h : read_hits(path, format)) out.insert(dedup_key(h));
    return out;
}

struct AbortInjected {};

}  // namespace

TEST_SUITE("search") {

TEST_CASE("golden cell emits the two good examples it contains") {
    SearchConfig config;
    config.b_lo = config.b_hi = 26;
    config.c2_cap_override = Int(1);
    RunResult result = run(config);

    // the cell's three roots give x0 in {5234, 421351} plus large strays;
    // brute evaluation over every emitted window decides which are hits
    std::set<Int> expected;
    for (const Candidate& cand : build_candidates(SearchCell{26, 1}, config.wn)) {
        for (long i = -config.wi; i <= config.wi; ++i) {
            Int x = cand.x0 + i;
            if (x < 10) continue;
            HallPoint pt = hall_k(x);
            if (pt.k != 0 && pt.k * pt.k <= pt.x) expected.insert(x);
        }
    }
    CHECK(xs_of(result.hits) == expected);
    CHECK(expected == std::set<Int>{Int(5234), Int(421351)});
    CHECK(result.checkpoint.hits_emitted == 2);
}

TEST_CASE("a tiny space has no hits above threshold") {
    SearchConfig config;
    config.b_lo = config.b_hi = 2;
    RunResult result = run(config);
    CHECK(result.hits.empty());
    CHECK(result.checkpoint.cells_processed == 1);
}

TEST_CASE("config validation") {
    SearchConfig config;
    config.b_lo = 1;
    CHECK_THROWS_AS(run(config), std::invalid_argument);
    config.b_lo = 10;
    config.b_hi = 2;
    CHECK_THROWS_AS(run(config), std::invalid_argument);
    config.b_hi = 20;
    config.u = Rat(2, 3);
    CHECK_THROWS_AS(run(config), std::invalid_argument);
    config.u = Rat(1, 3);
    config.shards = 0;
    CHECK_THROWS_AS(run(config), std::invalid_argument);
}

TEST_CASE("fingerprint is stable and sensitive") {
    SearchConfig a;
    a.b_lo = 2;
    a.b_hi = 500;
    SearchConfig b = a;
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    b.b_hi = 501;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    b = a;
    b.u = Rat(1, 4);
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    b = a;
    b.theta = Threshold{2, 1};
    CHECK(config_fingerprint(a) != config_fingerprint(b));
}

TEST_CASE("checkpoint save and load round trip") {
    TempDir dir;
    Checkpoint cp;
    cp.fingerprint = "abc123";
    cp.completed_b = {65, 129, 64};
    cp.cells_processed = 42;
    cp.lifts_failed = 7;
    cp.hits_emitted = 3;
    cp.duplicates = 1;
    save_checkpoint(cp, dir.file("cp.json"));
    Checkpoint back = load_checkpoint(dir.file("cp.json"));
    CHECK(back.fingerprint == cp.fingerprint);
    CHECK(back.completed_b == cp.completed_b);
    CHECK(back.cells_processed == cp.cells_processed);
    CHECK(back.lifts_failed == cp.lifts_failed);
    CHECK(back.hits_emitted == cp.hits_emitted);
    CHECK(back.duplicates == cp.duplicates);
    CHECK_THROWS_AS(load_checkpoint(dir.file("missing.json")), std::runtime_error);
}

TEST_CASE("resume under a different configuration is fatal") {
    TempDir dir;
    SearchConfig config;
    config.b_lo = 2;
    config.b_hi = 40;
    config.checkpoint_path = dir.file("cp.json");
    config.output_path = dir.file("hits.tsv");
    run(config);
    config.b_hi = 80;
    CHECK_THROWS_AS(run(config), ConfigMismatchError);
}

TEST_CASE("sharding leaves the deduplicated hit set invariant") {
    TempDir dir;
    SearchConfig one;
    one.b_lo = 2;
    one.b_hi = 260;
    one.shards = 1;
    one.output_path = dir.file("one.tsv");
    run(one);

    SearchConfig four = one;
    four.shards = 4;
    four.output_path = dir.file("four.tsv");
    run(four);

    CHECK(xs_in_file(dir.file("one.tsv")) == xs_in_file(dir.file("four.tsv")));
}

TEST_CASE("duplicates collapse to one row, first writer wins") {
    TempDir dir;
    SearchConfig config;
    config.b_lo = 2;
    config.b_hi = 200;
    config.output_path = dir.file("hits.tsv");
    RunResult result = run(config);

    // x = 367806 is reachable from both (117, 1) and (134, 3)
    CHECK(result.checkpoint.duplicates >= 1);
    auto hits = read_hits(dir.file("hits.tsv"), OutputFormat::tsv);
    std::set<Int> seen;
    for (const Hit& h : hits) CHECK(seen.insert(dedup_key(h)).second);
    CHECK(xs_of(result.hits).count(Int(367806)) == 1);
}

TEST_CASE("jsonl output round trips") {
    TempDir dir;
    SearchConfig config;
    config.b_lo = 2;
    config.b_hi = 120;
    config.format = OutputFormat::jsonl;
    config.output_path = dir.file("hits.jsonl");
    RunResult result = run(config);
    auto back = read_hits(dir.file("hits.jsonl"), OutputFormat::jsonl);
    REQUIRE(back.size() == result.hits.size());
    std::set<Int> a = xs_of(result.hits), b = xs_of(back);
    CHECK(a == b);
}

TEST_CASE("crash at any chunk boundary resumes to the same hit set") {
    // uninterrupted reference
    TempDir dir;
    SearchConfig reference;
    reference.b_lo = 2;
    reference.b_hi = 220;
    reference.chunk = 16;
    reference.shards = 2;
    reference.output_path = dir.file("ref.tsv");
    run(reference);
    auto want = xs_in_file(dir.file("ref.tsv"));

    for (int crash_after : {1, 2, 5, 9}) {
        TempDir crashdir;
        SearchConfig config = reference;
        config.output_path = crashdir.file("hits.tsv");
        config.checkpoint_path = crashdir.file("cp.json");

        int chunks_seen = 0;
        bool crashed = false;
        try {
            run(config, [&](const Checkpoint&) {
                if (++chunks_seen == crash_after) throw AbortInjected{};
            });
        } catch (const AbortInjected&) {
            crashed = true;
        }
        CHECK(crashed);
        CHECK(fs::exists(config.checkpoint_path));

        // resume to completion, no injection
        RunResult resumed = run(config);
        CHECK(xs_in_file(config.output_path) == want);

        // idempotent append: no duplicate rows survive the replay
        std::set<Int> seen;
        for (const Hit& h : read_hits(config.output_path, OutputFormat::tsv))
            CHECK(seen.insert(dedup_key(h)).second);

        // a second resume is a no-op
        RunResult again = run(config);
        CHECK(again.hits.empty());
        CHECK(xs_in_file(config.output_path) == want);
        CHECK(again.checkpoint.hits_emitted == resumed.checkpoint.hits_emitted);
    }
}

TEST_CASE("per-shard progress is monotone") {
    TempDir dir;
    SearchConfig config;
    config.b_lo = 2;
    config.b_hi = 300;
    config.chunk = 16;
    config.shards = 3;
    std::vector<std::int64_t> high(3, 0);
    bool monotone = true;
    run(config, [&](const Checkpoint& cp) {
        for (int s = 0; s < 3; ++s) {
            if (cp.completed_b[s] < high[s]) monotone = false;
            high[s] = std::max(high[s], cp.completed_b[s]);
        }
    });
    CHECK(monotone);
}

TEST_CASE("unwritable output aborts with the checkpoint intact") {
    TempDir dir;
    SearchConfig config;
    config.b_lo = 2;
    config.b_hi = 40;
    config.checkpoint_path = dir.file("cp.json");
    config.output_path = dir.file("hits.tsv");
    run(config);
    Checkpoint before = load_checkpoint(config.checkpoint_path);

    config.output_path = (dir.path / "no_such_dir" / "hits.tsv").string();
    CHECK_THROWS_AS(run(config), std::runtime_error);
    Checkpoint after = load_checkpoint(config.checkpoint_path);
    CHECK(after.fingerprint == before.fingerprint);
    CHECK(after.completed_b == before.completed_b);
}

TEST_CASE("log threshold widens emission but not the hit count") {
    TempDir dir;
    SearchConfig plain;
    plain.b_lo = 2;
    plain.b_hi = 60;
    plain.output_path = dir.file("plain.tsv");
    RunResult base = run(plain);

    SearchConfig logged = plain;
    logged.log_theta = Threshold{1, 4};
    logged.output_path = dir.file("logged.tsv");
    RunResult wide = run(logged);

    CHECK(wide.checkpoint.hits_emitted == base.checkpoint.hits_emitted);
    CHECK(wide.hits.size() >= base.hits.size());
    for (const Hit& h : wide.hits) CHECK(ratio_at_least(h.point.x, h.point.k, *logged.log_theta));
}

}  // TEST_SUITE
