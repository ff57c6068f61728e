#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hallseek/candidate.hpp"
#include "hallseek/evaluator.hpp"
#include "hallseek/hit_io.hpp"

namespace hallseek {

/// Full description of one sweep over b and c2. The fingerprint of the
/// semantic fields guards checkpoints against resumption under a different
/// search space.
struct SearchConfig {
    std::int64_t b_lo = 2;
    std::int64_t b_hi = 2;
    Rat u = Rat(1, 3);                  // c2 cap exponent, 0 < u <= 1/2
    std::optional<Int> c2_cap_override;
    Threshold theta{};                  // hit threshold, default 1/1
    std::optional<Threshold> log_theta; // optional lower emission threshold
    int wn = 1;                         // n window
    int wi = 2;                         // i window
    int shards = 1;
    int chunk = 64;                     // contiguous b values per work unit
    std::string checkpoint_path;        // empty: no checkpointing
    std::string output_path;            // empty: collect in memory only
    OutputFormat format = OutputFormat::tsv;
};

struct Checkpoint {
    std::string fingerprint;
    std::vector<std::int64_t> completed_b;  // per shard, highest fully completed b
    std::uint64_t cells_processed = 0;
    std::uint64_t lifts_failed = 0;
    std::uint64_t hits_emitted = 0;
    std::uint64_t duplicates = 0;
};

struct RunResult {
    std::vector<Hit> hits;  // hits newly emitted by this run, deduplicated
    Checkpoint checkpoint;
};

struct ConfigMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string config_fingerprint(const SearchConfig& config);

// Hits deduplicate on x: the same x reached from different (b, c2) cells is
// reported once, first writer wins.
Int dedup_key(const Hit& hit);

// The full sweep. Work units are contiguous b chunks assigned round-robin to
// shards; the checkpoint advances by atomic file replace after each completed
// chunk, with the output stream flushed first so the checkpoint never gets
// ahead of the hits on disk. Resuming from a checkpoint replays at most the
// in-flight chunks; the dedup store is rebuilt from the output file, so the
// final hit set equals an uninterrupted run's. on_chunk, when set, fires
// after every checkpoint advance (tests use it for fault injection).
RunResult run(const SearchConfig& config,
              const std::function<void(const Checkpoint&)>& on_chunk = {});

Checkpoint load_checkpoint(const std::string& path);
void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);

}  // namespace hallseek
