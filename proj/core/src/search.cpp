#include "hallseek/search.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace hallseek {

namespace {

void validate(const SearchConfig& config) {
    if (config.b_lo < 2 || config.b_lo > config.b_hi)
        throw std::invalid_argument("search: requires 2 <= b_lo <= b_hi");
    if (config.u <= 0 || config.u > Rat(1, 2))
        throw std::invalid_argument("search: requires 0 < u <= 1/2");
    if (config.wn < 0 || config.wi < 0)
        throw std::invalid_argument("search: requires wn, wi >= 0");
    if (config.shards < 1) throw std::invalid_argument("search: requires shards >= 1");
    if (config.chunk < 1) throw std::invalid_argument("search: requires chunk >= 1");
    if (config.theta.p < 1 || config.theta.q < 1)
        throw std::invalid_argument("search: theta must be positive");
    if (config.log_theta && (config.log_theta->p < 1 || config.log_theta->q < 1))
        throw std::invalid_argument("search: log_theta must be positive");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Single owner of the output file, the dedup store, and the hit counters.
class HitWriter {
  public:
    HitWriter(const SearchConfig& config, bool resuming, std::uint64_t duplicates_baseline)
        : config_(config), duplicates_(duplicates_baseline) {
        if (config.output_path.empty()) return;
        if (resuming && std::filesystem::exists(config.output_path)) {
            for (const Hit& h : read_hits(config.output_path, config.format)) {
                seen_.insert(h.point.x);
                if (ratio_at_least(h.point.x, h.point.k, config.theta)) ++hits_at_theta_;
            }
        }
        out_.open(config.output_path, resuming ? std::ios::app : std::ios::trunc);
        if (!out_) throw std::runtime_error("search: cannot open output " + config.output_path);
        has_file_ = true;
    }

    void submit(Hit hit) {
        std::scoped_lock lk(mu_);
        auto [it, inserted] = seen_.insert(hit.point.x);
        if (!inserted) {
            ++duplicates_;
            return;
        }
        if (ratio_at_least(hit.point.x, hit.point.k, config_.theta)) ++hits_at_theta_;
        if (has_file_) {
            out_ << format_hit(hit, config_.format) << '\n';
            out_.flush();
            if (!out_) throw std::runtime_error("search: write failed on " + config_.output_path);
        }
        fresh_.push_back(std::move(hit));
    }

    void flush() {
        std::scoped_lock lk(mu_);
        if (has_file_) {
            out_.flush();
            if (!out_) throw std::runtime_error("search: flush failed on " + config_.output_path);
        }
    }

    std::uint64_t hits_at_theta() {
        std::scoped_lock lk(mu_);
        return hits_at_theta_;
    }
    std::uint64_t duplicates() {
        std::scoped_lock lk(mu_);
        return duplicates_;
    }
    std::vector<Hit> take_fresh() { return std::move(fresh_); }

  private:
    const SearchConfig& config_;
    std::mutex mu_;
    std::ofstream out_;
    bool has_file_ = false;
    std::set<Int> seen_;
    std::vector<Hit> fresh_;
    std::uint64_t hits_at_theta_ = 0;
    std::uint64_t duplicates_;
};

}  // namespace

std::string config_fingerprint(const SearchConfig& config) {
    std::ostringstream os;
    os << "b:" << config.b_lo << ":" << config.b_hi << "|u:" << config.u.get_str()
       << "|cap:" << (config.c2_cap_override ? config.c2_cap_override->get_str() : "none")
       << "|theta:" << config.theta.p.get_str() << "/" << config.theta.q.get_str() << "|log:"
       << (config.log_theta
               ? config.log_theta->p.get_str() + "/" + config.log_theta->q.get_str()
               : "none")
       << "|wn:" << config.wn << "|wi:" << config.wi << "|shards:" << config.shards
       << "|chunk:" << config.chunk
       << "|fmt:" << (config.format == OutputFormat::tsv ? "tsv" : "jsonl");
    std::ostringstream hex;
    hex << std::hex << fnv1a(os.str());
    return hex.str();
}

Int dedup_key(const Hit& hit) { return hit.point.x; }

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path) {
    nlohmann::json j;
    j["fingerprint"] = checkpoint.fingerprint;
    j["completed_b"] = checkpoint.completed_b;
    j["cells_processed"] = checkpoint.cells_processed;
    j["lifts_failed"] = checkpoint.lifts_failed;
    j["hits_emitted"] = checkpoint.hits_emitted;
    j["duplicates"] = checkpoint.duplicates;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("save_checkpoint: cannot open " + tmp);
        out << j.dump(2) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("save_checkpoint: write failed on " + tmp);
    }
    std::filesystem::rename(tmp, path);  // atomic replace
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
    nlohmann::json j;
    in >> j;
    Checkpoint cp;
    cp.fingerprint = j.at("fingerprint").get<std::string>();
    cp.completed_b = j.at("completed_b").get<std::vector<std::int64_t>>();
    cp.cells_processed = j.at("cells_processed").get<std::uint64_t>();
    cp.lifts_failed = j.at("lifts_failed").get<std::uint64_t>();
    cp.hits_emitted = j.at("hits_emitted").get<std::uint64_t>();
    cp.duplicates = j.at("duplicates").get<std::uint64_t>();
    return cp;
}

RunResult run(const SearchConfig& config, const std::function<void(const Checkpoint&)>& on_chunk) {
    validate(config);
    const std::string fingerprint = config_fingerprint(config);

    Checkpoint shared;
    shared.fingerprint = fingerprint;
    shared.completed_b.assign(config.shards, config.b_lo - 1);

    bool resuming = false;
    if (!config.checkpoint_path.empty() && std::filesystem::exists(config.checkpoint_path)) {
        shared = load_checkpoint(config.checkpoint_path);
        if (shared.fingerprint != fingerprint)
            throw ConfigMismatchError("search: checkpoint fingerprint does not match configuration");
        if (shared.completed_b.size() != static_cast<std::size_t>(config.shards))
            throw ConfigMismatchError("search: checkpoint shard count does not match configuration");
        resuming = true;
    }

    HitWriter writer(config, resuming, shared.duplicates);

    std::atomic<std::uint64_t> cells{shared.cells_processed};
    std::atomic<std::uint64_t> lifts_failed{shared.lifts_failed};
    std::mutex checkpoint_mu;
    std::atomic<bool> stop{false};
    std::mutex err_mu;
    std::exception_ptr first_error;

    auto worker = [&](int shard) {
        try {
            std::int64_t done;
            {
                std::scoped_lock lk(checkpoint_mu);
                done = shared.completed_b[shard];
            }
            const Threshold emit_theta = config.log_theta ? *config.log_theta : config.theta;
            for (std::int64_t ci = shard; !stop; ci += config.shards) {
                const std::int64_t start = config.b_lo + ci * config.chunk;
                if (start > config.b_hi) break;
                const std::int64_t end = std::min(config.b_hi, start + config.chunk - 1);
                if (end <= done) continue;

                for (std::int64_t b = start; b <= end && !stop; ++b) {
                    for (const SearchCell& cell :
                         admissible_cells(b, config.u, config.c2_cap_override)) {
                        BuildStats bs;
                        auto cands = build_candidates(cell, config.wn, &bs);
                        cells.fetch_add(1, std::memory_order_relaxed);
                        lifts_failed.fetch_add(bs.lifts_failed, std::memory_order_relaxed);
                        for (const Candidate& cand : cands)
                            for (Hit& hit : evaluate_candidate(cand, config.wi, emit_theta))
                                writer.submit(std::move(hit));
                    }
                }
                if (stop) break;

                done = end;
                writer.flush();  // hits reach disk before the checkpoint does
                Checkpoint snapshot;
                {
                    std::scoped_lock lk(checkpoint_mu);
                    shared.completed_b[shard] = end;
                    shared.cells_processed = cells.load(std::memory_order_relaxed);
                    shared.lifts_failed = lifts_failed.load(std::memory_order_relaxed);
                    shared.hits_emitted = writer.hits_at_theta();
                    shared.duplicates = writer.duplicates();
                    if (!config.checkpoint_path.empty())
                        save_checkpoint(shared, config.checkpoint_path);
                    snapshot = shared;
                }
                if (on_chunk) on_chunk(snapshot);
            }
        } catch (...) {
            std::scoped_lock lk(err_mu);
            if (!first_error) first_error = std::current_exception();
            stop = true;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(config.shards);
    for (int s = 0; s < config.shards; ++s) pool.emplace_back(worker, s);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    RunResult result;
    {
        std::scoped_lock lk(checkpoint_mu);
        shared.cells_processed = cells.load();
        shared.lifts_failed = lifts_failed.load();
        shared.hits_emitted = writer.hits_at_theta();
        shared.duplicates = writer.duplicates();
        result.checkpoint = shared;
    }
    if (!config.checkpoint_path.empty()) save_checkpoint(result.checkpoint, config.checkpoint_path);
    result.hits = writer.take_fresh();
    return result;
}

}  // namespace hallseek
