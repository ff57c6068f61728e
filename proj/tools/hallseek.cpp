#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hallseek/candidate.hpp"
#include "hallseek/evaluator.hpp"
#include "hallseek/families.hpp"
#include "hallseek/hit_io.hpp"
#include "hallseek/oracle.hpp"
#include "hallseek/search.hpp"
#include "hallseek/stats.hpp"
#include "hallseek/table.hpp"

namespace {

using namespace hallseek;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitIo = 3;

std::pair<Int, Int> parse_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("range must be LO:HI, got '" + s + "'");
    return {Int(s.substr(0, colon)), Int(s.substr(colon + 1))};
}

std::pair<std::int64_t, std::int64_t> parse_range_i64(const std::string& s) {
    auto [lo, hi] = parse_range(s);
    if (!lo.fits_slong_p() || !hi.fits_slong_p())
        throw std::invalid_argument("range endpoint out of machine range: " + s);
    return {lo.get_si(), hi.get_si()};
}

Threshold parse_threshold(const std::string& s) {
    auto slash = s.find('/');
    Threshold t;
    if (slash == std::string::npos) {
        t.p = Int(s);
    } else {
        t.p = Int(s.substr(0, slash));
        t.q = Int(s.substr(slash + 1));
    }
    if (t.p < 1 || t.q < 1) throw std::invalid_argument("threshold must be positive: " + s);
    return t;
}

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Rat r;
    if (slash == std::string::npos) {
        r = Rat(Int(s));
    } else {
        r = Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    r.canonicalize();
    return r;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
    std::string b_range, u, c2_max, theta, log_theta, checkpoint, out, format, preset;
    int wn = 1, wi = 2, shards = 1, chunk = 64;
    bool b_given = false, u_given = false;
};

int do_search(const SearchArgs& args) {
    SearchConfig config;
    if (args.preset == "deep") {
        config.u = Rat(1, 3);
        config.b_lo = 2;
        config.b_hi = 600'000'000;
    } else if (args.preset == "wide") {
        config.u = Rat(1, 4);
        config.b_lo = 2;
        config.b_hi = 5'000'000'000LL;
    } else if (!args.preset.empty()) {
        throw std::invalid_argument("unknown preset '" + args.preset + "' (deep|wide)");
    }
    if (args.b_given) std::tie(config.b_lo, config.b_hi) = parse_range_i64(args.b_range);
    if (args.u_given) config.u = parse_rational(args.u);
    if (!args.c2_max.empty()) config.c2_cap_override = Int(args.c2_max);
    if (!args.theta.empty()) config.theta = parse_threshold(args.theta);
    if (!args.log_theta.empty()) config.log_theta = parse_threshold(args.log_theta);
    config.wn = args.wn;
    config.wi = args.wi;
    config.shards = args.shards;
    config.chunk = args.chunk;
    config.checkpoint_path = args.checkpoint;
    config.output_path = args.out;
    if (args.format == "tsv")
        config.format = OutputFormat::tsv;
    else if (args.format == "jsonl")
        config.format = OutputFormat::jsonl;
    else
        throw std::invalid_argument("unknown format '" + args.format + "' (tsv|jsonl)");

    RunResult result = run(config);
    if (config.output_path.empty())
        for (const Hit& hit : result.hits) std::cout << format_hit(hit, config.format) << '\n';

    const Checkpoint& cp = result.checkpoint;
    std::cerr << "search b in [" << config.b_lo << ", " << config.b_hi << "]: cells "
              << cp.cells_processed << ", lift failures " << cp.lifts_failed << ", hits "
              << cp.hits_emitted << ", duplicates " << cp.duplicates << "\n";
    return kExitOk;
}

struct BruteArgs {
    std::string x_range, out, samples;
    Int n_max = 1;
    unsigned threads = 0;
    bool allow_huge = false;
};

int do_brute(const BruteArgs& args) {
    auto [lo, hi] = parse_range(args.x_range);
    if (hi > 400'000'000L && !args.allow_huge)
        throw std::invalid_argument(
            "scan beyond 4e8 needs --allow-huge (expect a long, memory-light run)");
    if (hi > 400'000'000L)
        std::cerr << "warning: scanning " << Int(hi - lo + 1).get_str()
                  << " values; this can take a while\n";

    BruteResult result = brute_scan(lo, hi, args.n_max, args.threads);

    std::ofstream file;
    std::ostream& sink = open_sink(file, args.out);
    for (const Hit& hit : result.hits) sink << to_tsv_line(hit) << '\n';
    if (!sink) throw std::runtime_error("write failed");

    if (!args.samples.empty()) {
        std::ofstream csv(args.samples, std::ios::trunc);
        if (!csv) throw std::runtime_error("cannot open " + args.samples);
        csv << "x,k,ratio\n";
        for (const RatioSample& s : result.samples)
            csv << s.x.get_str() << ',' << s.k.get_str() << ',' << s.ratio_display << '\n';
        if (!csv) throw std::runtime_error("write failed on " + args.samples);
    }
    std::cerr << "scanned " << result.scanned << " values, " << result.samples.size()
              << " samples, " << result.hits.size() << " hits\n";
    return kExitOk;
}

struct FamiliesArgs {
    std::string family, t_range, theta, x, out;
    Int scale_t = 2;
};

int do_families(const FamiliesArgs& args) {
    std::ofstream file;
    std::ostream& sink = open_sink(file, args.out);

    if (args.family == "hall") {
        auto [lo, hi] = parse_range(args.t_range);
        std::optional<Threshold> theta;
        if (!args.theta.empty()) theta = parse_threshold(args.theta);
        // step to the first t == 3 (mod 6) at or above lo
        Int t = lo;
        Int m;
        mpz_mod(m.get_mpz_t(), t.get_mpz_t(), Int(6).get_mpz_t());
        t += (Int(3) - m + 6) % 6;
        for (; t <= hi; t += 6) {
            FamilyMember member = hall_family(t);
            if (theta && !ratio_at_least(member.point.x, member.point.k, *theta)) continue;
            sink << to_tsv_line(make_hit(member.point, HitSource::family_hall)) << '\n';
        }
    } else if (args.family == "fp") {
        auto [lo, hi] = parse_range(args.t_range);
        Threshold theta = args.theta.empty() ? Threshold{} : parse_threshold(args.theta);
        for (const FamilyMember& member : fermat_pell_scan(lo, hi, theta))
            sink << to_tsv_line(make_hit(member.point, HitSource::family_fp)) << '\n';
    } else if (args.family == "scaled") {
        if (args.x.empty()) throw std::invalid_argument("--family scaled needs --x");
        HallPoint base = hall_k(Int(args.x));
        if (base.k == 0) throw std::invalid_argument("x is a perfect square, nothing to scale");
        HallPoint scaled = scale_solution(base, args.scale_t);
        sink << to_tsv_line(make_hit(scaled, HitSource::scaled)) << '\n';
    } else {
        throw std::invalid_argument("unknown family '" + args.family + "' (hall|fp|scaled)");
    }
    if (!sink) throw std::runtime_error("write failed");
    return kExitOk;
}

struct StatsArgs {
    std::string x_range;
    int n_max = 16;
    unsigned threads = 0;
};

int do_stats(const StatsArgs& args) {
    auto [lo, hi] = parse_range(args.x_range);
    if (args.n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
    BruteResult result = brute_scan(lo, hi, Int(args.n_max), args.threads);
    StatsReport report = analyze_samples(result.samples, args.n_max, Int(hi).get_d());
    std::cout << format_report(report);
    std::cout << "hits (ratio >= 1) " << result.hits.size() << "\n";
    return kExitOk;
}

struct CandidateArgs {
    std::int64_t b = 2;
    std::string c2 = "1";
    int wn = 0;
    std::string theta = "1";
};

int do_candidate(const CandidateArgs& args) {
    SearchCell cell{args.b, Int(args.c2)};
    Threshold theta = parse_threshold(args.theta);
    Rat c(cell.c2, 2);
    c.canonicalize();
    std::cout << "cell b=" << cell.b << " C2=" << cell.c2.get_str() << " (C = " << c.get_str()
              << ")\n";

    Int b2 = Int(static_cast<long>(cell.b)) * static_cast<long>(cell.b);
    auto roots = solve_a0(cell);
    std::cout << "cube roots of C2 mod b^2 = " << b2.get_str() << ": " << roots.size() << "\n";
    if (roots.empty()) return kExitOk;

    for (const Int& a0 : roots) {
        Int alpha = balanced_residue(a0 * a0, b2);
        std::cout << "a0 = " << a0.get_str() << "\n  alpha = " << alpha.get_str() << "\n";
        auto lift = lift_k0(cell.b, a0, alpha, cell.c2);
        if (!lift) {
            std::cout << "  no lift (d b^2 does not divide 2 a0^3 - 3 alpha a0 + C2)\n";
            continue;
        }
        Int n_star = select_n(cell.b, cell.c2, alpha, a0, lift->k0, lift->d);
        std::cout << "  d = " << lift->d.get_str() << "\n  k0 = " << lift->k0.get_str()
                  << "\n  n = " << n_star.get_str() << "\n";

        Int step = 2 * Int(static_cast<long>(cell.b)) * static_cast<long>(cell.b) *
                   static_cast<long>(cell.b) / lift->d;
        for (int delta = -args.wn; delta <= args.wn; ++delta) {
            Int n = n_star + delta;
            Int a = a0 + lift->k0 * b2 + n * step;
            std::cout << "  [n = " << n.get_str() << "] a = " << a.get_str();
            if (a <= cell.b) {
                std::cout << "  (a <= b, discarded)\n";
                continue;
            }
            Int g;
            Int bz(static_cast<long>(cell.b));
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), bz.get_mpz_t());
            if (g != 1) {
                std::cout << "  (gcd(a, b) > 1, discarded)\n";
                continue;
            }
            Int al = balanced_residue(a * a, b2);
            Int x0 = (a * a - al) / b2;
            Int k = k_from_lemma(a, cell.b, cell.c2, 0);
            std::cout << "\n    x0 = " << x0.get_str() << "\n    k = " << k.get_str();
            if (k != 0) {
                std::cout << "\n    r = " << ratio_decimal(x0, k, 2)
                          << (ratio_at_least(x0, k, theta) ? "  hit" : "");
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string table;
    bool verbose = false;
};

int do_verify(const VerifyArgs& args) {
    const std::vector<KnownHitRow> rows =
        args.table.empty() ? known_good_examples() : load_table(args.table);
    TableReport report = verify_table(rows);
    std::cout << format_table_report(report, args.verbose);
    return report.failures == 0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact search for good examples of Hall's conjecture: 0 < |x^3 - y^2| < sqrt(x)"};
    app.require_subcommand(1);

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "sweep cells (b, C2) for candidate x0");
    auto* bopt = search_cmd->add_option("--b", search_args.b_range, "b range LO:HI");
    auto* uopt = search_cmd->add_option("--u", search_args.u, "C2 cap exponent (cap = 2 b^u)");
    search_cmd->add_option("--c2-max", search_args.c2_max, "fixed C2 cap, overrides --u");
    search_cmd->add_option("--theta", search_args.theta, "hit threshold P/Q (default 1)");
    search_cmd->add_option("--log-theta", search_args.log_theta, "lower emission threshold P/Q");
    search_cmd->add_option("--wn", search_args.wn, "n window half-width (default 1)");
    search_cmd->add_option("--wi", search_args.wi, "i window half-width (default 2)");
    search_cmd->add_option("--shards", search_args.shards, "worker shards (default 1)");
    search_cmd->add_option("--chunk", search_args.chunk, "b values per work unit (default 64)");
    search_cmd->add_option("--checkpoint", search_args.checkpoint, "checkpoint file (resumable)");
    search_cmd->add_option("--out", search_args.out, "output file (default stdout)");
    search_cmd->add_option("--format", search_args.format, "tsv|jsonl (default tsv)")
        ->default_val("tsv");
    search_cmd->add_option("--preset", search_args.preset, "deep (u=1/3) | wide (u=1/4)");

    BruteArgs brute_args;
    auto* brute_cmd = app.add_subcommand("brute", "exhaustive k(x) scan over an x range");
    brute_cmd->add_option("--x", brute_args.x_range, "x range LO:HI")->required();
    auto* nmax_opt = brute_cmd->add_option("--n-max", [&brute_args](CLI::results_t vals) {
        brute_args.n_max = Int(vals.at(0));
        return true;
    }, "sample threshold |k| <= n sqrt(x) (default 1)");
    nmax_opt->type_name("INT");
    brute_cmd->add_option("--out", brute_args.out, "hit output file (default stdout)");
    brute_cmd->add_option("--samples", brute_args.samples, "sample CSV (x, k, ratio)");
    brute_cmd->add_option("--threads", brute_args.threads, "scan threads (default: all cores)");
    brute_cmd->add_flag("--allow-huge", brute_args.allow_huge, "permit scans beyond 4e8");

    FamiliesArgs fam_args;
    auto* fam_cmd = app.add_subcommand("families", "emit parametric family members");
    fam_cmd->add_option("--family", fam_args.family, "hall | fp | scaled")->required();
    fam_cmd->add_option("--t", fam_args.t_range, "t range LO:HI");
    fam_cmd->add_option("--theta", fam_args.theta, "ratio filter P/Q");
    fam_cmd->add_option("--x", fam_args.x, "base x for --family scaled");
    fam_cmd->add_option("--scale-t", [&fam_args](CLI::results_t vals) {
        fam_args.scale_t = Int(vals.at(0));
        return true;
    }, "scale factor t (default 2)")->type_name("INT");
    fam_cmd->add_option("--out", fam_args.out, "output file (default stdout)");

    StatsArgs stats_args;
    auto* stats_cmd = app.add_subcommand("stats", "ratio distribution report over an x range");
    stats_cmd->add_option("--x", stats_args.x_range, "x range LO:HI")->required();
    stats_cmd->add_option("--n-max", stats_args.n_max, "sample threshold (default 16)");
    stats_cmd->add_option("--threads", stats_args.threads, "scan threads (default: all cores)");

    CandidateArgs cand_args;
    auto* cand_cmd = app.add_subcommand("candidate", "trace the pipeline for one (b, C2) cell");
    cand_cmd->add_option("b", cand_args.b, "denominator b")->required();
    cand_cmd->add_option("c2", cand_args.c2, "intercept C2 = 2C")->required();
    cand_cmd->add_option("--wn", cand_args.wn, "n window half-width (default 0)");
    cand_cmd->add_option("--theta", cand_args.theta, "hit threshold P/Q (default 1)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify-table", "recompute the bundled registry");
    verify_cmd->add_option("--table", verify_args.table, "alternate registry file");
    verify_cmd->add_flag("-v,--verbose", verify_args.verbose, "print passing rows too");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    search_args.b_given = bopt->count() > 0;
    search_args.u_given = uopt->count() > 0;
    if (*search_cmd && search_args.preset.empty() && !search_args.b_given) {
        std::cerr << "error: search needs --b LO:HI or --preset\n";
        return kExitBadConfig;
    }

    try {
        if (*search_cmd) return do_search(search_args);
        if (*brute_cmd) return do_brute(brute_args);
        if (*fam_cmd) return do_families(fam_args);
        if (*stats_cmd) return do_stats(stats_args);
        if (*cand_cmd) return do_candidate(cand_args);
        if (*verify_cmd) return do_verify(verify_args);
    } catch (const ConfigMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::logic_error& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::runtime_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitBadConfig;
}
