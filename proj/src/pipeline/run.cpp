#include "polarmon/pipeline/run.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "polarmon/corpus/prevalent.hpp"
#include "polarmon/graphkit/export.hpp"
#include "polarmon/pipeline/experiments.hpp"
#include "polarmon/pipeline/report.hpp"
#include "polarmon/pipeline/stats.hpp"
#include "polarmon/structure/louvain.hpp"
#include "polarmon/structure/netshield.hpp"

#ifndef POLARMON_VERSION
#define POLARMON_VERSION "dev"
#endif

namespace polarmon::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

fs::path resolve(const fs::path& base, const std::string& text) {
    if (text.empty()) return {};
    fs::path p(text);
    if (p.is_relative() && !base.empty()) p = base / p;
    return p.lexically_normal();
}

polarization::SolverMethod parse_solver(const std::string& text) {
    if (text == "direct" || text == "DirectSolve") return polarization::SolverMethod::DirectSolve;
    if (text == "fixed_point" || text == "FixedPoint") return polarization::SolverMethod::FixedPoint;
    throw InvalidArgument("unknown solver '" + text + "' (expected direct or fixed_point)");
}

const std::set<std::string> kConfigKeys{
    "tweets",          "annotations",    "follows",        "rules",
    "stopwords",       "out",            "from",           "to",
    "utc_offset_minutes", "threshold",   "thresholds",     "k",
    "prevalent_top_k", "stats_top_k",    "top_communities", "drop_isolated",
    "emit_both_isolated_modes", "include_isolated_in_pi", "include_isolated_authors", "schema_strict",
    "solver",          "workers",        "lean_left_positive"};

}  // namespace

PipelineConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config: top level must be an object");
    for (const auto& [key, _] : j.items())
        if (!kConfigKeys.count(key)) throw ParseError("config: unknown key '" + key + "'");

    PipelineConfig cfg;
    cfg.base_dir = base_dir;
    try {
        auto str = [&](const char* key) { return j.contains(key) ? j.at(key).get<std::string>() : std::string{}; };
        if (!j.contains("tweets")) throw ParseError("config: 'tweets' is required");
        cfg.tweets = resolve(base_dir, str("tweets"));
        cfg.annotations = resolve(base_dir, str("annotations"));
        cfg.follows = resolve(base_dir, str("follows"));
        cfg.rules = resolve(base_dir, str("rules"));
        cfg.stopwords = resolve(base_dir, str("stopwords"));
        if (j.contains("out")) cfg.out_dir = resolve(base_dir, str("out"));
        if (j.contains("from")) cfg.from = parse_date(str("from"));
        if (j.contains("to")) cfg.to = parse_date(str("to"));
        if (j.contains("utc_offset_minutes")) cfg.utc_offset_minutes = j.at("utc_offset_minutes").get<int>();
        if (j.contains("threshold")) cfg.threshold = j.at("threshold").get<double>();
        if (j.contains("thresholds")) cfg.thresholds = j.at("thresholds").get<std::vector<double>>();
        if (j.contains("k")) cfg.k = j.at("k").get<int>();
        if (j.contains("prevalent_top_k")) cfg.prevalent_top_k = j.at("prevalent_top_k").get<int>();
        if (j.contains("stats_top_k")) cfg.stats_top_k = j.at("stats_top_k").get<std::size_t>();
        if (j.contains("top_communities")) cfg.top_communities = j.at("top_communities").get<std::size_t>();
        if (j.contains("lean_left_positive")) cfg.lean_left_positive = j.at("lean_left_positive").get<bool>();
        if (j.contains("drop_isolated")) cfg.drop_isolated = j.at("drop_isolated").get<bool>();
        if (j.contains("emit_both_isolated_modes"))
            cfg.emit_both_isolated_modes = j.at("emit_both_isolated_modes").get<bool>();
        if (j.contains("include_isolated_in_pi"))
            cfg.include_isolated_in_pi = j.at("include_isolated_in_pi").get<bool>();
        if (j.contains("include_isolated_authors"))
            cfg.include_isolated_authors = j.at("include_isolated_authors").get<bool>();
        if (j.contains("schema_strict")) cfg.schema_strict = j.at("schema_strict").get<bool>();
        if (j.contains("solver")) cfg.solver = parse_solver(str("solver"));
        if (j.contains("workers")) cfg.workers = j.at("workers").get<unsigned>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (cfg.threshold < 0.0 || cfg.threshold > 1.0) throw InvalidArgument("config: threshold must lie in [0, 1]");
    for (double t : cfg.thresholds)
        if (t < 0.0 || t > 1.0) throw InvalidArgument("config: thresholds must lie in [0, 1]");
    if (cfg.k < 0) throw InvalidArgument("config: k must be non-negative");
    if (cfg.prevalent_top_k <= 0) throw InvalidArgument("config: prevalent_top_k must be positive");
    if (cfg.from && cfg.to && *cfg.from > *cfg.to) throw InvalidArgument("config: from is after to");
    return cfg;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::string config_to_json(const PipelineConfig& cfg) {
    auto rel = [&](const fs::path& p) -> json {
        if (p.empty()) return nullptr;
        if (cfg.base_dir.empty()) return p.generic_string();
        const fs::path r = p.lexically_relative(cfg.base_dir);
        return r.empty() ? p.generic_string() : r.generic_string();
    };
    json j;
    j["tweets"] = rel(cfg.tweets);
    j["annotations"] = rel(cfg.annotations);
    j["follows"] = rel(cfg.follows);
    j["rules"] = rel(cfg.rules);
    j["stopwords"] = rel(cfg.stopwords);
    j["from"] = cfg.from ? json(format_date(*cfg.from)) : json(nullptr);
    j["to"] = cfg.to ? json(format_date(*cfg.to)) : json(nullptr);
    j["utc_offset_minutes"] = cfg.utc_offset_minutes ? json(*cfg.utc_offset_minutes) : json(nullptr);
    j["threshold"] = cfg.threshold;
    j["thresholds"] = cfg.thresholds;
    j["k"] = cfg.k;
    j["prevalent_top_k"] = cfg.prevalent_top_k;
    j["stats_top_k"] = cfg.stats_top_k;
    j["top_communities"] = cfg.top_communities;
    j["lean_left_positive"] = cfg.lean_left_positive;
    j["drop_isolated"] = cfg.drop_isolated;
    j["emit_both_isolated_modes"] = cfg.emit_both_isolated_modes;
    j["include_isolated_in_pi"] = cfg.include_isolated_in_pi;
    j["include_isolated_authors"] = cfg.include_isolated_authors;
    j["schema_strict"] = cfg.schema_strict;
    j["solver"] = cfg.solver == polarization::SolverMethod::DirectSolve ? "direct" : "fixed_point";
    return j.dump();
}

// ---------------------------------------------------------------- inputs

struct Inputs::Cache {
    std::optional<graphkit::InteractionGraph> full;
    std::optional<std::vector<graphkit::DailyGraph>> days;
    std::optional<stance::StanceMap> stances;
    std::optional<structure::ShieldRanking> shield;
    std::optional<std::vector<std::set<UserId>>> daily_influencers;
    std::optional<std::vector<DailyStats>> daily_stats;
    std::optional<DailyStats> total_stats;
    std::optional<StanceShares> shares;
    std::optional<std::vector<PiSeriesRow>> pi_rows;
    std::optional<std::vector<AblationResult>> ablation;
    std::optional<ThresholdSweepResult> sweep;
    std::optional<structure::CommunityPartition> partition;
    std::vector<structure::CommunityProfile> top_communities;
};

std::string Inputs::window_label() const { return format_date(window_begin) + "_" + format_date(window_end); }

Inputs load_inputs(const PipelineConfig& cfg) {
    Inputs in;
    in.cache = std::make_shared<Inputs::Cache>();
    in.rules = cfg.rules.empty() ? corpus::default_rule_set() : corpus::load_rule_set(cfg.rules);
    if (cfg.utc_offset_minutes) in.rules.utc_offset = std::chrono::minutes{*cfg.utc_offset_minutes};
    in.utc_offset = in.rules.utc_offset;

    in.window_begin = std::max(in.rules.window_begin, cfg.from.value_or(in.rules.window_begin));
    in.window_end = std::min(in.rules.window_end, cfg.to.value_or(in.rules.window_end));
    if (in.window_begin > in.window_end)
        throw InvalidArgument("analysis window " + format_date(in.window_begin) + ".." + format_date(in.window_end) +
                              " is empty");

    auto loaded = corpus::load_tweets(cfg.tweets, cfg.schema_strict);
    in.load_report = std::move(loaded.report);
    if (!in.load_report.warnings.empty()) {
        in.warnings.push_back(std::to_string(in.load_report.warnings.size()) + " malformed input line(s) skipped");
        const std::size_t shown = std::min<std::size_t>(5, in.load_report.warnings.size());
        for (std::size_t i = 0; i < shown; ++i)
            in.warnings.push_back("line " + std::to_string(in.load_report.warnings[i].line_number) + ": " +
                                  in.load_report.warnings[i].message);
    }

    auto filtered = corpus::filter_corpus(in.rules, loaded.tweets);
    in.filter_report = std::move(filtered.report);
    for (auto& t : filtered.kept) {
        const Date d = in.rules.date_of(t);
        if (d < in.window_begin || d > in.window_end) {
            ++in.filter_report.dropped;
            --in.filter_report.kept;
            ++in.filter_report.drop_reasons[corpus::DropReason::OutsideWindow];
            continue;
        }
        in.tweets.push_back(std::move(t));
    }
    if (in.tweets.empty()) in.warnings.push_back("no posts left after filtering; outputs are empty");

    if (!cfg.annotations.empty()) in.annotations = corpus::load_annotations(cfg.annotations);
    else in.warnings.push_back("no annotations given; every user is Neutral and category ablations are no-ops");
    if (!cfg.follows.empty()) in.follows = corpus::load_follows(cfg.follows, &in.annotations);
    return in;
}

// ---------------------------------------------------------------- shared work

namespace {

template <class F>
void write_file(const fs::path& dir, const std::string& name, std::vector<std::string>& files, F&& body) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    body(out);
    out.flush();
    if (!out) throw Error("write failed for " + (dir / name).string());
    files.push_back(name);
}

Inputs::Cache& cache_of(Inputs& in) {
    if (!in.cache) in.cache = std::make_shared<Inputs::Cache>();
    return *in.cache;
}

graphkit::BuildOptions build_options(const PipelineConfig& cfg) { return {cfg.include_isolated_authors}; }

const graphkit::InteractionGraph& full_graph(const PipelineConfig& cfg, Inputs& in) {
    auto& c = cache_of(in);
    if (!c.full)
        c.full = graphkit::build_graph(in.tweets, graphkit::TimeWindow::days(in.window_begin, in.window_end, in.utc_offset),
                                       build_options(cfg));
    return *c.full;
}

const std::vector<graphkit::DailyGraph>& day_graphs(const PipelineConfig& cfg, Inputs& in) {
    auto& c = cache_of(in);
    if (!c.days) c.days = graphkit::daily_graphs(in.tweets, in.utc_offset, build_options(cfg));
    return *c.days;
}

const stance::StanceMap& stances(const PipelineConfig& cfg, Inputs& in) {
    auto& c = cache_of(in);
    if (!c.stances) {
        std::set<UserId> users(full_graph(cfg, in).node_ids().begin(), full_graph(cfg, in).node_ids().end());
        for (const auto& t : in.tweets) users.insert(t.author_id);
        c.stances = stance::stance_map(in.follows, in.annotations, cfg.threshold,
                                       std::vector<UserId>(users.begin(), users.end()));
    }
    return *c.stances;
}

polarization::PiOptions pi_options(const PipelineConfig& cfg) {
    polarization::PiOptions o;
    o.solver.method = cfg.solver;
    o.include_isolated = cfg.include_isolated_in_pi;
    return o;
}

// Greedy NetShield with k capped at n. A power iteration that stalls still
// yields a usable ranking from its last iterate; the caller gets a warning.
structure::ShieldRanking shield(const graphkit::InteractionGraph& g, int k, std::string* warning) {
    const int kk = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), g.node_count()));
    if (kk == 0) return {};
    try {
        return structure::netshield(g, kk);
    } catch (const structure::EigenNonConvergence& e) {
        if (warning) *warning = e.what();
        auto r = structure::netshield_with(g, kk, e.last().lambda, e.last().vec);
        r.eigen_converged = false;
        return r;
    }
}

const structure::ShieldRanking& window_shield(const PipelineConfig& cfg, Inputs& in) {
    auto& c = cache_of(in);
    if (!c.shield) {
        std::string warning;
        c.shield = shield(full_graph(cfg, in), cfg.k, &warning);
        if (!warning.empty()) in.warnings.push_back("influencers: " + warning);
    }
    return *c.shield;
}

const std::vector<std::set<UserId>>& daily_influencers(const PipelineConfig& cfg, Inputs& in) {
    auto& c = cache_of(in);
    if (!c.daily_influencers) {
        const auto& days = day_graphs(cfg, in);
        std::vector<std::set<UserId>> sets(days.size());
        std::vector<std::string> warnings(days.size());
        parallel_for(days.size(), cfg.workers, [&](std::size_t i) {
            sets[i] = structure::selected_ids(days[i].graph, shield(days[i].graph, cfg.k, &warnings[i]));
        });
        for (std::size_t i = 0; i < days.size(); ++i)
            if (!warnings[i].empty())
                in.warnings.push_back("influencers " + format_date(days[i].date) + ": " + warnings[i]);
        c.daily_influencers = std::move(sets);
    }
    return *c.daily_influencers;
}

std::vector<bool> isolated_modes(const PipelineConfig& cfg) {
    if (cfg.emit_both_isolated_modes) return {true, false};
    return {cfg.drop_isolated};
}

StatsOptions stats_options(const PipelineConfig& cfg, const Inputs& in) {
    StatsOptions o;
    o.top_k = cfg.stats_top_k;
    o.utc_offset = in.utc_offset;
    if (!cfg.stopwords.empty()) o.stopwords = load_stopwords(cfg.stopwords);
    return o;
}

void ensure_stats(const PipelineConfig& cfg, Inputs& in) {
    auto& c = cache_of(in);
    if (c.daily_stats) return;
    const StatsOptions o = stats_options(cfg, in);
    c.daily_stats = compute_stats(in.tweets, o);
    c.total_stats = aggregate_stats(in.tweets, o);
}

}  // namespace

// ---------------------------------------------------------------- stages

namespace {

void write_filter_report(std::ostream& out, const Inputs& in) {
    out << "item,count\n";
    out << "input," << in.filter_report.input << '\n';
    out << "kept," << in.filter_report.kept << '\n';
    out << "dropped," << in.filter_report.dropped << '\n';
    for (auto reason : {corpus::DropReason::Language, corpus::DropReason::OutsideWindow, corpus::DropReason::NoRule}) {
        auto it = in.filter_report.drop_reasons.find(reason);
        out << "drop:" << corpus::to_string(reason) << ',' << (it == in.filter_report.drop_reasons.end() ? 0 : it->second)
            << '\n';
    }
    for (std::size_t i = 0; i < in.rules.rules.size(); ++i) {
        const std::size_t hits = i < in.filter_report.rule_hits.size() ? in.filter_report.rule_hits[i] : 0;
        std::string term = in.rules.rules[i].term;
        if (term.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char ch : term) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            term = quoted + "\"";
        }
        out << "rule:" << term << ',' << hits << '\n';
    }
}

std::vector<std::string> filter_stage(const PipelineConfig& cfg, Inputs& in, bool write_corpus) {
    std::vector<std::string> files;
    write_file(cfg.out_dir, "filter_report.csv", files, [&](std::ostream& out) { write_filter_report(out, in); });
    if (write_corpus) {
        corpus::write_tweets(cfg.out_dir / "filtered.jsonl", in.tweets);
        files.push_back("filtered.jsonl");
    }
    return files;
}

graphkit::NodeLabels node_labels(const PipelineConfig& cfg, Inputs& in) {
    graphkit::NodeLabels labels;
    const auto& g = full_graph(cfg, in);
    const auto& st = stances(cfg, in);
    for (const auto& id : g.node_ids()) {
        labels.stance[id] = std::string(stance::to_string(stance::stance_of(st, id)));
        if (auto cat = in.annotations.category_of(id)) labels.category[id] = std::string(corpus::to_string(*cat));
    }
    return labels;
}

std::vector<AblationResult> ablation_rows(const PipelineConfig& cfg, Inputs& in) {
    const auto& days = day_graphs(cfg, in);
    const auto& infl = daily_influencers(cfg, in);
    const auto& st = stances(cfg, in);
    const auto modes = isolated_modes(cfg);
    std::vector<AblationResult> rows(days.size() * modes.size());
    parallel_for(rows.size(), cfg.workers, [&](std::size_t idx) {
        const std::size_t mi = idx / days.size(), di = idx % days.size();
        AblationOptions o;
        o.drop_isolated = modes[mi];
        o.pi = pi_options(cfg);
        rows[idx] = ablation(days[di].graph, st, in.annotations, infl[di], o);
        rows[idx].label = format_date(days[di].date);
    });
    // Whole-window rows come last; they use the window's influencer set.
    const auto window_infl = structure::selected_ids(full_graph(cfg, in), window_shield(cfg, in));
    for (bool mode : modes) {
        AblationOptions o;
        o.drop_isolated = mode;
        o.pi = pi_options(cfg);
        rows.push_back(ablation(full_graph(cfg, in), st, in.annotations, window_infl, o));
        rows.back().label = in.window_label();
    }
    return rows;
}

}  // namespace

std::vector<std::string> run_filter(const PipelineConfig& cfg, Inputs& in) { return filter_stage(cfg, in, true); }

std::vector<std::string> run_graph(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    const auto& g = full_graph(cfg, in);
    const auto labels = node_labels(cfg, in);
    const std::string base = "graph_" + in.window_label();
    write_file(cfg.out_dir, base + ".graphml", files,
               [&](std::ostream& out) { graphkit::write_graphml(out, g, labels); });
    write_file(cfg.out_dir, base + ".edges", files, [&](std::ostream& out) { graphkit::write_edge_list(out, g); });
    return files;
}

std::vector<std::string> run_stance(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    const auto& st = stances(cfg, in);
    auto& c = cache_of(in);
    if (!c.shares) c.shares = stance_shares(in.tweets, st);
    write_file(cfg.out_dir, "stance.csv", files, [&](std::ostream& out) { stance::write_stance_csv(out, st); });
    write_file(cfg.out_dir, "stance_shares.csv", files,
               [&](std::ostream& out) { write_stance_shares_csv(out, *c.shares); });
    return files;
}

std::vector<std::string> run_stats(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    ensure_stats(cfg, in);
    auto& c = cache_of(in);
    write_file(cfg.out_dir, "stats_daily.csv", files,
               [&](std::ostream& out) { write_stats_csv(out, *c.daily_stats, &*c.total_stats); });
    write_file(cfg.out_dir, "stats_top.csv", files,
               [&](std::ostream& out) { write_top_lists_csv(out, *c.daily_stats, &*c.total_stats); });
    return files;
}

std::vector<std::string> run_polarize(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    auto& c = cache_of(in);
    if (!c.pi_rows) {
        c.pi_rows = pi_series(day_graphs(cfg, in), stances(cfg, in), pi_options(cfg), cfg.workers);
        for (const auto& r : *c.pi_rows)
            if (!r.result) in.warnings.push_back("pi " + format_date(r.date) + ": " + r.error);
    }
    write_file(cfg.out_dir, "pi_series.csv", files, [&](std::ostream& out) { write_pi_series_csv(out, *c.pi_rows); });
    return files;
}

std::vector<std::string> run_influencers(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    const auto& g = full_graph(cfg, in);
    const auto& r = window_shield(cfg, in);
    write_file(cfg.out_dir, "influencers.csv", files,
               [&](std::ostream& out) { structure::write_influencers_csv(out, g, r); });

    std::vector<UserId> ranking;
    for (auto i : r.selected) ranking.push_back(g.id(i));
    const auto prevalent = corpus::prevalent_users(in.tweets, ranking, cfg.prevalent_top_k);
    write_file(cfg.out_dir, "prevalent_users.csv", files, [&](std::ostream& out) {
        out << "user_id,lists\n";
        for (const auto& id : prevalent.users) {
            std::string lists;
            for (const auto& [which, ids] : prevalent.lists)
                if (std::find(ids.begin(), ids.end(), id) != ids.end())
                    lists += (lists.empty() ? "" : ";") + std::string(corpus::to_string(which));
            out << id << ',' << lists << '\n';
        }
    });
    return files;
}

std::vector<std::string> run_communities(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    auto& c = cache_of(in);
    const auto& g = full_graph(cfg, in);
    if (!c.partition) {
        if (g.empty()) {
            c.partition = structure::CommunityPartition{};
            in.warnings.push_back("communities: graph is empty");
        } else {
            c.partition = structure::louvain(g);
            structure::DecomposeOptions o;
            o.top_n = cfg.top_communities;
            o.left_positive = cfg.lean_left_positive;
            c.top_communities = structure::decompose_communities(*c.partition, g, stances(cfg, in), o);
        }
    }
    write_file(cfg.out_dir, "communities.csv", files,
               [&](std::ostream& out) { structure::write_communities_csv(out, c.top_communities); });
    return files;
}

std::vector<std::string> run_ablate(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    auto& c = cache_of(in);
    if (!c.ablation) c.ablation = ablation_rows(cfg, in);
    write_file(cfg.out_dir, "ablation.csv", files, [&](std::ostream& out) { write_ablation_csv(out, *c.ablation); });
    return files;
}

std::vector<std::string> run_sweep(const PipelineConfig& cfg, Inputs& in) {
    std::vector<std::string> files;
    auto& c = cache_of(in);
    if (!c.sweep) {
        const auto& g = full_graph(cfg, in);
        const auto infl = structure::selected_ids(g, window_shield(cfg, in));
        ThresholdSweepResult all;
        for (bool mode : isolated_modes(cfg)) {
            AblationOptions o;
            o.drop_isolated = mode;
            o.pi = pi_options(cfg);
            auto part = threshold_sweep(g, in.follows, in.annotations, infl, cfg.thresholds, o, cfg.workers);
            all.thresholds = part.thresholds;
            all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
        }
        c.sweep = std::move(all);
    }
    write_file(cfg.out_dir, "sweep.csv", files, [&](std::ostream& out) { write_sweep_csv(out, *c.sweep); });
    return files;
}

// ---------------------------------------------------------------- run-all

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

namespace {

std::string sha256_text(std::string_view text) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

template <class F>
std::vector<std::string> stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

RunSummary run_all(const PipelineConfig& cfg) {
    Inputs in;
    try {
        in = load_inputs(cfg);
    } catch (const std::exception& e) {
        throw StageError("load", e.what());
    }

    RunSummary summary;
    auto add = [&](std::vector<std::string> f) { summary.files.insert(summary.files.end(), f.begin(), f.end()); };
    add(stage("filter", [&] { return filter_stage(cfg, in, false); }));
    add(stage("graph", [&] { return run_graph(cfg, in); }));
    add(stage("stance", [&] { return run_stance(cfg, in); }));
    add(stage("stats", [&] { return run_stats(cfg, in); }));
    add(stage("polarize", [&] { return run_polarize(cfg, in); }));
    add(stage("influencers", [&] { return run_influencers(cfg, in); }));
    add(stage("ablate", [&] { return run_ablate(cfg, in); }));
    add(stage("sweep", [&] { return run_sweep(cfg, in); }));
    add(stage("communities", [&] { return run_communities(cfg, in); }));

    auto& c = cache_of(in);
    add(stage("summary", [&] {
        SummaryData d;
        d.window_label = format_date(in.window_begin) + " to " + format_date(in.window_end);
        d.filter = &in.filter_report;
        d.daily = &*c.daily_stats;
        d.total = &*c.total_stats;
        d.shares = &*c.shares;
        d.pi_rows = &*c.pi_rows;
        // Only the per-day rows of the configured removal mode go on the chart.
        std::vector<AblationResult> chart_rows;
        for (const auto& r : *c.ablation)
            if (r.drop_isolated == cfg.drop_isolated && r.label != in.window_label()) chart_rows.push_back(r);
        d.ablation = &chart_rows;
        d.sweep = &*c.sweep;
        d.communities = &c.top_communities;
        d.modularity = c.partition->modularity;
        d.community_count = static_cast<std::size_t>(c.partition->community_count);
        const auto& g = full_graph(cfg, in);
        const auto& r = window_shield(cfg, in);
        for (std::size_t i = 0; i < r.selected.size() && i < 20; ++i) {
            const UserId& id = g.id(r.selected[i]);
            const auto cat = in.annotations.category_of(id);
            d.influencers.push_back({id, r.shield_scores[i], cat ? std::string(corpus::to_string(*cat)) : "Unannotated"});
        }
        d.warnings = in.warnings;
        std::vector<std::string> files;
        write_file(cfg.out_dir, "summary.html", files, [&](std::ostream& out) { write_summary_html(out, d); });
        return files;
    }));

    summary.warnings = in.warnings;
    stage("manifest", [&] {
        json m;
        m["tool"] = "polarmon";
        m["version"] = POLARMON_VERSION;
        m["config"] = json::parse(config_to_json(cfg));
        json inputs = json::object();
        auto digest = [&](const char* key, const fs::path& p) {
            if (p.empty()) return;
            inputs[key] = {{"file", p.filename().generic_string()}, {"sha256", sha256_file(p)}};
        };
        digest("tweets", cfg.tweets);
        digest("annotations", cfg.annotations);
        digest("follows", cfg.follows);
        digest("stopwords", cfg.stopwords);
        if (cfg.rules.empty())
            inputs["rules"] = {{"file", "(built-in)"}, {"sha256", sha256_text(corpus::default_rule_set_json())}};
        else
            digest("rules", cfg.rules);
        m["inputs"] = inputs;
        m["window"] = {{"from", format_date(in.window_begin)}, {"to", format_date(in.window_end)},
                       {"utc_offset_minutes", in.utc_offset.count()}};
        const auto& g = full_graph(cfg, in);
        m["counts"] = {{"input_lines", in.load_report.lines},
                       {"records", in.load_report.records},
                       {"kept_posts", in.tweets.size()},
                       {"days", day_graphs(cfg, in).size()},
                       {"graph_nodes", g.node_count()},
                       {"graph_edges", g.edge_count()},
                       {"annotated_accounts", in.annotations.size()},
                       {"follow_records", in.follows.size()},
                       {"influencers", window_shield(cfg, in).selected.size()},
                       {"communities", c.partition->community_count},
                       {"modularity", c.partition->modularity}};
        m["warnings"] = in.warnings;
        json files = json::array();
        for (const auto& f : summary.files)
            files.push_back({{"name", f}, {"sha256", sha256_file(cfg.out_dir / f)}});
        m["files"] = files;
        std::vector<std::string> written;
        write_file(cfg.out_dir, "run_manifest.json", written, [&](std::ostream& out) { out << m.dump(2) << '\n'; });
        summary.files.insert(summary.files.end(), written.begin(), written.end());
        return written;
    });
    return summary;
}

}  // namespace polarmon::pipeline
