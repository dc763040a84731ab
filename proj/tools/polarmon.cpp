// polarmon: command line front end for the monitoring pipeline.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>

#include "polarmon/pipeline/run.hpp"
#include "polarmon/simd/kernels.hpp"

namespace pm = polarmon;
namespace pp = polarmon::pipeline;

namespace {

struct Overrides {
    std::string config;
    std::string from, to, out;
    std::optional<double> threshold;
    std::optional<bool> drop_isolated;
    std::optional<int> k;
    std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--from", o.from, "First day of the analysis window (YYYY-MM-DD)");
    cmd->add_option("--to", o.to, "Last day of the analysis window (YYYY-MM-DD)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--threshold", o.threshold, "Stance threshold in [0, 1]")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--drop-isolated", o.drop_isolated, "Drop nodes stranded by ablation removals (true/false)");
    cmd->add_option("--k", o.k, "Influencers selected per graph")->check(CLI::NonNegativeNumber);
    cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
}

pp::PipelineConfig make_config(const Overrides& o) {
    pp::PipelineConfig cfg = pp::load_config(o.config);
    if (!o.from.empty()) cfg.from = pm::parse_date(o.from);
    if (!o.to.empty()) cfg.to = pm::parse_date(o.to);
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.threshold) cfg.threshold = *o.threshold;
    if (o.drop_isolated) cfg.drop_isolated = *o.drop_isolated;
    if (o.k) cfg.k = *o.k;
    if (o.workers) cfg.workers = *o.workers;
    if (cfg.from && cfg.to && *cfg.from > *cfg.to) throw pm::InvalidArgument("--from is after --to");
    return cfg;
}

using StageFn = std::vector<std::string> (*)(const pp::PipelineConfig&, pp::Inputs&);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarization monitoring for social media discussions"};
    app.set_version_flag("--version", POLARMON_VERSION);
    bool list_isa = false;
    app.add_flag("--list-kernels", list_isa, "Print the SIMD kernel variants available on this machine");

    const std::vector<std::pair<std::string, std::pair<std::string, StageFn>>> stages{
        {"filter", {"Apply the collection rules and write the filtered corpus", &pp::run_filter}},
        {"graph", {"Build the interaction graph for the window (GraphML and edge list)", &pp::run_graph}},
        {"stance", {"Infer user stances and stance shares", &pp::run_stance}},
        {"stats", {"Daily and aggregate corpus statistics", &pp::run_stats}},
        {"polarize", {"Daily polarization index series", &pp::run_polarize}},
        {"influencers", {"NetShield influencer ranking and prevalent users", &pp::run_influencers}},
        {"communities", {"Louvain communities and their political make-up", &pp::run_communities}},
        {"ablate", {"Polarization after removing user groups", &pp::run_ablate}},
        {"sweep", {"Polarization across stance thresholds", &pp::run_sweep}},
    };

    Overrides o;
    std::map<CLI::App*, StageFn> handlers;
    for (const auto& [name, spec] : stages) {
        auto* cmd = app.add_subcommand(name, spec.first);
        add_common(cmd, o);
        handlers[cmd] = spec.second;
    }
    auto* run_all = app.add_subcommand("run-all", "Full pipeline: every output file, HTML summary and manifest");
    add_common(run_all, o);
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (list_isa) {
        std::cout << "active: " << pm::simd::to_string(pm::simd::kernels().isa) << '\n';
        for (const auto* t : pm::simd::available_kernels()) std::cout << pm::simd::to_string(t->isa) << '\n';
        if (app.get_subcommands().empty()) return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }

    try {
        const pp::PipelineConfig cfg = make_config(o);
        std::vector<std::string> files, warnings;
        if (run_all->parsed()) {
            auto summary = pp::run_all(cfg);
            files = std::move(summary.files);
            warnings = std::move(summary.warnings);
        } else {
            pp::Inputs in;
            try {
                in = pp::load_inputs(cfg);
            } catch (const std::exception& e) {
                throw pp::StageError("load", e.what());
            }
            for (auto& [cmd, fn] : handlers) {
                if (!cmd->parsed()) continue;
                try {
                    files = fn(cfg, in);
                } catch (const pp::StageError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw pp::StageError(cmd->get_name(), e.what());
                }
            }
            warnings = in.warnings;
        }
        for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& f : files) std::cout << (cfg.out_dir / f).string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
