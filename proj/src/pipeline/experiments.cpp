#include "polarmon/pipeline/experiments.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace polarmon::pipeline {

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<PiSeriesRow> pi_series(const std::vector<graphkit::DailyGraph>& days, const stance::StanceMap& stances,
                                   const polarization::PiOptions& options, unsigned workers) {
    std::vector<PiSeriesRow> rows(days.size());
    parallel_for(days.size(), workers, [&](std::size_t i) {
        PiSeriesRow& row = rows[i];
        row.date = days[i].date;
        row.nodes = days[i].graph.node_count();
        row.edges = days[i].graph.edge_count();
        try {
            row.result = polarization::compute_pi(days[i].graph, stances, options);
            row.nodes = row.result->nodes;
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

void write_pi_series_csv(std::ostream& out, const std::vector<PiSeriesRow>& rows) {
    out << "date,n,m,pi,method,iterations,residual\n";
    for (const auto& r : rows) {
        out << format_date(r.date) << ',' << r.nodes << ',' << r.edges << ',';
        if (r.result)
            out << format_double(r.result->pi) << ',' << polarization::to_string(r.result->solver.method) << ','
                << r.result->solver.iterations << ',' << format_double(r.result->solver.residual) << '\n';
        else
            out << ",failed,,\n";
    }
}

std::string_view to_string(RemovedGroup g) {
    switch (g) {
        case RemovedGroup::Political: return "Political";
        case RemovedGroup::MediaJournalist: return "MediaJournalist";
        case RemovedGroup::Influencers: return "Influencers";
    }
    return "Political";
}

std::array<std::set<UserId>, 3> removal_groups(const corpus::Annotations& annotations,
                                               const std::set<UserId>& influencers) {
    std::array<std::set<UserId>, 3> groups;
    for (const auto& id : annotations.users_in(corpus::AccountCategory::Political)) groups[0].insert(id);
    for (const auto& id : annotations.users_in(corpus::AccountCategory::MediaJournalist)) groups[1].insert(id);
    groups[2] = influencers;
    return groups;
}

AblationResult ablation(const graphkit::InteractionGraph& g, const stance::StanceMap& stances,
                        const corpus::Annotations& annotations, const std::set<UserId>& influencers,
                        const AblationOptions& options) {
    AblationResult r;
    r.drop_isolated = options.drop_isolated;
    try {
        r.pi_full = polarization::compute_pi(g, stances, options.pi).pi;
    } catch (const Error& e) {
        r.full_error = e.what();
    }
    const auto groups = removal_groups(annotations, influencers);
    for (std::size_t k = 0; k < groups.size(); ++k) {
        try {
            const graphkit::InteractionGraph reduced = graphkit::remove_nodes(g, groups[k], options.drop_isolated);
            r.pi_without[k].pi = polarization::compute_pi(reduced, stances, options.pi).pi;
        } catch (const Error& e) {
            r.pi_without[k].error = e.what();
        }
    }
    return r;
}

namespace {
std::string opt_value(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

void ablation_values(std::ostream& out, const AblationResult& r) {
    out << (r.drop_isolated ? "true" : "false") << ',' << opt_value(r.pi_full);
    for (const auto& g : r.pi_without) out << ',' << opt_value(g.pi);
}
}  // namespace

void write_ablation_csv(std::ostream& out, const std::vector<AblationResult>& rows) {
    out << "label,drop_isolated,pi_full,pi_without_political,pi_without_media,pi_without_influencers\n";
    for (const auto& r : rows) {
        out << r.label << ',';
        ablation_values(out, r);
        out << '\n';
    }
}

ThresholdSweepResult threshold_sweep(const graphkit::InteractionGraph& g,
                                     const std::vector<corpus::FollowRecord>& follows,
                                     const corpus::Annotations& annotations, const std::set<UserId>& influencers,
                                     const std::vector<double>& thresholds, const AblationOptions& options,
                                     unsigned workers) {
    ThresholdSweepResult out;
    out.thresholds = thresholds;
    out.rows.resize(thresholds.size());
    parallel_for(thresholds.size(), workers, [&](std::size_t i) {
        const double th = thresholds[i];
        const stance::StanceMap stances = stance::stance_map(follows, annotations, th, g.node_ids());
        SweepRow& row = out.rows[i];
        row.threshold = th;
        row.pis = ablation(g, stances, annotations, influencers, options);
        row.pis.label = format_double(th);
        for (const auto& id : g.node_ids()) {
            const stance::Stance s = stance::stance_of(stances, id);
            if (s == stance::Stance::Left) ++row.n_left_users;
            if (s == stance::Stance::Right) ++row.n_right_users;
        }
    });
    return out;
}

void write_sweep_csv(std::ostream& out, const ThresholdSweepResult& sweep) {
    out << "threshold,drop_isolated,pi_full,pi_without_political,pi_without_media,pi_without_influencers,"
           "n_left_users,n_right_users\n";
    for (const auto& r : sweep.rows) {
        out << format_double(r.threshold) << ',';
        ablation_values(out, r.pis);
        out << ',' << r.n_left_users << ',' << r.n_right_users << '\n';
    }
}

}  // namespace polarmon::pipeline
