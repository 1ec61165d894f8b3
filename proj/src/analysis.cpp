#include "geovote/analysis.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "text.hpp"

namespace geovote {

std::vector<MetricsReport> evaluate_ensemble(const std::string& system, const EnsembleConfig& config,
                                             std::span<const Dataset> datasets, const Gazetteer* gaz,
                                             const EvalOptions& options) {
    std::vector<MetricsReport> reports;
    reports.reserve(datasets.size());
    for (const auto& ds : datasets) {
        std::vector<PredictionSet> used;
        for (const auto& set : ds.predictions) {
            if (config.contains(set.approach_id)) used.push_back(set);
        }
        const auto resolutions = resolve_corpus(ds.corpus, used, config);
        reports.push_back(evaluate(system, resolutions, ds.corpus, gaz, options));
    }
    return reports;
}

namespace {

MetricsReport macro_for(const EnsembleConfig& config, std::span<const Dataset> datasets, const EvalOptions& options) {
    if (datasets.empty()) throw std::invalid_argument("analysis needs at least one dataset");
    const auto reports = evaluate_ensemble("voting", config, datasets, nullptr, options);
    return macro_average(reports);
}

}  // namespace

std::vector<AblationResult> ablate(const EnsembleConfig& basic, std::span<const Dataset> datasets,
                                   const EvalOptions& options) {
    if (basic.approaches.size() < 2) throw std::invalid_argument("ablation needs at least two approaches");
    basic.validate();
    const auto base = macro_for(basic, datasets, options);

    std::vector<AblationResult> results;
    for (std::size_t i = 0; i < basic.approaches.size(); ++i) {
        EnsembleConfig degraded = basic;
        degraded.approaches.erase(degraded.approaches.begin() + static_cast<std::ptrdiff_t>(i));
        const auto r = macro_for(degraded, datasets, options);
        results.push_back({basic.approaches[i].id, base.accuracy_at_161 - r.accuracy_at_161, base.auc - r.auc,
                           base.mean_error_km - r.mean_error_km});
    }
    return results;
}

const char* to_string(SweepParameter p) noexcept { return p == SweepParameter::eps_km ? "eps_km" : "min_pts"; }

SweepParameter parse_sweep_parameter(std::string_view s) {
    if (s == "eps_km" || s == "eps") return SweepParameter::eps_km;
    if (s == "min_pts" || s == "minpts") return SweepParameter::min_pts;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(s) + "'");
}

std::vector<double> sweep_values(double from, double to, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
    if (to < from) throw std::invalid_argument("sweep range is empty");
    std::vector<double> values;
    // Integer stepping avoids accumulating rounding error.
    for (long k = 0;; ++k) {
        const double v = from + static_cast<double>(k) * step;
        if (v > to + 1e-9 * std::abs(step)) break;
        values.push_back(v);
    }
    return values;
}

std::vector<double> default_sweep_values(SweepParameter p) {
    return p == SweepParameter::eps_km ? sweep_values(1, 800, 30) : sweep_values(1, 11, 1);
}

SweepCurve sweep(const EnsembleConfig& config, SweepParameter parameter, std::span<const double> values,
                 std::span<const Dataset> datasets, const EvalOptions& options) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (i > 0 && !(v > values[i - 1])) throw std::invalid_argument("sweep values must be strictly increasing");
        if (parameter == SweepParameter::eps_km && !(v > 0.0)) throw std::invalid_argument("eps_km must be positive");
        if (parameter == SweepParameter::min_pts && (v < 1.0 || v != std::floor(v))) {
            throw std::invalid_argument("min_pts values must be integers >= 1");
        }
    }

    SweepCurve curve{parameter, {}};
    for (double v : values) {
        EnsembleConfig c = config;
        if (parameter == SweepParameter::eps_km) {
            c.params.eps_km = v;
        } else {
            c.params.min_pts = static_cast<int>(v);
        }
        const auto r = macro_for(c, datasets, options);
        curve.points.push_back({v, r.accuracy_at_161, r.auc, r.mean_error_km});
    }
    return curve;
}

void write_ablation_csv(std::ostream& out, std::span<const AblationResult> results) {
    using detail::fixed6;
    out << "approach,delta_accuracy,delta_auc,delta_me\n";
    for (const auto& r : results) {
        out << r.approach_id << ',' << fixed6(r.delta_accuracy) << ',' << fixed6(r.delta_auc) << ','
            << fixed6(r.delta_me) << '\n';
    }
}

void write_ablation_json(std::ostream& out, std::span<const AblationResult> results) {
    using detail::fixed6;
    out << "{\n  \"ablation\": [";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out << (i ? "," : "") << "\n    {\"approach\": " << nlohmann::json(r.approach_id).dump()
            << ", \"delta_accuracy\": " << fixed6(r.delta_accuracy) << ", \"delta_auc\": " << fixed6(r.delta_auc)
            << ", \"delta_me\": " << fixed6(r.delta_me) << "}";
    }
    out << (results.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_sweep_csv(std::ostream& out, const SweepCurve& curve) {
    using detail::fixed6;
    out << "parameter,value,metric,score\n";
    const char* name = to_string(curve.parameter);
    for (const auto& p : curve.points) {
        out << name << ',' << fixed6(p.value) << ",accuracy_at_161," << fixed6(p.accuracy) << '\n';
        out << name << ',' << fixed6(p.value) << ",auc," << fixed6(p.auc) << '\n';
        out << name << ',' << fixed6(p.value) << ",mean_error_km," << fixed6(p.mean_error_km) << '\n';
    }
}

void write_sweep_json(std::ostream& out, const SweepCurve& curve) {
    using detail::fixed6;
    out << "{\n  \"parameter\": \"" << to_string(curve.parameter) << "\",\n  \"points\": [";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        out << (i ? "," : "") << "\n    {\"value\": " << fixed6(p.value) << ", \"accuracy_at_161\": "
            << fixed6(p.accuracy) << ", \"auc\": " << fixed6(p.auc) << ", \"mean_error_km\": "
            << fixed6(p.mean_error_km) << "}";
    }
    out << (curve.points.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace geovote
