#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geovote/corpus.hpp"
#include "geovote/gazetteer.hpp"
#include "geovote/metrics.hpp"
#include "geovote/predictions.hpp"
#include "geovote/voting.hpp"

namespace geovote {

/// One evaluation dataset together with every approach's predictions on it.
struct Dataset {
    Corpus corpus;
    std::vector<PredictionSet> predictions;
};

/// Votes each dataset with `config`, using only prediction sets of
/// configured approaches, and returns per-dataset reports.
std::vector<MetricsReport> evaluate_ensemble(const std::string& system, const EnsembleConfig& config,
                                             std::span<const Dataset> datasets, const Gazetteer* gaz = nullptr,
                                             const EvalOptions& options = {});

/// Each delta is the basic ensemble's macro metric minus the degraded
/// ensemble's, where the degraded ensemble lacks `approach_id`.
struct AblationResult {
    std::string approach_id;
    double delta_accuracy = 0.0;
    double delta_auc = 0.0;
    double delta_me = 0.0;
};

/// One result per configured approach, in config order. Throws
/// std::invalid_argument when the config has fewer than two approaches.
std::vector<AblationResult> ablate(const EnsembleConfig& basic, std::span<const Dataset> datasets,
                                   const EvalOptions& options = {});

enum class SweepParameter { eps_km, min_pts };

const char* to_string(SweepParameter p) noexcept;
SweepParameter parse_sweep_parameter(std::string_view s);

struct SweepPoint {
    double value = 0.0;
    double accuracy = 0.0;
    double auc = 0.0;
    double mean_error_km = 0.0;
};

struct SweepCurve {
    SweepParameter parameter = SweepParameter::eps_km;
    std::vector<SweepPoint> points;
};

/// from, from + step, ... while <= to. Throws on step <= 0 or to < from.
std::vector<double> sweep_values(double from, double to, double step);

/// Default ranges: eps 1..800 step 30, min_pts 1..11 step 1.
std::vector<double> default_sweep_values(SweepParameter p);

/// Macro metrics of `config` with one parameter replaced by each value.
/// Values must be non-empty and strictly increasing; eps values must be
/// positive and min_pts values integral and >= 1.
SweepCurve sweep(const EnsembleConfig& config, SweepParameter parameter, std::span<const double> values,
                 std::span<const Dataset> datasets, const EvalOptions& options = {});

void write_ablation_csv(std::ostream& out, std::span<const AblationResult> results);
void write_ablation_json(std::ostream& out, std::span<const AblationResult> results);

/// Long format: parameter,value,metric,score.
void write_sweep_csv(std::ostream& out, const SweepCurve& curve);
void write_sweep_json(std::ostream& out, const SweepCurve& curve);

}  // namespace geovote
