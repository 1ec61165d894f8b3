#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "geovote/corpus.hpp"
#include "geovote/gazetteer.hpp"
#include "geovote/geodesy.hpp"
#include "geovote/voting.hpp"

namespace geovote {

/// Per-mention error distances, each in [0, kMaxErrorKm].
class ErrorVector {
public:
    ErrorVector() = default;
    /// Throws std::invalid_argument for values outside [0, kMaxErrorKm].
    explicit ErrorVector(std::vector<double> errors_km);

    std::span<const double> values() const noexcept { return errors_; }
    std::size_t size() const noexcept { return errors_.size(); }
    bool empty() const noexcept { return errors_.empty(); }

private:
    std::vector<double> errors_;
};

/// Great-circle error for resolved outcomes; kMaxErrorKm for invalid ones.
DistanceKm error_distance(const Resolution& res, const GeoPoint& gold) noexcept;

inline constexpr double kDefaultThresholdKm = 161.0;

/// Fraction of errors strictly below `threshold_km`. Throws on empty input.
double accuracy_at(const ErrorVector& ev, double threshold_km = kDefaultThresholdKm);

/// Arithmetic mean in km. Throws on empty input.
double mean_error(const ErrorVector& ev);

enum class AucMode {
    mean,       // (1/N) * sum ln(x+1) / ln(20039)
    trapezoid,  // trapezoid area under the ascending normalized-log curve, x axis in [0, 1]
};

const char* to_string(AucMode m) noexcept;
/// Throws std::invalid_argument for anything but "mean" or "trapezoid".
AucMode parse_auc_mode(std::string_view s);

/// Area under the normalized log error curve; lower is better. Throws on
/// empty input.
double auc_norm_log(const ErrorVector& ev, AucMode mode = AucMode::mean);

struct EvalOptions {
    double threshold_km = kDefaultThresholdKm;
    AucMode auc_mode = AucMode::mean;
};

struct CategoryStats {
    std::size_t n = 0;
    double accuracy_at_161 = 0.0;
};

struct MetricsReport {
    std::string system;
    std::string dataset;
    std::size_t n = 0;
    double accuracy_at_161 = 0.0;  // at EvalOptions::threshold_km
    double mean_error_km = 0.0;
    double auc = 0.0;
    std::map<PlaceCategory, CategoryStats> per_category;  // categories with n > 0
};

/// Scores every corpus mention; mentions without a resolution count as
/// invalid. Categories come from categorize_mention (gaz may be null).
/// Throws std::invalid_argument on an empty corpus.
MetricsReport evaluate(const std::string& system, const std::map<std::string, Resolution>& resolutions,
                       const Corpus& corpus, const Gazetteer* gaz, const EvalOptions& options = {});

/// Unweighted mean of each metric across datasets. Per-category accuracy
/// is averaged over the reports that contain the category; n values are
/// summed. Throws on empty input or mixed systems.
MetricsReport macro_average(std::span<const MetricsReport> reports);

inline constexpr const char* kMacroDataset = "macro";

/// CSV with a "# auc_mode=..., threshold_km=..." header line, then
/// system,dataset,metric,value rows in report order. Floats use 6 decimals.
void write_reports_csv(std::ostream& out, std::span<const MetricsReport> reports, const EvalOptions& options);
void write_reports_json(std::ostream& out, std::span<const MetricsReport> reports, const EvalOptions& options);

}  // namespace geovote
