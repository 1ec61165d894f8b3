#include "geovote/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "text.hpp"

namespace geovote {

ErrorVector::ErrorVector(std::vector<double> errors_km) : errors_(std::move(errors_km)) {
    for (double e : errors_) {
        if (!(e >= 0.0 && e <= kMaxErrorKm)) {
            throw std::invalid_argument("error distance outside [0, 20039]: " + std::to_string(e));
        }
    }
}

DistanceKm error_distance(const Resolution& res, const GeoPoint& gold) noexcept {
    if (!res.point) return DistanceKm(kMaxErrorKm);
    return haversine_km(*res.point, gold);
}

namespace {

void require_nonempty(const ErrorVector& ev, const char* what) {
    if (ev.empty()) throw std::invalid_argument(std::string(what) + " of an empty error vector");
}

double normalized_log(double x) { return std::log1p(x) / std::log(kMaxErrorKm); }

}  // namespace

double accuracy_at(const ErrorVector& ev, double threshold_km) {
    require_nonempty(ev, "accuracy");
    const auto vals = ev.values();
    const auto hits = std::count_if(vals.begin(), vals.end(), [&](double e) { return e < threshold_km; });
    return static_cast<double>(hits) / static_cast<double>(vals.size());
}

double mean_error(const ErrorVector& ev) {
    require_nonempty(ev, "mean error");
    const auto vals = ev.values();
    return std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
}

const char* to_string(AucMode m) noexcept { return m == AucMode::mean ? "mean" : "trapezoid"; }

AucMode parse_auc_mode(std::string_view s) {
    if (s == "mean") return AucMode::mean;
    if (s == "trapezoid") return AucMode::trapezoid;
    throw std::invalid_argument("unknown AUC mode '" + std::string(s) + "'");
}

double auc_norm_log(const ErrorVector& ev, AucMode mode) {
    require_nonempty(ev, "AUC");
    std::vector<double> y;
    y.reserve(ev.size());
    for (double e : ev.values()) y.push_back(normalized_log(e));

    // Summing in ascending order makes both modes independent of input order.
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(y.size());
    if (mode == AucMode::mean || y.size() == 1) return std::accumulate(y.begin(), y.end(), 0.0) / n;

    double area = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) area += 0.5 * (y[i] + y[i + 1]);
    return area / (n - 1.0);
}

MetricsReport evaluate(const std::string& system, const std::map<std::string, Resolution>& resolutions,
                       const Corpus& corpus, const Gazetteer* gaz, const EvalOptions& options) {
    if (corpus.mentions.empty()) throw std::invalid_argument("cannot evaluate an empty corpus");

    std::vector<double> errors;
    errors.reserve(corpus.mentions.size());
    std::map<PlaceCategory, std::pair<std::size_t, std::size_t>> by_cat;  // (n, hits)
    for (const auto& m : corpus.mentions) {
        auto it = resolutions.find(m.mention_id);
        const double err = error_distance(it == resolutions.end() ? Resolution::invalid() : it->second, m.gold).value();
        errors.push_back(err);
        auto& [n, hits] = by_cat[categorize_mention(m, gaz)];
        ++n;
        hits += err < options.threshold_km;
    }

    const ErrorVector ev(std::move(errors));
    MetricsReport r;
    r.system = system;
    r.dataset = corpus.name;
    r.n = ev.size();
    r.accuracy_at_161 = accuracy_at(ev, options.threshold_km);
    r.mean_error_km = mean_error(ev);
    r.auc = auc_norm_log(ev, options.auc_mode);
    for (const auto& [cat, counts] : by_cat) {
        r.per_category[cat] = {counts.first, static_cast<double>(counts.second) / static_cast<double>(counts.first)};
    }
    return r;
}

MetricsReport macro_average(std::span<const MetricsReport> reports) {
    if (reports.empty()) throw std::invalid_argument("macro average of no reports");
    MetricsReport out;
    out.system = reports.front().system;
    out.dataset = reports.size() == 1 ? reports.front().dataset : kMacroDataset;

    std::map<PlaceCategory, std::pair<double, std::size_t>> cat_acc;  // (sum, reports)
    for (const auto& r : reports) {
        if (r.system != out.system) throw std::invalid_argument("macro average over mixed systems: " + out.system + ", " + r.system);
        out.n += r.n;
        out.accuracy_at_161 += r.accuracy_at_161;
        out.mean_error_km += r.mean_error_km;
        out.auc += r.auc;
        for (const auto& [cat, stats] : r.per_category) {
            out.per_category[cat].n += stats.n;
            cat_acc[cat].first += stats.accuracy_at_161;
            ++cat_acc[cat].second;
        }
    }
    const double k = static_cast<double>(reports.size());
    out.accuracy_at_161 /= k;
    out.mean_error_km /= k;
    out.auc /= k;
    for (const auto& [cat, acc] : cat_acc) out.per_category[cat].accuracy_at_161 = acc.first / static_cast<double>(acc.second);
    return out;
}

void write_reports_csv(std::ostream& out, std::span<const MetricsReport> reports, const EvalOptions& options) {
    using detail::fixed6;
    out << "# auc_mode=" << to_string(options.auc_mode) << ", threshold_km=" << fixed6(options.threshold_km) << '\n';
    out << "system,dataset,metric,value\n";
    for (const auto& r : reports) {
        const auto prefix = r.system + "," + r.dataset + ",";
        out << prefix << "n," << r.n << '\n';
        out << prefix << "accuracy_at_161," << fixed6(r.accuracy_at_161) << '\n';
        out << prefix << "mean_error_km," << fixed6(r.mean_error_km) << '\n';
        out << prefix << "auc," << fixed6(r.auc) << '\n';
        for (const auto& [cat, stats] : r.per_category) {
            out << prefix << "n[" << to_string(cat) << "]," << stats.n << '\n';
            out << prefix << "accuracy_at_161[" << to_string(cat) << "]," << fixed6(stats.accuracy_at_161) << '\n';
        }
    }
}

void write_reports_json(std::ostream& out, std::span<const MetricsReport> reports, const EvalOptions& options) {
    using detail::fixed6;
    auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
    out << "{\n  \"auc_mode\": " << str(to_string(options.auc_mode)) << ",\n  \"threshold_km\": "
        << fixed6(options.threshold_km) << ",\n  \"reports\": [";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        out << (i ? "," : "") << "\n    {\"system\": " << str(r.system) << ", \"dataset\": " << str(r.dataset)
            << ", \"n\": " << r.n << ", \"accuracy_at_161\": " << fixed6(r.accuracy_at_161)
            << ", \"mean_error_km\": " << fixed6(r.mean_error_km) << ", \"auc\": " << fixed6(r.auc)
            << ", \"per_category\": {";
        bool first = true;
        for (const auto& [cat, stats] : r.per_category) {
            out << (first ? "" : ", ") << str(to_string(cat)) << ": {\"n\": " << stats.n
                << ", \"accuracy_at_161\": " << fixed6(stats.accuracy_at_161) << "}";
            first = false;
        }
        out << "}}";
    }
    out << (reports.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace geovote
