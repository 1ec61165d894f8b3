// geovote: voting-ensemble toponym resolution and evaluation.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geovote/harness.hpp"

namespace {

struct CliState {
    std::vector<std::string> corpora;
    std::vector<std::string> profiles;
    std::vector<std::string> predictions;
    std::string gazetteer;
    std::string config;
    std::string out = ".";
    std::string auc_mode = "mean";
    double threshold_km = geovote::kDefaultThresholdKm;
    std::optional<std::uint64_t> seed;
    std::optional<double> eps_km;
    std::optional<int> min_pts;
    bool keep_misaligned = false;
    bool per_category = false;
    bool population_baseline = false;

    std::string parameter = "eps_km";
    std::optional<double> from, to, step;
};

void add_common(CLI::App* cmd, CliState& s) {
    cmd->add_option("--corpus", s.corpora, "Corpus file (.jsonl mentions or annotated XML); repeatable")->required();
    cmd->add_option("--profile", s.profiles,
                    "XML profile name or path, one per corpus or a single one for all; repeatable");
    cmd->add_option("--predictions", s.predictions, "Prediction file (<approach>__<dataset>.jsonl); repeatable");
    cmd->add_option("--gazetteer", s.gazetteer, "GeoNames TSV export");
    cmd->add_option("--config", s.config, "Ensemble config JSON");
    cmd->add_option("--out", s.out, "Output directory")->capture_default_str();
    cmd->add_option("--auc-mode", s.auc_mode, "AUC mode")->check(CLI::IsMember({"mean", "trapezoid"}))->capture_default_str();
    cmd->add_option("--threshold-km", s.threshold_km, "Accuracy threshold in km")->capture_default_str();
    cmd->add_option("--seed", s.seed, "Tie-break seed (default 0)");
    cmd->add_option("--eps-km", s.eps_km, "Override DBSCAN eps (km)");
    cmd->add_option("--min-pts", s.min_pts, "Override DBSCAN minPts");
    cmd->add_flag("--keep-misaligned", s.keep_misaligned, "Do not exclude the misaligned toponym list");
}

geovote::RunManifest to_manifest(const CliState& s) {
    geovote::RunManifest m;
    if (!s.profiles.empty() && s.profiles.size() != 1 && s.profiles.size() != s.corpora.size()) {
        throw std::runtime_error("give one --profile, or one per --corpus");
    }
    for (std::size_t i = 0; i < s.corpora.size(); ++i) {
        std::string profile;
        if (!s.profiles.empty()) profile = s.profiles.size() == 1 ? s.profiles.front() : s.profiles[i];
        m.corpora.push_back({s.corpora[i], profile});
    }
    for (const auto& p : s.predictions) m.predictions.emplace_back(p);
    if (!s.gazetteer.empty()) m.gazetteer = s.gazetteer;
    if (!s.config.empty()) m.config = s.config;
    m.out_dir = s.out;
    m.eval.auc_mode = geovote::parse_auc_mode(s.auc_mode);
    m.eval.threshold_km = s.threshold_km;
    m.seed = s.seed;
    m.eps_km = s.eps_km;
    m.min_pts = s.min_pts;
    m.keep_misaligned = s.keep_misaligned;
    m.per_category = s.per_category;
    m.population_baseline = s.population_baseline;
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voting-ensemble toponym resolution and evaluation"};
    app.require_subcommand(1);
    CliState s;

    auto* resolve = app.add_subcommand("resolve", "Vote every mention and write resolutions");
    add_common(resolve, s);

    auto* evaluate = app.add_subcommand("evaluate", "Score the ensemble and each approach");
    add_common(evaluate, s);
    evaluate->add_flag("--per-category", s.per_category, "Add per place-category accuracy");
    evaluate->add_flag("--population-baseline", s.population_baseline,
                       "Also score the largest-population GeoNames baseline (needs --gazetteer)");

    auto* ablate = app.add_subcommand("ablate", "Leave-one-out ablation of the ensemble");
    add_common(ablate, s);

    auto* sweep = app.add_subcommand("sweep", "Sweep eps_km or min_pts");
    add_common(sweep, s);
    sweep->add_option("--parameter", s.parameter, "eps_km or min_pts")
        ->check(CLI::IsMember({"eps_km", "eps", "min_pts", "minpts"}))
        ->capture_default_str();
    sweep->add_option("--from", s.from, "First value (default 1)");
    sweep->add_option("--to", s.to, "Last value (default 800 for eps_km, 11 for min_pts)");
    sweep->add_option("--step", s.step, "Step (default 30 for eps_km, 1 for min_pts)");

    auto* categorize = app.add_subcommand("categorize", "Assign place categories to mentions");
    add_common(categorize, s);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto manifest = to_manifest(s);
        if (resolve->parsed()) {
            geovote::cmd_resolve(manifest, std::cerr);
        } else if (evaluate->parsed()) {
            geovote::cmd_evaluate(manifest, std::cerr);
        } else if (ablate->parsed()) {
            geovote::cmd_ablate(manifest, std::cerr);
        } else if (sweep->parsed()) {
            geovote::cmd_sweep(manifest, geovote::parse_sweep_parameter(s.parameter), s.from, s.to, s.step, std::cerr);
        } else if (categorize->parsed()) {
            geovote::cmd_categorize(manifest, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
