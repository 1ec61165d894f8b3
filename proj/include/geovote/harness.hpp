#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geovote/analysis.hpp"
#include "geovote/metrics.hpp"
#include "geovote/voting.hpp"

namespace geovote {

struct CorpusInput {
    std::filesystem::path path;
    /// Shipped profile name (lgl, trnews, geowebnews, geovirus, wiktor) or a
    /// profile file path. Required for XML corpora, ignored for .jsonl.
    std::string profile;
};

/// Everything one harness command needs. Prediction files are matched to
/// corpora by the `<approach>__<dataset>.jsonl` convention when more than
/// one corpus is given.
struct RunManifest {
    std::vector<CorpusInput> corpora;
    std::vector<std::filesystem::path> predictions;
    std::optional<std::filesystem::path> gazetteer;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir = ".";
    EvalOptions eval;

    std::optional<std::uint64_t> seed;
    std::optional<double> eps_km;
    std::optional<int> min_pts;

    bool keep_misaligned = false;
    bool per_category = false;
    bool population_baseline = false;

    /// Throws std::runtime_error naming the first missing input path.
    void validate() const;
};

/// Shipped profile directory, or a profile file path.
std::filesystem::path resolve_profile_path(const std::string& profile);

/// Config file (or the shipped default ensemble) with CLI overrides applied.
EnsembleConfig effective_config(const RunManifest& m);

/// Loads and filters every corpus and attaches its prediction sets.
std::vector<Dataset> load_datasets(const RunManifest& m, std::ostream& log);

/// Writes resolutions__<dataset>.jsonl per corpus, one record per mention:
/// {mention_id, status, lat, lon, provenance, winning_weight}. Outputs are
/// removed again if any step fails.
void cmd_resolve(const RunManifest& m, std::ostream& log);

/// Writes report.csv and report.json: per-dataset rows then a macro row for
/// the voting ensemble and every prediction file's approach.
void cmd_evaluate(const RunManifest& m, std::ostream& log);

/// Writes ablation.csv and ablation.json. Without --config the basic
/// ensemble gives every supplied approach one vote.
void cmd_ablate(const RunManifest& m, std::ostream& log);

/// Writes sweep_<parameter>.csv (long format) and .json.
void cmd_sweep(const RunManifest& m, SweepParameter parameter, std::optional<double> from, std::optional<double> to,
               std::optional<double> step, std::ostream& log);

/// Writes categories.csv (per mention) and category_counts.csv.
void cmd_categorize(const RunManifest& m, std::ostream& log);

}  // namespace geovote
