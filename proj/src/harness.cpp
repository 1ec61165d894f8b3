#include "geovote/harness.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "geovote/errors.hpp"
#include "text.hpp"

#ifndef GEOVOTE_PROFILE_DIR
#define GEOVOTE_PROFILE_DIR "data/profiles"
#endif

namespace geovote {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMaxWarningsShown = 20;

void print_warnings(std::ostream& log, const std::vector<std::string>& warnings) {
    for (std::size_t i = 0; i < warnings.size() && i < kMaxWarningsShown; ++i) log << "warning: " << warnings[i] << '\n';
    if (warnings.size() > kMaxWarningsShown) {
        log << "warning: ... " << warnings.size() - kMaxWarningsShown << " more warnings suppressed\n";
    }
}

// Output files are written to temporaries and renamed on commit; anything
// not committed is deleted.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;

    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& [tmp, _] : files_) fs::remove(tmp, ec);
    }

    std::ofstream open(const std::string& name) {
        const fs::path final_path = dir_ / name;
        fs::path tmp = final_path;
        tmp += ".partial";
        files_.emplace_back(tmp, final_path);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        return out;
    }

    void commit() {
        for (const auto& [tmp, final_path] : files_) fs::rename(tmp, final_path);
        committed_ = true;
    }

private:
    fs::path dir_;
    std::vector<std::pair<fs::path, fs::path>> files_;
    bool committed_ = false;
};

void check_stream(std::ofstream& out, const std::string& what) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + what);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

// "<approach>__<dataset>.jsonl" -> dataset
std::optional<std::string> dataset_from_filename(const fs::path& p) {
    const auto stem = p.stem().string();
    const auto sep = stem.rfind("__");
    if (sep == std::string::npos) return std::nullopt;
    return stem.substr(sep + 2);
}

std::vector<std::string> approach_ids(const std::vector<Dataset>& datasets) {
    std::vector<std::string> ids;
    std::set<std::string> seen;
    for (const auto& ds : datasets) {
        for (const auto& set : ds.predictions) {
            if (seen.insert(set.approach_id).second) ids.push_back(set.approach_id);
        }
    }
    return ids;
}

std::optional<Gazetteer> load_gazetteer(const RunManifest& m, std::ostream& log) {
    if (!m.gazetteer) return std::nullopt;
    auto load = load_geonames_tsv(*m.gazetteer);
    print_warnings(log, load.warnings);
    log << "gazetteer: " << load.gazetteer.size() << " entries (" << load.rows_skipped << " rows skipped)\n";
    return std::move(load.gazetteer);
}

void apply_overrides(const RunManifest& m, EnsembleConfig& c) {
    if (m.seed) c.rng_seed = *m.seed;
    if (m.eps_km) c.params.eps_km = *m.eps_km;
    if (m.min_pts) c.params.min_pts = *m.min_pts;
    c.validate();
}

}  // namespace

void RunManifest::validate() const {
    auto require = [](const fs::path& p, const char* what) {
        if (!fs::exists(p)) throw std::runtime_error(std::string(what) + " not found: " + p.string());
    };
    if (corpora.empty()) throw std::runtime_error("no corpus given");
    for (const auto& c : corpora) {
        require(c.path, "corpus");
        if (c.path.extension() != ".jsonl") {
            if (c.profile.empty()) throw std::runtime_error("XML corpus needs a profile: " + c.path.string());
            require(resolve_profile_path(c.profile), "profile");
        }
    }
    for (const auto& p : predictions) require(p, "prediction file");
    if (gazetteer) require(*gazetteer, "gazetteer");
    if (config) require(*config, "ensemble config");
}

fs::path resolve_profile_path(const std::string& profile) {
    const fs::path as_path(profile);
    if (fs::exists(as_path)) return as_path;
    return fs::path(GEOVOTE_PROFILE_DIR) / (profile + ".profile");
}

EnsembleConfig effective_config(const RunManifest& m) {
    EnsembleConfig c = m.config ? load_ensemble_config(*m.config) : EnsembleConfig::default_ensemble();
    apply_overrides(m, c);
    return c;
}

std::vector<Dataset> load_datasets(const RunManifest& m, std::ostream& log) {
    m.validate();
    std::vector<Dataset> datasets;
    for (const auto& in : m.corpora) {
        Corpus corpus;
        if (in.path.extension() == ".jsonl") {
            corpus = parse_mentions_jsonl(in.path);
        } else {
            const auto profile = load_xml_profile(resolve_profile_path(in.profile));
            auto load = parse_annotated_xml(in.path, profile);
            print_warnings(log, load.report.warnings);
            log << in.path.string() << ": " << load.report.records_seen << " toponym records, "
                << load.report.skipped() << " skipped\n";
            corpus = std::move(load.corpus);
        }
        corpus.name = in.path.stem().string();
        if (!m.keep_misaligned) {
            auto filtered = filter_misaligned(corpus);
            log << corpus.name << ": " << filtered.removed << " misaligned mentions excluded\n";
            corpus = std::move(filtered.corpus);
        }
        datasets.push_back({std::move(corpus), {}});
    }

    for (const auto& path : m.predictions) {
        auto set = load_predictions(path);
        Dataset* target = nullptr;
        if (datasets.size() == 1) {
            target = &datasets.front();
        } else {
            const auto name = dataset_from_filename(path);
            for (auto& ds : datasets) {
                if (name && ds.corpus.name == *name) target = &ds;
            }
            if (!target) throw std::runtime_error("cannot match prediction file to a corpus: " + path.string());
        }
        for (const auto& other : target->predictions) {
            if (other.approach_id == set.approach_id) {
                throw ConfigError("duplicate prediction set for approach", set.approach_id);
            }
        }
        std::set<std::string> known;
        for (const auto& mention : target->corpus.mentions) known.insert(mention.mention_id);
        std::size_t unknown = 0;
        for (const auto& [id, _] : set.predictions) unknown += !known.contains(id);
        if (unknown) {
            log << "warning: " << path.string() << ": " << unknown << " predictions for mentions not in "
                << target->corpus.name << '\n';
        }
        target->predictions.push_back(std::move(set));
    }
    return datasets;
}

void cmd_resolve(const RunManifest& m, std::ostream& log) {
    const auto config = effective_config(m);
    const auto datasets = load_datasets(m, log);
    OutputSet outputs(m.out_dir);

    for (const auto& ds : datasets) {
        for (const auto& a : config.approaches) {
            const bool present = std::any_of(ds.predictions.begin(), ds.predictions.end(),
                                             [&](const PredictionSet& s) { return s.approach_id == a.id; });
            if (!present) {
                log << "warning: " << ds.corpus.name << ": no prediction file for approach " << a.id
                    << "; treated as invalid\n";
            }
        }
        const auto resolutions = resolve_corpus(ds.corpus, ds.predictions, config);

        const std::string name = "resolutions__" + ds.corpus.name + ".jsonl";
        auto out = outputs.open(name);
        for (const auto& mention : ds.corpus.mentions) {
            const auto& r = resolutions.at(mention.mention_id);
            out << "{\"mention_id\": " << nlohmann::json(mention.mention_id).dump();
            if (r.point) {
                out << ", \"status\": \"resolved\", \"lat\": " << detail::fixed6(r.point->lat())
                    << ", \"lon\": " << detail::fixed6(r.point->lon()) << ", \"provenance\": \""
                    << to_string(*r.provenance) << '"';
            } else {
                out << ", \"status\": \"invalid\", \"lat\": null, \"lon\": null, \"provenance\": null";
            }
            out << ", \"winning_weight\": " << r.winning_weight << "}\n";
        }
        check_stream(out, name);
        log << ds.corpus.name << ": " << ds.corpus.mentions.size() << " mentions resolved\n";
    }
    outputs.commit();
}

void cmd_evaluate(const RunManifest& m, std::ostream& log) {
    const auto config = effective_config(m);
    auto datasets = load_datasets(m, log);
    const auto gaz = load_gazetteer(m, log);
    if (m.population_baseline && !gaz) throw std::runtime_error("--population-baseline needs --gazetteer");
    const Gazetteer* gaz_ptr = gaz ? &*gaz : nullptr;

    for (const auto& id : approach_ids(datasets)) {
        if (!config.contains(id)) log << "warning: approach " << id << " is not in the ensemble config; scored individually only\n";
    }

    std::vector<MetricsReport> rows;
    auto add_system = [&](std::vector<MetricsReport> per_dataset) {
        if (!m.per_category) {
            for (auto& r : per_dataset) r.per_category.clear();
        }
        auto macro = macro_average(per_dataset);
        macro.dataset = kMacroDataset;
        rows.insert(rows.end(), per_dataset.begin(), per_dataset.end());
        rows.push_back(std::move(macro));
    };

    add_system(evaluate_ensemble("voting", config, datasets, gaz_ptr, m.eval));

    std::vector<std::string> systems = approach_ids(datasets);
    if (m.population_baseline) {
        for (auto& ds : datasets) ds.predictions.push_back(population_baseline(ds.corpus, *gaz_ptr));
        systems.push_back("PopulationHeuristics");
    }
    for (const auto& system : systems) {
        std::vector<MetricsReport> per_dataset;
        for (const auto& ds : datasets) {
            std::map<std::string, Resolution> res;
            for (const auto& set : ds.predictions) {
                if (set.approach_id != system) continue;
                for (const auto& [id, p] : set.predictions) res.emplace(id, Resolution::from_prediction(p));
            }
            per_dataset.push_back(evaluate(system, res, ds.corpus, gaz_ptr, m.eval));
        }
        add_system(std::move(per_dataset));
    }

    OutputSet outputs(m.out_dir);
    auto csv = outputs.open("report.csv");
    write_reports_csv(csv, rows, m.eval);
    check_stream(csv, "report.csv");
    auto json = outputs.open("report.json");
    write_reports_json(json, rows, m.eval);
    check_stream(json, "report.json");
    outputs.commit();
    log << "evaluated " << systems.size() + 1 << " systems on " << datasets.size() << " datasets\n";
}

void cmd_ablate(const RunManifest& m, std::ostream& log) {
    const auto datasets = load_datasets(m, log);
    EnsembleConfig basic;
    if (m.config) {
        basic = load_ensemble_config(*m.config);
    } else {
        const auto ids = approach_ids(datasets);
        basic = EnsembleConfig::equal_weights(ids);
    }
    apply_overrides(m, basic);

    const auto results = ablate(basic, datasets, m.eval);
    OutputSet outputs(m.out_dir);
    auto csv = outputs.open("ablation.csv");
    write_ablation_csv(csv, results);
    check_stream(csv, "ablation.csv");
    auto json = outputs.open("ablation.json");
    write_ablation_json(json, results);
    check_stream(json, "ablation.json");
    outputs.commit();
    log << "ablated " << results.size() << " approaches\n";
}

void cmd_sweep(const RunManifest& m, SweepParameter parameter, std::optional<double> from, std::optional<double> to,
               std::optional<double> step, std::ostream& log) {
    const auto config = effective_config(m);
    const auto datasets = load_datasets(m, log);

    std::vector<double> values;
    if (!from && !to && !step) {
        values = default_sweep_values(parameter);
    } else {
        const auto defaults = default_sweep_values(parameter);
        const double default_step = parameter == SweepParameter::eps_km ? 30.0 : 1.0;
        values = sweep_values(from.value_or(defaults.front()), to.value_or(parameter == SweepParameter::eps_km ? 800.0 : 11.0),
                              step.value_or(default_step));
    }

    const auto curve = sweep(config, parameter, values, datasets, m.eval);
    OutputSet outputs(m.out_dir);
    const std::string stem = std::string("sweep_") + to_string(parameter);
    auto csv = outputs.open(stem + ".csv");
    write_sweep_csv(csv, curve);
    check_stream(csv, stem + ".csv");
    auto json = outputs.open(stem + ".json");
    write_sweep_json(json, curve);
    check_stream(json, stem + ".json");
    outputs.commit();
    log << "swept " << to_string(parameter) << " over " << curve.points.size() << " values\n";
}

void cmd_categorize(const RunManifest& m, std::ostream& log) {
    const auto datasets = load_datasets(m, log);
    const auto gaz = load_gazetteer(m, log);
    const Gazetteer* gaz_ptr = gaz ? &*gaz : nullptr;

    OutputSet outputs(m.out_dir);
    auto per_mention = outputs.open("categories.csv");
    per_mention << "dataset,mention_id,surface,category\n";
    std::map<std::pair<std::string, PlaceCategory>, std::size_t> counts;
    for (const auto& ds : datasets) {
        for (const auto& mention : ds.corpus.mentions) {
            const auto cat = categorize_mention(mention, gaz_ptr);
            ++counts[{ds.corpus.name, cat}];
            per_mention << csv_field(ds.corpus.name) << ',' << csv_field(mention.mention_id) << ','
                        << csv_field(mention.surface) << ',' << to_string(cat) << '\n';
        }
    }
    check_stream(per_mention, "categories.csv");

    auto summary = outputs.open("category_counts.csv");
    summary << "dataset,category,count\n";
    for (const auto& ds : datasets) {
        for (auto cat : kAllCategories) {
            auto it = counts.find({ds.corpus.name, cat});
            summary << csv_field(ds.corpus.name) << ',' << to_string(cat) << ','
                    << (it == counts.end() ? 0 : it->second) << '\n';
        }
    }
    check_stream(summary, "category_counts.csv");
    outputs.commit();
    log << "categorized " << datasets.size() << " datasets\n";
}

}  // namespace geovote
