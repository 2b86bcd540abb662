// Command-line front end: simulate corpora, detect revisions, calibrate the
// threshold, evaluate predictions, or score a single document pair.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <revdet/revdet.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct EmbeddingArgs {
    std::string path;    // --embeddings
    std::string pseudo;  // --pseudo-embeddings DIM,SEED
};

void add_embedding_flags(CLI::App* cmd, EmbeddingArgs& args) {
    auto* real = cmd->add_option("--embeddings", args.path,
                                 "word vector file (text format)");
    auto* pseudo = cmd->add_option(
        "--pseudo-embeddings", args.pseudo,
        "DIM,SEED deterministic vectors derived from token hashes");
    real->excludes(pseudo);
    pseudo->excludes(real);
}

// Builds the table from either flag; pseudo vectors cover the given corpus
// vocabulary. Returns nothing when neither flag was passed.
std::optional<revdet::EmbeddingTable> make_table(
    const EmbeddingArgs& args, const std::vector<revdet::Document>& docs) {
    if (!args.path.empty()) return revdet::load_embeddings(args.path);
    if (args.pseudo.empty()) return std::nullopt;

    auto comma = args.pseudo.find(',');
    if (comma == std::string::npos)
        throw revdet::ConfigError("--pseudo-embeddings wants DIM,SEED");
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    try {
        dim = std::stoull(args.pseudo.substr(0, comma));
        seed = std::stoull(args.pseudo.substr(comma + 1));
    } catch (const std::exception&) {
        throw revdet::ConfigError("--pseudo-embeddings wants DIM,SEED");
    }
    if (dim == 0) throw revdet::ConfigError("pseudo embedding dim must be >= 1");

    std::set<std::string> vocab;
    for (const revdet::Document& d : docs)
        for (const revdet::TokenSeq& unit : revdet::flatten_paragraphs(d))
            for (const std::string& t : unit) vocab.insert(t);
    return revdet::pseudo_embeddings(vocab, dim, seed);
}

json times_json(const revdet::StageTimes& t) {
    return json{{"weak_s", t.weak_s},
                {"prepare_s", t.prepare_s},
                {"score_s", t.score_s},
                {"network_s", t.network_s}};
}

json counts_json(const revdet::StageCounts& c) {
    return json{{"documents", c.documents},
                {"candidates", c.candidates},
                {"weak_kept", c.weak_kept},
                {"strong_kept", c.strong_kept},
                {"network_vertices", c.network_vertices},
                {"detected", c.detected}};
}

json calibration_json(const revdet::CalibrationResult& cal) {
    return json{{"tau", cal.tau},
                {"method", cal.method},
                {"peak1_bin", cal.peak1},
                {"peak2_bin", cal.peak2},
                {"valley_bin", cal.valley}};
}

void write_json(const fs::path& path, const json& j) {
    revdet::write_file(path, j.dump(2) + "\n");
}

struct CorpusLoad {
    std::vector<revdet::Document> docs;
    std::size_t loaded = 0;
    std::size_t filtered_out = 0;
};

CorpusLoad load_filtered_corpus(const std::string& dir) {
    CorpusLoad out;
    out.docs = revdet::load_corpus(dir);
    out.loaded = out.docs.size();
    out.docs = revdet::corpus_filter(std::move(out.docs));
    out.filtered_out = out.loaded - out.docs.size();
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"document revision detection toolkit"};
    app.require_subcommand(1);
    std::size_t workers = 1;
    app.add_option("--workers", workers, "worker threads for pair scoring")
        ->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate",
                                   "generate a corpus with known revisions");
    double lambda = 550.0, revision_factor = 0.5;
    std::size_t periods = 5;
    std::uint64_t seed = 0;
    std::string pool_path, sim_out;
    sim->add_option("--lambda", lambda, "arrival rate / initial corpus size")
        ->capture_default_str();
    sim->add_option("--periods", periods, "number of revision periods")
        ->capture_default_str();
    sim->add_option("--seed", seed, "rng seed")->capture_default_str();
    sim->add_option("--revision-factor", revision_factor,
                    "revision rate as a fraction of lambda")
        ->capture_default_str();
    sim->add_option("--pool", pool_path, "sentence pool file")->required();
    sim->add_option("--out", sim_out, "output corpus directory")->required();

    // detect
    auto* det = app.add_subcommand("detect", "find revision pairs in a corpus");
    std::string det_corpus, det_measure = "wdtw", det_tau = "auto", det_out;
    double det_weak_tau = 0.5;
    std::size_t det_bins = 100, det_window = 5;
    EmbeddingArgs det_emb;
    det->add_option("--corpus", det_corpus, "corpus directory")->required();
    add_embedding_flags(det, det_emb);
    det->add_option("--measure", det_measure, "wdtw|wted|vsm")
        ->capture_default_str();
    det->add_option("--tau", det_tau, "strong threshold, number or 'auto'")
        ->capture_default_str();
    det->add_option("--weak-tau", det_weak_tau, "weak vsm threshold")
        ->capture_default_str();
    det->add_option("--bins", det_bins, "calibration histogram bins")
        ->capture_default_str();
    det->add_option("--window", det_window, "calibration smoothing window")
        ->capture_default_str();
    det->add_option("--out", det_out, "output directory")->required();

    // calibrate
    auto* cal = app.add_subcommand("calibrate",
                                   "pick tau from the score histogram");
    std::string cal_corpus, cal_measure = "wdtw", cal_out;
    double cal_weak_tau = 0.5;
    std::size_t cal_bins = 100, cal_window = 5;
    EmbeddingArgs cal_emb;
    cal->add_option("--corpus", cal_corpus, "corpus directory")->required();
    add_embedding_flags(cal, cal_emb);
    cal->add_option("--measure", cal_measure, "wdtw|wted|vsm")
        ->capture_default_str();
    cal->add_option("--weak-tau", cal_weak_tau, "weak vsm threshold")
        ->capture_default_str();
    cal->add_option("--bins", cal_bins, "histogram bins")->capture_default_str();
    cal->add_option("--window", cal_window, "smoothing window")
        ->capture_default_str();
    cal->add_option("--out", cal_out, "output directory")->required();

    // eval
    auto* ev = app.add_subcommand("eval", "score predictions against truth");
    std::string ev_pred, ev_truth, ev_out;
    ev->add_option("--predicted", ev_pred, "predictions csv")->required();
    ev->add_option("--truth", ev_truth, "ground truth csv")->required();
    ev->add_option("--out", ev_out, "report json path")->required();

    // dist
    auto* di = app.add_subcommand("dist", "distance between two documents");
    std::string di_a, di_b, di_measure = "wdtw";
    EmbeddingArgs di_emb;
    di->add_option("--doc-a", di_a, "first document file")->required();
    di->add_option("--doc-b", di_b, "second document file")->required();
    add_embedding_flags(di, di_emb);
    di->add_option("--measure", di_measure, "wdtw|wted|vsm")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        revdet::SimConfig cfg;
        cfg.lambda = lambda;
        cfg.revision_rate_factor = revision_factor;
        cfg.periods = periods;
        cfg.seed = seed;
        auto pool = revdet::load_text_pool(pool_path);
        revdet::SimResult result = revdet::simulate(cfg, pool);

        fs::path out(sim_out);
        revdet::write_sim_corpus(out, result);
        revdet::write_ground_truth(out / "ground_truth.csv", result.truth);
        std::string log;
        for (const std::string& line : result.edit_log) log += line + "\n";
        revdet::write_file(out / "edit_log.txt", log);

        json weights = json::array();
        for (const auto& row : cfg.op_weights) weights.push_back(row);
        write_json(out / "sim_config.json",
                   json{{"lambda", cfg.lambda},
                        {"revision_factor", cfg.revision_rate_factor},
                        {"periods", cfg.periods},
                        {"seed", cfg.seed},
                        {"pool", pool_path},
                        {"op_weights", weights},
                        {"documents", result.records.size()},
                        {"revisions", result.truth.size()}});
        std::cout << "simulated " << result.records.size() << " documents ("
                  << result.truth.size() << " revisions) into " << sim_out
                  << "\n";
        return 0;
    }

    if (det->parsed()) {
        CorpusLoad corpus = load_filtered_corpus(det_corpus);
        auto table = make_table(det_emb, corpus.docs);

        revdet::PipelineConfig cfg;
        cfg.measure = revdet::parse_measure(det_measure);
        cfg.weak_tau = det_weak_tau;
        cfg.bins = det_bins;
        cfg.window = det_window;
        cfg.workers = workers;
        if (det_tau == "auto") {
            cfg.auto_tau = true;
        } else {
            cfg.auto_tau = false;
            try {
                cfg.tau = std::stod(det_tau);
            } catch (const std::exception&) {
                throw revdet::ConfigError("--tau wants a number or 'auto'");
            }
        }

        revdet::DetectResult res = revdet::detect(
            corpus.docs, table ? &*table : nullptr, cfg);

        fs::path out(det_out);
        fs::create_directories(out);
        revdet::write_predictions(out / "predictions.csv", res.pairs,
                                  cfg.measure);
        json report{{"measure", revdet::measure_name(cfg.measure)},
                    {"tau", res.tau_used},
                    {"tau_method", res.tau_method},
                    {"weak_tau", cfg.weak_tau},
                    {"bins", cfg.bins},
                    {"window", cfg.window},
                    {"workers", cfg.workers},
                    {"idf_convention", "ln(N/df)"},
                    {"vsm_network_weight", "1-similarity"},
                    {"corpus_loaded", corpus.loaded},
                    {"corpus_filtered_out", corpus.filtered_out},
                    {"counts", counts_json(res.counts)},
                    {"times", times_json(res.times)}};
        if (cfg.auto_tau && !res.calibration.histogram.empty()) {
            report["calibration"] = calibration_json(res.calibration);
            revdet::write_histogram(out / "histogram.csv",
                                    res.calibration.histogram);
        }
        write_json(out / "report.json", report);
        std::cout << "detected " << res.pairs.size() << " revision pairs (tau="
                  << res.tau_used << ", " << res.tau_method << ")\n";
        return 0;
    }

    if (cal->parsed()) {
        CorpusLoad corpus = load_filtered_corpus(cal_corpus);
        auto table = make_table(cal_emb, corpus.docs);

        revdet::PipelineConfig cfg;
        cfg.measure = revdet::parse_measure(cal_measure);
        cfg.weak_tau = cal_weak_tau;
        cfg.bins = cal_bins;
        cfg.window = cal_window;
        cfg.workers = workers;

        revdet::CalibrateRun run =
            revdet::calibrate_corpus(corpus.docs, table ? &*table : nullptr, cfg);

        fs::path out(cal_out);
        fs::create_directories(out);
        revdet::write_histogram(out / "histogram.csv",
                                run.calibration.histogram);
        write_json(out / "calibration.json",
                   json{{"measure", revdet::measure_name(cfg.measure)},
                        {"tau", run.calibration.tau},
                        {"method", run.calibration.method},
                        {"peak1_bin", run.calibration.peak1},
                        {"peak2_bin", run.calibration.peak2},
                        {"valley_bin", run.calibration.valley},
                        {"scores", run.score_count},
                        {"weak_tau", cfg.weak_tau},
                        {"bins", cfg.bins},
                        {"window", cfg.window},
                        {"corpus_loaded", corpus.loaded},
                        {"corpus_filtered_out", corpus.filtered_out},
                        {"counts", counts_json(run.counts)},
                        {"times", times_json(run.times)}});
        std::cout << "tau=" << run.calibration.tau << " ("
                  << run.calibration.method << ") from " << run.score_count
                  << " scores\n";
        return 0;
    }

    if (ev->parsed()) {
        auto predicted = revdet::read_predictions(ev_pred);
        auto truth = revdet::read_ground_truth(ev_truth);
        revdet::PairSet pred_set, truth_set;
        for (const auto& p : predicted)
            pred_set.emplace(p.original, p.revision);
        for (const auto& t : truth) truth_set.emplace(t.original, t.revision);
        revdet::EvalReport rep = revdet::evaluate(pred_set, truth_set);

        fs::path out(ev_out);
        if (out.has_parent_path()) fs::create_directories(out.parent_path());
        write_json(out, json{{"tp", rep.tp},
                             {"fp", rep.fp},
                             {"fn", rep.fn},
                             {"precision", rep.precision},
                             {"recall", rep.recall},
                             {"f_measure", rep.f_measure}});
        std::printf("P=%.4f R=%.4f F=%.4f (tp=%zu fp=%zu fn=%zu)\n",
                    rep.precision, rep.recall, rep.f_measure, rep.tp, rep.fp,
                    rep.fn);
        return 0;
    }

    if (di->parsed()) {
        revdet::Document a =
            revdet::parse_document(revdet::read_file(di_a), "a", 0);
        revdet::Document b =
            revdet::parse_document(revdet::read_file(di_b), "b", 1);
        revdet::Measure measure = revdet::parse_measure(di_measure);

        double score = 0.0;
        if (measure == revdet::Measure::vsm) {
            revdet::TfIdfModel model = revdet::TfIdfModel::fit({a, b});
            score = model.similarity("a", "b");
        } else {
            auto table = make_table(di_emb, {a, b});
            if (!table)
                throw revdet::ConfigError(
                    "measure " + revdet::measure_name(measure) +
                    " needs --embeddings or --pseudo-embeddings");
            auto embed_units = [&](const revdet::Document& d) {
                std::vector<revdet::VectorSeq> units;
                for (const revdet::TokenSeq& u : revdet::flatten_paragraphs(d))
                    units.push_back(revdet::embed(u, *table));
                return units;
            };
            auto ua = embed_units(a), ub = embed_units(b);
            revdet::ParaDistMatrix m =
                revdet::para_dist_matrix(ua, ub, workers);
            if (measure == revdet::Measure::wdtw) {
                score = revdet::wdtw(ua, ub, m);
            } else {
                score = revdet::wted(revdet::build_doc_tree(a, *table),
                                     revdet::build_doc_tree(b, *table), m);
            }
        }
        std::printf("%.9g\n", score);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
