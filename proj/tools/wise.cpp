// wise: command-line entry point wiring the toolkit modules into
// reproducible pipelines. Exit codes: 0 success, 1 contract/data error,
// 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wise/corpus.hpp"
#include "wise/dataset.hpp"
#include "wise/embedding.hpp"
#include "wise/eval.hpp"
#include "wise/experiments.hpp"
#include "wise/glove.hpp"
#include "wise/nn.hpp"
#include "wise/subsample.hpp"
#include "wise/tagger.hpp"
#include "wise/text.hpp"
#include "wise/tsne.hpp"

namespace {

// Flat key=value config file; '#' starts a comment; command-line flags
// override file values. Keys are option names without dashes and are
// validated against the full option inventory.
class Config {
public:
    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file " + path);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = wise::collapse_whitespace(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw std::runtime_error("config line " +
                                         std::to_string(lineno) +
                                         ": expected key=value");
            }
            std::string key = wise::collapse_whitespace(line.substr(0, eq));
            std::string value =
                wise::collapse_whitespace(line.substr(eq + 1));
            values_[key] = value;
        }
    }

    template <typename T>
    void apply(const std::string& key, T& var) {
        known_.insert(key);
        auto it = values_.find(key);
        if (it == values_.end()) return;
        std::istringstream in(it->second);
        T parsed;
        if (!(in >> parsed)) {
            throw std::runtime_error("config key '" + key +
                                     "': cannot parse value '" + it->second +
                                     "'");
        }
        var = parsed;
    }

    void apply(const std::string& key, std::string& var) {
        known_.insert(key);
        auto it = values_.find(key);
        if (it != values_.end()) var = it->second;
    }

    void validate() const {
        for (const auto& [k, v] : values_) {
            if (!known_.count(k)) {
                throw std::runtime_error("config: unknown key '" + k + "'");
            }
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> known_;
};

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!wise::collapse_whitespace(line).empty()) lines.push_back(line);
    }
    return lines;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<size_t> parse_sizes(const std::string& csv) {
    std::vector<size_t> sizes;
    std::stringstream in(csv);
    std::string part;
    while (std::getline(in, part, ',')) {
        sizes.push_back(std::stoull(wise::collapse_whitespace(part)));
    }
    return sizes;
}

// "name=path" pairs for registry population.
std::pair<std::string, std::string> split_pair(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) {
        throw std::runtime_error("expected name=path, got '" + s + "'");
    }
    return {s.substr(0, eq), s.substr(eq + 1)};
}

wise::Approach parse_approach(const std::string& s) {
    if (s == "direct-train") return wise::Approach::DirectTrain;
    if (s == "embedding-transfer") return wise::Approach::EmbeddingTransfer;
    if (s == "pos-direct") return wise::Approach::PosDirect;
    throw std::runtime_error("unknown approach '" + s + "'");
}

wise::TrainVariant parse_variant(const std::string& s) {
    if (s == "wiki") return wise::TrainVariant::Wiki;
    if (s == "wiki+gold") return wise::TrainVariant::WikiPlusGold;
    if (s == "subsample") return wise::TrainVariant::Subsample;
    if (s == "subsample+gold") return wise::TrainVariant::SubsamplePlusGold;
    if (s == "gold-only") return wise::TrainVariant::GoldOnly;
    throw std::runtime_error("unknown training variant '" + s + "'");
}

wise::EmbeddingSource parse_embedding_source(const std::string& s) {
    if (s == "pretrained") return wise::EmbeddingSource::Pretrained;
    if (s == "wise_w") return wise::EmbeddingSource::WiseW;
    if (s == "wise_p") return wise::EmbeddingSource::WiseP;
    if (s == "glove_wiki_p") return wise::EmbeddingSource::GloveWikiP;
    if (s == "concat") return wise::EmbeddingSource::Concat;
    if (s == "random") return wise::EmbeddingSource::RandomInit;
    throw std::runtime_error("unknown embedding source '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Suggestion-mining toolkit: silver-corpus construction, "
                 "embedding training, LSTM classification and evaluation"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    // The config file is read before option defaults are wired so that
    // flags given on the command line always win.
    Config config;
    std::string config_path;
    app.add_option("--config", config_path,
                   "Flat key=value config file; flags override its values");
    for (int i = 1; i < argc - 1; ++i) {
        if (std::string(argv[i]) == "--config") config.load(argv[i + 1]);
    }

    // Shared option storage. One variable per key; subcommands reuse them.
    std::string input, output, train_path, test_path, model_path;
    std::string embeddings_path, tagger_path, report_path, csv_path;
    std::string wiki_path, abbrev_path, phase = "train";
    std::string approach = "direct-train", variant = "gold-only";
    std::string embedding_source = "pretrained", sizes_csv;
    std::vector<std::string> dataset_specs, embedding_specs, test_sets;
    size_t count = 0, dim = 100, window = 5, min_count = 1;
    size_t lstm1 = 100, lstm2 = 50, lstm3 = 20, max_seq_len = 100;
    size_t batch_size = 32;
    int epochs = 5, iterations = 1000;
    uint64_t seed = 1, shuffle_seed = 1;
    double fraction = 0.01, learning_rate = 0.001, l2 = 1e-4;
    double x_max = 100.0, alpha = 0.75, glove_lr = 0.05, perplexity = 30.0;
    bool freeze_embeddings = false, verbose = false;

    config.apply("input", input);
    config.apply("output", output);
    config.apply("train", train_path);
    config.apply("test", test_path);
    config.apply("model", model_path);
    config.apply("embeddings", embeddings_path);
    config.apply("tagger", tagger_path);
    config.apply("report", report_path);
    config.apply("csv", csv_path);
    config.apply("wiki", wiki_path);
    config.apply("abbreviations", abbrev_path);
    config.apply("phase", phase);
    config.apply("approach", approach);
    config.apply("variant", variant);
    config.apply("embedding-source", embedding_source);
    config.apply("sizes", sizes_csv);
    config.apply("count", count);
    config.apply("dim", dim);
    config.apply("window", window);
    config.apply("min-count", min_count);
    config.apply("lstm1", lstm1);
    config.apply("lstm2", lstm2);
    config.apply("lstm3", lstm3);
    config.apply("max-seq-len", max_seq_len);
    config.apply("batch-size", batch_size);
    config.apply("epochs", epochs);
    config.apply("iterations", iterations);
    config.apply("seed", seed);
    config.apply("shuffle-seed", shuffle_seed);
    config.apply("fraction", fraction);
    config.apply("learning-rate", learning_rate);
    config.apply("l2", l2);
    config.apply("x-max", x_max);
    config.apply("alpha", alpha);
    config.apply("glove-learning-rate", glove_lr);
    config.apply("perplexity", perplexity);
    config.validate();

    auto make_train_config = [&]() {
        wise::TrainConfig tc;
        tc.epochs = epochs;
        tc.batch_size = batch_size;
        tc.learning_rate = learning_rate;
        tc.shuffle_seed = shuffle_seed;
        tc.phase = phase;
        tc.verbose = verbose;
        return tc;
    };

    auto make_model_config = [&](wise::Vocabulary vocab) {
        wise::ModelConfig cfg;
        cfg.embedding_dim = dim;
        cfg.vocab = std::move(vocab);
        cfg.lstm_sizes = {lstm1, lstm2, lstm3};
        cfg.l2_lambda = l2;
        cfg.max_seq_len = max_seq_len;
        cfg.trainable_embeddings = !freeze_embeddings;
        cfg.seed = seed;
        return cfg;
    };

    auto make_splitter = [&]() {
        wise::SentenceSplitter splitter;
        if (!abbrev_path.empty()) splitter.load_abbreviations(abbrev_path);
        return splitter;
    };

    auto build_registry = [&]() {
        wise::Registry reg;
        for (const auto& spec : dataset_specs) {
            auto [name, path] = split_pair(spec);
            reg.add_dataset(name, wise::load_tsv(path));
        }
        for (const auto& spec : embedding_specs) {
            auto [name, path] = split_pair(spec);
            reg.add_embedding(name, wise::load_embeddings(path));
        }
        return reg;
    };

    auto make_experiment_spec = [&]() {
        wise::ExperimentSpec spec;
        spec.approach = parse_approach(approach);
        spec.variant = parse_variant(variant);
        spec.embedding = parse_embedding_source(embedding_source);
        spec.test_sets = test_sets;
        spec.embedding_dim = dim;
        spec.lstm_sizes = {lstm1, lstm2, lstm3};
        spec.l2_lambda = l2;
        spec.max_seq_len = max_seq_len;
        spec.min_count = min_count;
        spec.subsample_fraction = fraction;
        spec.train = make_train_config();
        spec.seed = seed;
        return spec;
    };

    // --- corpus construction ------------------------------------------

    auto* cmd_pos = app.add_subcommand(
        "prepare-positives",
        "Clean tips/warnings items (one per line) into positive sentences");
    cmd_pos->add_option("--input", input, "Items file, one item per line")
        ->required();
    cmd_pos->add_option("--output", output, "Output dataset TSV")->required();
    cmd_pos->add_option("--abbreviations", abbrev_path,
                        "Extra abbreviation list for the sentence splitter");
    cmd_pos->callback([&]() {
        auto items = read_lines(input);
        auto splitter = make_splitter();
        auto result = wise::ingest_positives(items, splitter);
        wise::save_tsv(result.dataset, output);
        std::cout << "prepare-positives items=" << items.size()
                  << " kept=" << result.dataset.size()
                  << " skipped=" << result.skipped << " output=" << output
                  << std::endl;
    });

    auto* cmd_neg = app.add_subcommand(
        "prepare-negatives",
        "Sample negative sentences from encyclopedic articles (one per line)");
    cmd_neg->add_option("--input", input, "Articles file, one article per line")
        ->required();
    cmd_neg->add_option("--count", count, "Number of negatives to sample")
        ->required();
    cmd_neg->add_option("--output", output, "Output dataset TSV")->required();
    cmd_neg->add_option("--seed", seed, "Sampling seed");
    cmd_neg->add_option("--abbreviations", abbrev_path,
                        "Extra abbreviation list for the sentence splitter");
    cmd_neg->callback([&]() {
        auto articles = read_lines(input);
        auto splitter = make_splitter();
        auto d = wise::ingest_negatives(articles, count, splitter, seed);
        wise::save_tsv(d, output);
        std::cout << "prepare-negatives articles=" << articles.size()
                  << " sampled=" << d.size() << " seed=" << seed
                  << " output=" << output << std::endl;
    });

    auto* cmd_stats =
        app.add_subcommand("stats", "Print dataset statistics");
    cmd_stats->add_option("--input", input, "Dataset TSV")->required();
    cmd_stats->callback([&]() {
        auto d = wise::load_tsv(input);
        auto s = wise::dataset_stats(d);
        std::cout << "stats sentences=" << s.sentence_count
                  << " positives=" << s.positive_count
                  << " negatives=" << s.sentence_count - s.positive_count
                  << " vocabulary=" << s.vocabulary_size
                  << " tokens=" << s.token_count << std::endl;
    });

    auto* cmd_balance = app.add_subcommand(
        "balance", "Oversample the minority class to equal class counts");
    cmd_balance->add_option("--input", input, "Dataset TSV")->required();
    cmd_balance->add_option("--output", output, "Balanced dataset TSV")
        ->required();
    cmd_balance->add_option("--seed", seed, "Duplicate-order seed");
    cmd_balance->callback([&]() {
        auto d = wise::load_tsv(input);
        auto b = wise::balance_oversample(d, seed);
        wise::save_tsv(b, output);
        std::cout << "balance input=" << d.size() << " output=" << b.size()
                  << " positives=" << b.count_label(1)
                  << " negatives=" << b.count_label(0) << " output_path="
                  << output << std::endl;
    });

    // --- tagging ------------------------------------------------------

    auto* cmd_tagger = app.add_subcommand(
        "train-tagger", "Train the averaged-perceptron POS tagger");
    cmd_tagger->add_option("--input", input, "CoNLL token<TAB>tag corpus")
        ->required();
    cmd_tagger->add_option("--output", output, "Tagger model JSON")
        ->required();
    cmd_tagger->add_option("--epochs", epochs, "Training epochs");
    cmd_tagger->add_option("--seed", seed, "Shuffle seed");
    cmd_tagger->callback([&]() {
        auto corpus = wise::load_conll(input);
        auto model = wise::train_tagger(corpus, epochs, seed);
        model.save(output);
        std::cout << "train-tagger sentences=" << corpus.size()
                  << " epochs=" << epochs << " training_accuracy="
                  << model.training_accuracy << " output=" << output
                  << std::endl;
    });

    auto* cmd_posv = app.add_subcommand(
        "pos-version", "Replace every token with its predicted POS tag");
    cmd_posv->add_option("--input", input, "Dataset TSV")->required();
    cmd_posv->add_option("--tagger", tagger_path, "Tagger model JSON")
        ->required();
    cmd_posv->add_option("--output", output, "POS-version dataset TSV")
        ->required();
    cmd_posv->callback([&]() {
        auto d = wise::load_tsv(input);
        auto model = wise::TaggerModel::load(tagger_path);
        auto p = wise::to_pos_version(d, model);
        wise::save_tsv(p, output);
        std::cout << "pos-version sentences=" << p.size()
                  << " tagset=" << model.tagset().content_size()
                  << " output=" << output << std::endl;
    });

    // --- embeddings ---------------------------------------------------

    auto* cmd_vocab = app.add_subcommand(
        "build-vocab", "Frequency-ordered vocabulary of a dataset");
    cmd_vocab->add_option("--input", input, "Dataset TSV")->required();
    cmd_vocab->add_option("--output", output, "Vocabulary file, one token "
                                              "per line")->required();
    cmd_vocab->add_option("--min-count", min_count, "Minimum frequency");
    cmd_vocab->callback([&]() {
        auto d = wise::load_tsv(input);
        auto v = wise::build_vocab(d, min_count);
        std::ostringstream text;
        for (const auto& t : v.tokens()) text << t << "\n";
        write_text(output, text.str());
        std::cout << "build-vocab size=" << v.size()
                  << " min_count=" << min_count << " output=" << output
                  << std::endl;
    });

    auto* cmd_glove = app.add_subcommand(
        "train-glove", "Train GloVe embeddings on a dataset");
    cmd_glove->add_option("--input", input, "Corpus dataset TSV")->required();
    cmd_glove->add_option("--output", output, "Embedding text file")
        ->required();
    cmd_glove->add_option("--dim", dim, "Embedding dimension");
    cmd_glove->add_option("--window", window, "Co-occurrence window");
    cmd_glove->add_option("--epochs", epochs, "Training epochs");
    cmd_glove->add_option("--min-count", min_count, "Vocabulary cutoff");
    cmd_glove->add_option("--x-max", x_max, "Weighting cap");
    cmd_glove->add_option("--alpha", alpha, "Weighting exponent");
    cmd_glove->add_option("--glove-learning-rate", glove_lr,
                          "AdaGrad learning rate");
    cmd_glove->add_option("--seed", seed, "Init/shuffle seed");
    cmd_glove->callback([&]() {
        auto d = wise::load_tsv(input);
        auto vocab = wise::build_vocab(d, min_count);
        auto table = wise::count_cooccurrences(d, vocab, window);
        wise::GloveConfig gc;
        gc.dim = dim;
        gc.epochs = epochs;
        gc.x_max = x_max;
        gc.alpha = alpha;
        gc.learning_rate = glove_lr;
        gc.seed = seed;
        auto result = wise::train_glove(table, vocab, gc);
        wise::save_embeddings(result.embeddings, output);
        std::cout << "train-glove vocab=" << vocab.size()
                  << " cells=" << table.size()
                  << " initial_objective=" << result.epoch_objective.front()
                  << " final_objective=" << result.epoch_objective.back()
                  << " output=" << output << std::endl;
    });

    // --- classifier ---------------------------------------------------

    auto* cmd_train = app.add_subcommand(
        "train-classifier", "Train the LSTM classifier from scratch");
    cmd_train->add_option("--train", train_path, "Training dataset TSV")
        ->required();
    cmd_train->add_option("--output", output, "Checkpoint path")->required();
    cmd_train->add_option("--embeddings", embeddings_path,
                          "Initial embedding text file (vocabulary source)");
    cmd_train->add_option("--dim", dim, "Embedding dimension (random init)");
    cmd_train->add_option("--min-count", min_count,
                          "Vocabulary cutoff (random init)");
    cmd_train->add_option("--lstm1", lstm1, "First LSTM layer size");
    cmd_train->add_option("--lstm2", lstm2, "Second LSTM layer size");
    cmd_train->add_option("--lstm3", lstm3, "Third LSTM layer size");
    cmd_train->add_option("--epochs", epochs, "Training epochs");
    cmd_train->add_option("--batch-size", batch_size, "Batch size");
    cmd_train->add_option("--learning-rate", learning_rate, "Adam step size");
    cmd_train->add_option("--l2", l2, "L2 penalty on LSTM weight matrices");
    cmd_train->add_option("--max-seq-len", max_seq_len, "Truncation length");
    cmd_train->add_option("--seed", seed, "Model init seed");
    cmd_train->add_option("--shuffle-seed", shuffle_seed, "Epoch shuffle seed");
    cmd_train->add_option("--phase", phase, "Phase name recorded in the "
                                            "checkpoint");
    cmd_train->add_flag("--freeze-embeddings", freeze_embeddings,
                        "Do not update the embedding layer");
    cmd_train->add_flag("--verbose", verbose, "Per-epoch log lines");
    cmd_train->callback([&]() {
        auto d = wise::load_tsv(train_path);
        wise::ClassifierModel m = [&]() {
            if (!embeddings_path.empty()) {
                auto init = wise::load_embeddings(embeddings_path);
                dim = init.dim;
                auto cfg = make_model_config(init.vocab);
                return wise::build_model(cfg, &init);
            }
            auto cfg = make_model_config(wise::build_vocab(d, min_count));
            return wise::build_model(cfg);
        }();
        auto history = wise::train(m, d, make_train_config());
        wise::save_model(m, output);
        std::cout << "train-classifier sentences=" << d.size()
                  << " epochs=" << history.size() << " final_loss="
                  << (history.empty() ? 0.0 : history.back().loss)
                  << " final_accuracy="
                  << (history.empty() ? 0.0 : history.back().accuracy)
                  << " output=" << output << std::endl;
    });

    auto* cmd_ft = app.add_subcommand(
        "fine-tune", "Continue training a checkpoint on a second dataset");
    cmd_ft->add_option("--model", model_path, "Input checkpoint")->required();
    cmd_ft->add_option("--train", train_path, "Fine-tuning dataset TSV")
        ->required();
    cmd_ft->add_option("--output", output, "Output checkpoint")->required();
    cmd_ft->add_option("--epochs", epochs, "Training epochs");
    cmd_ft->add_option("--batch-size", batch_size, "Batch size");
    cmd_ft->add_option("--learning-rate", learning_rate, "Adam step size");
    cmd_ft->add_option("--shuffle-seed", shuffle_seed, "Epoch shuffle seed");
    cmd_ft->add_option("--phase", phase, "Phase name recorded in the "
                                         "checkpoint");
    cmd_ft->add_flag("--verbose", verbose, "Per-epoch log lines");
    cmd_ft->callback([&]() {
        auto m = wise::load_model(model_path);
        auto d = wise::load_tsv(train_path);
        auto history = wise::fine_tune(m, d, make_train_config());
        wise::save_model(m, output);
        std::cout << "fine-tune sentences=" << d.size()
                  << " epochs=" << history.size() << " final_loss="
                  << (history.empty() ? 0.0 : history.back().loss)
                  << " output=" << output << std::endl;
    });

    auto* cmd_extract = app.add_subcommand(
        "extract-embeddings",
        "Write a checkpoint's embedding layer as a text embedding file");
    cmd_extract->add_option("--model", model_path, "Checkpoint")->required();
    cmd_extract->add_option("--output", output, "Embedding text file")
        ->required();
    cmd_extract->callback([&]() {
        auto m = wise::load_model(model_path);
        auto e = wise::extract_embedding_layer(m);
        wise::save_embeddings(e, output);
        std::cout << "extract-embeddings vocab=" << e.vocab.size()
                  << " dim=" << e.dim << " output=" << output << std::endl;
    });

    // --- subsampling and evaluation -----------------------------------

    auto* cmd_sub = app.add_subcommand(
        "subsample", "Semantic subsample of a silver corpus toward a test "
                     "set");
    cmd_sub->add_option("--wiki", wiki_path, "Silver corpus TSV")->required();
    cmd_sub->add_option("--test", test_path, "Test dataset TSV")->required();
    cmd_sub->add_option("--embeddings", embeddings_path,
                        "Similarity embedding text file")->required();
    cmd_sub->add_option("--output", output, "Subsample dataset TSV")
        ->required();
    cmd_sub->add_option("--fraction", fraction, "Kept fraction per class");
    cmd_sub->add_option("--report", report_path, "key=value report path");
    cmd_sub->callback([&]() {
        auto wiki = wise::load_tsv(wiki_path);
        auto test = wise::load_tsv(test_path);
        auto e = wise::load_embeddings(embeddings_path);
        auto r = wise::semantic_subsample(wiki, test, e, fraction);
        wise::save_tsv(r.dataset, output);
        if (!report_path.empty()) write_text(report_path, r.report.to_text());
        std::cout << "subsample fraction=" << fraction
                  << " selected_positive=" << r.report.selected_positive
                  << " selected_negative=" << r.report.selected_negative
                  << " output=" << output << std::endl;
    });

    auto* cmd_eval = app.add_subcommand(
        "evaluate", "Positive-class P/R/F1 of a checkpoint on a test set");
    cmd_eval->add_option("--model", model_path, "Checkpoint")->required();
    cmd_eval->add_option("--test", test_path, "Test dataset TSV")->required();
    cmd_eval->add_option("--csv", csv_path, "Report CSV path");
    cmd_eval->callback([&]() {
        auto m = wise::load_model(model_path);
        auto test = wise::load_tsv(test_path);
        auto r = wise::evaluate(m, test);
        r.model = model_path;
        r.dataset = test_path;
        if (!csv_path.empty()) {
            write_text(csv_path,
                       wise::EvalReport::csv_header() + "\n" + r.csv_row() +
                           "\n");
        }
        std::cout << "P=" << r.precision << " R=" << r.recall
                  << " F1=" << r.f1 << " tp=" << r.tp << " fp=" << r.fp
                  << " fn=" << r.fn << " tn=" << r.tn << std::endl;
    });

    // --- experiment orchestration --------------------------------------

    auto add_registry_options = [&](CLI::App* cmd) {
        cmd->add_option("--dataset", dataset_specs,
                        "Registry dataset as name=path (repeatable)");
        cmd->add_option("--embedding", embedding_specs,
                        "Registry embedding as name=path (repeatable)");
        cmd->add_option("--test-set", test_sets,
                        "Registry name of a test set (repeatable)");
        cmd->add_option("--approach", approach,
                        "direct-train | embedding-transfer | pos-direct");
        cmd->add_option("--variant", variant,
                        "wiki | wiki+gold | subsample | subsample+gold | "
                        "gold-only");
        cmd->add_option("--embedding-source", embedding_source,
                        "pretrained | wise_w | wise_p | glove_wiki_p | "
                        "concat | random");
        cmd->add_option("--dim", dim, "Embedding dimension");
        cmd->add_option("--lstm1", lstm1, "First LSTM layer size");
        cmd->add_option("--lstm2", lstm2, "Second LSTM layer size");
        cmd->add_option("--lstm3", lstm3, "Third LSTM layer size");
        cmd->add_option("--epochs", epochs, "Training epochs");
        cmd->add_option("--batch-size", batch_size, "Batch size");
        cmd->add_option("--learning-rate", learning_rate, "Adam step size");
        cmd->add_option("--l2", l2, "L2 penalty");
        cmd->add_option("--max-seq-len", max_seq_len, "Truncation length");
        cmd->add_option("--min-count", min_count, "Vocabulary cutoff");
        cmd->add_option("--fraction", fraction, "Subsample fraction");
        cmd->add_option("--seed", seed, "Model init seed");
        cmd->add_option("--shuffle-seed", shuffle_seed, "Epoch shuffle seed");
    };

    auto* cmd_exp = app.add_subcommand(
        "run-experiment", "Run one experiment grid cell end to end");
    add_registry_options(cmd_exp);
    cmd_exp->add_option("--csv", csv_path, "Report CSV path");
    cmd_exp->callback([&]() {
        auto reg = build_registry();
        auto spec = make_experiment_spec();
        auto reports = wise::run_experiment(spec, reg);
        if (!csv_path.empty()) {
            std::ostringstream csv;
            csv << wise::EvalReport::csv_header() << "\n";
            for (const auto& r : reports) csv << r.csv_row() << "\n";
            write_text(csv_path, csv.str());
        }
        std::cout << wise::format_report_table(reports);
        std::cout << "run-experiment spec=" << spec.descriptor()
                  << " reports=" << reports.size() << std::endl;
    });

    auto* cmd_curve = app.add_subcommand(
        "learning-curve", "Evaluate nested training-set subsets of rising "
                          "size");
    add_registry_options(cmd_curve);
    cmd_curve->add_option("--sizes", sizes_csv,
                          "Comma-separated ascending subset sizes")
        ->required();
    cmd_curve->add_option("--csv", csv_path, "Curve CSV path");
    cmd_curve->callback([&]() {
        auto reg = build_registry();
        auto spec = make_experiment_spec();
        auto points =
            wise::learning_curve(spec, reg, parse_sizes(sizes_csv), seed);
        std::ostringstream csv;
        csv << "size,precision,recall,f1\n";
        for (const auto& p : points) {
            csv << p.size << "," << p.precision << "," << p.recall << ","
                << p.f1 << "\n";
        }
        if (!csv_path.empty()) write_text(csv_path, csv.str());
        std::cout << csv.str();
        std::cout << "learning-curve points=" << points.size() << std::endl;
    });

    auto* cmd_proj = app.add_subcommand(
        "project", "t-SNE projection of a checkpoint's sentence "
                   "representations");
    cmd_proj->add_option("--model", model_path, "Checkpoint")->required();
    cmd_proj->add_option("--input", input, "Dataset TSV to project")
        ->required();
    cmd_proj->add_option("--output", output, "Projection CSV (x,y,label)")
        ->required();
    cmd_proj->add_option("--perplexity", perplexity, "t-SNE perplexity");
    cmd_proj->add_option("--iterations", iterations, "Gradient steps");
    cmd_proj->add_option("--seed", seed, "Init seed");
    cmd_proj->callback([&]() {
        auto m = wise::load_model(model_path);
        auto d = wise::load_tsv(input);
        std::vector<std::vector<double>> reps;
        std::vector<int> labels;
        for (const auto& s : d.sentences) {
            reps.push_back(wise::sentence_representation(
                m, wise::to_ids(s.tokens, m.config.vocab)));
            labels.push_back(s.label);
        }
        wise::TsneConfig tc;
        tc.perplexity = perplexity;
        tc.iterations = iterations;
        tc.seed = seed;
        auto pts = wise::tsne_project(reps, tc);
        wise::export_projection(pts, labels, output);
        std::cout << "project points=" << pts.size()
                  << " perplexity=" << perplexity << " output=" << output
                  << std::endl;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
