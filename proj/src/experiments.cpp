#include "wise/experiments.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wise/glove.hpp"
#include "wise/rng.hpp"
#include "wise/text.hpp"

namespace wise {

void Registry::add_dataset(const std::string& name, Dataset d) {
    datasets_[name] = std::move(d);
}

void Registry::add_embedding(const std::string& name, EmbeddingMatrix e) {
    embeddings_[name] = std::move(e);
}

const Dataset& Registry::dataset(const std::string& name) const {
    auto it = datasets_.find(name);
    if (it == datasets_.end()) {
        throw std::runtime_error("registry: missing dataset '" + name + "'");
    }
    return it->second;
}

const EmbeddingMatrix& Registry::embedding(const std::string& name) const {
    auto it = embeddings_.find(name);
    if (it == embeddings_.end()) {
        throw std::runtime_error("registry: missing embedding '" + name + "'");
    }
    return it->second;
}

bool Registry::has_dataset(const std::string& name) const {
    return datasets_.count(name) != 0;
}

bool Registry::has_embedding(const std::string& name) const {
    return embeddings_.count(name) != 0;
}

namespace {

const char* approach_name(Approach a) {
    switch (a) {
        case Approach::DirectTrain: return "direct-train";
        case Approach::EmbeddingTransfer: return "embedding-transfer";
        case Approach::PosDirect: return "pos-direct";
    }
    return "?";
}

const char* variant_name(TrainVariant v) {
    switch (v) {
        case TrainVariant::Wiki: return "wiki";
        case TrainVariant::WikiPlusGold: return "wiki+gold";
        case TrainVariant::Subsample: return "subsample";
        case TrainVariant::SubsamplePlusGold: return "subsample+gold";
        case TrainVariant::GoldOnly: return "gold-only";
    }
    return "?";
}

const char* embedding_name(EmbeddingSource e) {
    switch (e) {
        case EmbeddingSource::Pretrained: return "pretrained";
        case EmbeddingSource::WiseW: return "wise_w";
        case EmbeddingSource::WiseP: return "wise_p";
        case EmbeddingSource::GloveWikiP: return "glove_wiki_p";
        case EmbeddingSource::Concat: return "concat";
        case EmbeddingSource::RandomInit: return "random";
    }
    return "?";
}

ModelConfig make_config(const ExperimentSpec& spec, Vocabulary vocab) {
    ModelConfig cfg;
    cfg.embedding_dim = spec.embedding_dim;
    cfg.vocab = std::move(vocab);
    cfg.lstm_sizes = spec.lstm_sizes;
    cfg.l2_lambda = spec.l2_lambda;
    cfg.max_seq_len = spec.max_seq_len;
    cfg.seed = spec.seed;
    return cfg;
}

// Trains a classifier from random-init embeddings on `corpus` and returns
// its embedding layer (the WiSE extraction path).
EmbeddingMatrix train_wise(const ExperimentSpec& spec, const Dataset& corpus) {
    ModelConfig cfg = make_config(spec, build_vocab(corpus, spec.min_count));
    ClassifierModel m = build_model(cfg);
    TrainConfig tc = spec.train;
    tc.phase = "wise";
    train(m, corpus, tc);
    return extract_embedding_layer(m);
}

// Word+POS pair dataset: tokens become "word|tag" so a single embedding
// table can carry the concatenated lookup.
Dataset pair_dataset(const Dataset& words, const Dataset& pos) {
    if (words.size() != pos.size()) {
        throw std::runtime_error("pair_dataset: word/POS size mismatch for " +
                                 words.name);
    }
    Dataset out;
    out.name = words.name + "-pairs";
    out.sentences.reserve(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
        const auto& w = words.sentences[i];
        const auto& p = pos.sentences[i];
        if (w.tokens.size() != p.tokens.size()) {
            throw std::runtime_error("pair_dataset: token/tag length mismatch "
                                     "in sentence " + std::to_string(i));
        }
        LabeledSentence s;
        s.label = w.label;
        s.domain = w.domain;
        s.tokens.reserve(w.tokens.size());
        for (size_t t = 0; t < w.tokens.size(); ++t) {
            s.tokens.push_back(w.tokens[t] + "|" + p.tokens[t]);
        }
        s.text = join_tokens(s.tokens);
        out.sentences.push_back(std::move(s));
    }
    return out;
}

EmbeddingMatrix materialize_composite(const CompositeEmbedding& comp,
                                      const std::vector<Dataset*>& corpora) {
    Vocabulary vocab;
    for (const Dataset* d : corpora) {
        for (const auto& s : d->sentences) {
            for (const auto& t : s.tokens) vocab.add(t);
        }
    }
    EmbeddingMatrix e = EmbeddingMatrix::zeros(vocab, comp.dim());
    for (size_t i = 0; i < vocab.size(); ++i) {
        const std::string& pair = vocab.token(i);
        auto bar = pair.rfind('|');
        std::string word = bar == std::string::npos ? pair : pair.substr(0, bar);
        std::string tag =
            bar == std::string::npos ? std::string() : pair.substr(bar + 1);
        auto v = comp.lookup(word, tag);
        std::copy(v.begin(), v.end(), e.row(i));
    }
    return e;
}

struct Prepared {
    EmbeddingMatrix init;       // classifier init embeddings
    Dataset gold;               // training gold set in model token space
    std::vector<Dataset> tests; // test sets in model token space
    Dataset wiki;               // wiki corpus in model token space
};

Prepared prepare_embedding_transfer(const ExperimentSpec& spec,
                                    const Registry& reg) {
    Prepared p;
    auto pos_name = [&spec](const std::string& n) { return n + spec.pos_suffix; };
    switch (spec.embedding) {
        case EmbeddingSource::Pretrained:
            p.init = reg.embedding(spec.pretrained_embedding);
            p.gold = reg.dataset(spec.gold_dataset);
            for (const auto& t : spec.test_sets) p.tests.push_back(reg.dataset(t));
            break;
        case EmbeddingSource::WiseW:
            p.init = train_wise(spec, reg.dataset(spec.wiki_dataset));
            p.gold = reg.dataset(spec.gold_dataset);
            for (const auto& t : spec.test_sets) p.tests.push_back(reg.dataset(t));
            break;
        case EmbeddingSource::WiseP:
            p.init = train_wise(spec, reg.dataset(pos_name(spec.wiki_dataset)));
            p.gold = reg.dataset(pos_name(spec.gold_dataset));
            for (const auto& t : spec.test_sets)
                p.tests.push_back(reg.dataset(pos_name(t)));
            break;
        case EmbeddingSource::GloveWikiP: {
            const Dataset& wiki_pos = reg.dataset(pos_name(spec.wiki_dataset));
            Vocabulary vocab = build_vocab(wiki_pos, spec.min_count);
            GloveConfig gc;
            gc.dim = spec.embedding_dim;
            gc.seed = spec.seed;
            auto table = count_cooccurrences(wiki_pos, vocab, 5);
            p.init = train_glove(table, vocab, gc).embeddings;
            p.gold = reg.dataset(pos_name(spec.gold_dataset));
            for (const auto& t : spec.test_sets)
                p.tests.push_back(reg.dataset(pos_name(t)));
            break;
        }
        case EmbeddingSource::Concat: {
            CompositeEmbedding comp;
            comp.word_part = reg.embedding(spec.pretrained_embedding);
            comp.pos_part = train_wise(spec, reg.dataset(pos_name(spec.wiki_dataset)));
            p.gold = pair_dataset(reg.dataset(spec.gold_dataset),
                                  reg.dataset(pos_name(spec.gold_dataset)));
            for (const auto& t : spec.test_sets) {
                p.tests.push_back(
                    pair_dataset(reg.dataset(t), reg.dataset(pos_name(t))));
            }
            std::vector<Dataset*> corpora{&p.gold};
            for (auto& t : p.tests) corpora.push_back(&t);
            p.init = materialize_composite(comp, corpora);
            break;
        }
        case EmbeddingSource::RandomInit:
            throw std::runtime_error(
                "embedding-transfer requires a concrete embedding source");
    }
    return p;
}

}  // namespace

std::string ExperimentSpec::descriptor() const {
    std::ostringstream out;
    out << approach_name(approach) << "/" << variant_name(variant) << "/"
        << embedding_name(embedding) << "/dim" << embedding_dim << "/seed"
        << seed;
    return out.str();
}

std::vector<EvalReport> run_experiment(const ExperimentSpec& spec,
                                       const Registry& reg) {
    if (spec.test_sets.empty()) {
        throw std::runtime_error("run_experiment: no test sets named");
    }
    std::vector<EvalReport> reports;
    auto finish = [&](EvalReport r, const std::string& test_name) {
        r.model = spec.descriptor();
        r.dataset = test_name;
        reports.push_back(std::move(r));
    };

    switch (spec.approach) {
        case Approach::DirectTrain: {
            // Approach 1: pretrained vectors, variants of the training data.
            const EmbeddingMatrix* init = nullptr;
            if (spec.embedding == EmbeddingSource::Pretrained) {
                init = &reg.embedding(spec.pretrained_embedding);
            }
            Vocabulary vocab;
            if (init) {
                vocab = init->vocab;
            } else {
                vocab = build_vocab(reg.dataset(spec.variant == TrainVariant::GoldOnly
                                                    ? spec.gold_dataset
                                                    : spec.wiki_dataset),
                                    spec.min_count);
            }
            auto build = [&]() {
                ModelConfig cfg = make_config(spec, vocab);
                return build_model(cfg, init);
            };
            bool per_test = spec.variant == TrainVariant::Subsample ||
                            spec.variant == TrainVariant::SubsamplePlusGold;
            if (!per_test) {
                ClassifierModel m = build();
                TrainConfig tc = spec.train;
                if (spec.variant == TrainVariant::GoldOnly) {
                    tc.phase = "gold";
                    train(m, reg.dataset(spec.gold_dataset), tc);
                } else {
                    tc.phase = "wiki";
                    train(m, reg.dataset(spec.wiki_dataset), tc);
                    if (spec.variant == TrainVariant::WikiPlusGold) {
                        TrainConfig ft = spec.train;
                        ft.phase = "gold";
                        fine_tune(m, reg.dataset(spec.gold_dataset), ft);
                    }
                }
                for (const auto& t : spec.test_sets) {
                    finish(evaluate(m, reg.dataset(t)), t);
                }
            } else {
                // The subsample depends on the test set; train per test.
                const EmbeddingMatrix& sim =
                    reg.embedding(spec.pretrained_embedding);
                for (const auto& t : spec.test_sets) {
                    auto sub = semantic_subsample(reg.dataset(spec.wiki_dataset),
                                                  reg.dataset(t), sim,
                                                  spec.subsample_fraction);
                    ClassifierModel m = build();
                    TrainConfig tc = spec.train;
                    tc.phase = "wiki-subsample";
                    train(m, sub.dataset, tc);
                    if (spec.variant == TrainVariant::SubsamplePlusGold) {
                        TrainConfig ft = spec.train;
                        ft.phase = "gold";
                        fine_tune(m, reg.dataset(spec.gold_dataset), ft);
                    }
                    finish(evaluate(m, reg.dataset(t)), t);
                }
            }
            break;
        }
        case Approach::EmbeddingTransfer: {
            // Approach 2: embeddings carry the distant supervision; the
            // classifier itself trains on gold only.
            Prepared p = prepare_embedding_transfer(spec, reg);
            ModelConfig cfg = make_config(spec, p.init.vocab);
            cfg.embedding_dim = p.init.dim;
            ClassifierModel m = build_model(cfg, &p.init);
            TrainConfig tc = spec.train;
            tc.phase = "gold";
            train(m, p.gold, tc);
            for (size_t i = 0; i < p.tests.size(); ++i) {
                finish(evaluate(m, p.tests[i]), spec.test_sets[i]);
            }
            break;
        }
        case Approach::PosDirect: {
            // Train on the POS-version wiki corpus, evaluate on POS-version
            // test sets (random-init embeddings over the tagset).
            auto pos_name = [&spec](const std::string& n) {
                return n + spec.pos_suffix;
            };
            const Dataset& wiki_pos = reg.dataset(pos_name(spec.wiki_dataset));
            Vocabulary vocab = build_vocab(wiki_pos, spec.min_count);
            ModelConfig cfg = make_config(spec, vocab);
            ClassifierModel m = build_model(cfg);
            TrainConfig tc = spec.train;
            tc.phase = "wiki-pos";
            train(m, wiki_pos, tc);
            for (const auto& t : spec.test_sets) {
                finish(evaluate(m, reg.dataset(pos_name(t))), t);
            }
            break;
        }
    }
    return reports;
}

Dataset nested_subset(const Dataset& d, size_t size, uint64_t seed) {
    if (size > d.size()) {
        throw std::runtime_error("nested_subset: size " + std::to_string(size) +
                                 " exceeds dataset size " +
                                 std::to_string(d.size()));
    }
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < d.size(); ++i) {
        (d.sentences[i].label == 1 ? pos : neg).push_back(i);
    }
    size_t half = size / 2;
    size_t want_pos = half, want_neg = size - half;
    if (want_pos > pos.size() || want_neg > neg.size()) {
        throw std::runtime_error("nested_subset: not enough sentences per "
                                 "class for a balanced subset of " +
                                 std::to_string(size));
    }
    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    std::vector<size_t> chosen(pos.begin(), pos.begin() + want_pos);
    chosen.insert(chosen.end(), neg.begin(), neg.begin() + want_neg);
    std::sort(chosen.begin(), chosen.end());  // original order preserved
    Dataset out;
    out.name = d.name + "-n" + std::to_string(size);
    for (size_t i : chosen) out.sentences.push_back(d.sentences[i]);
    return out;
}

std::vector<CurvePoint> learning_curve(const ExperimentSpec& spec,
                                       const Registry& reg,
                                       const std::vector<size_t>& sizes,
                                       uint64_t seed) {
    if (sizes.empty()) throw std::runtime_error("learning_curve: no sizes");
    if (spec.test_sets.empty()) {
        throw std::runtime_error("learning_curve: no test sets named");
    }
    std::set<size_t> unique(sizes.begin(), sizes.end());
    if (unique.size() != sizes.size()) {
        throw std::runtime_error("learning_curve: duplicate sizes rejected");
    }
    if (!std::is_sorted(sizes.begin(), sizes.end())) {
        throw std::runtime_error("learning_curve: sizes must be ascending");
    }
    const std::string train_name = spec.variant == TrainVariant::GoldOnly
                                       ? spec.gold_dataset
                                       : spec.wiki_dataset;
    const Dataset& full = reg.dataset(train_name);

    std::vector<CurvePoint> points;
    for (size_t size : sizes) {
        Dataset subset = nested_subset(full, size, seed);
        Registry sub_reg = reg;
        sub_reg.add_dataset(train_name, std::move(subset));
        ExperimentSpec sub_spec = spec;
        sub_spec.test_sets = {spec.test_sets.front()};
        auto reports = run_experiment(sub_spec, sub_reg);
        CurvePoint cp;
        cp.size = size;
        cp.precision = reports[0].precision;
        cp.recall = reports[0].recall;
        cp.f1 = reports[0].f1;
        points.push_back(cp);
    }
    return points;
}

std::string format_report_table(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    size_t wmodel = 5, wtest = 8;
    for (const auto& r : reports) {
        wmodel = std::max(wmodel, r.model.size());
        wtest = std::max(wtest, r.dataset.size());
    }
    out << std::left << std::setw(static_cast<int>(wmodel) + 2) << "model"
        << std::setw(static_cast<int>(wtest) + 2) << "test_set"
        << std::right << std::setw(8) << "P" << std::setw(8) << "R"
        << std::setw(8) << "F1" << std::setw(7) << "tp" << std::setw(7) << "fp"
        << std::setw(7) << "fn" << std::setw(7) << "tn" << "\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& r : reports) {
        out << std::left << std::setw(static_cast<int>(wmodel) + 2) << r.model
            << std::setw(static_cast<int>(wtest) + 2) << r.dataset
            << std::right << std::setw(8) << r.precision << std::setw(8)
            << r.recall << std::setw(8) << r.f1 << std::setw(7) << r.tp
            << std::setw(7) << r.fp << std::setw(7) << r.fn << std::setw(7)
            << r.tn << "\n";
    }
    return out.str();
}

}  // namespace wise
