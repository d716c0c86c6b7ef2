#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/embedding.hpp"
#include "wise/eval.hpp"
#include "wise/nn.hpp"
#include "wise/subsample.hpp"

namespace wise {

// Read-only store of named datasets and embeddings an experiment draws
// from. Missing entries are reported by name.
class Registry {
public:
    void add_dataset(const std::string& name, Dataset d);
    void add_embedding(const std::string& name, EmbeddingMatrix e);
    const Dataset& dataset(const std::string& name) const;
    const EmbeddingMatrix& embedding(const std::string& name) const;
    bool has_dataset(const std::string& name) const;
    bool has_embedding(const std::string& name) const;

private:
    std::map<std::string, Dataset> datasets_;
    std::map<std::string, EmbeddingMatrix> embeddings_;
};

enum class Approach { DirectTrain, EmbeddingTransfer, PosDirect };
enum class TrainVariant { Wiki, WikiPlusGold, Subsample, SubsamplePlusGold,
                          GoldOnly };
enum class EmbeddingSource { Pretrained, WiseW, WiseP, GloveWikiP, Concat,
                             RandomInit };

struct ExperimentSpec {
    Approach approach = Approach::DirectTrain;
    TrainVariant variant = TrainVariant::GoldOnly;
    EmbeddingSource embedding = EmbeddingSource::Pretrained;

    // Registry entry names. POS-typed runs read "<name><pos_suffix>".
    std::string wiki_dataset = "wiki";
    std::string gold_dataset = "gold";
    std::vector<std::string> test_sets;
    std::string pretrained_embedding = "pretrained";
    std::string pos_suffix = "_pos";

    size_t embedding_dim = 100;
    std::array<size_t, 3> lstm_sizes{100, 50, 20};
    double l2_lambda = 1e-4;
    size_t max_seq_len = 100;
    size_t min_count = 1;
    double subsample_fraction = 0.01;
    TrainConfig train;  // epochs, batch size, lr, shuffle seed
    uint64_t seed = 1;  // model init seed

    std::string descriptor() const;
};

// Executes the named pipeline end to end (build -> train [-> fine-tune]
// -> evaluate) and emits one report per test set.
std::vector<EvalReport> run_experiment(const ExperimentSpec& spec,
                                       const Registry& registry);

struct CurvePoint {
    size_t size = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Trains on nested balanced random subsets of the spec's training dataset
// and evaluates on the spec's first test set. Subsets are nested: the
// size-a subset is contained in the size-b subset for a < b.
std::vector<CurvePoint> learning_curve(const ExperimentSpec& spec,
                                       const Registry& registry,
                                       const std::vector<size_t>& sizes,
                                       uint64_t seed);

// Balanced nested subset helper (exposed for the nesting property test).
Dataset nested_subset(const Dataset& d, size_t size, uint64_t seed);

std::string format_report_table(const std::vector<EvalReport>& reports);

}  // namespace wise
