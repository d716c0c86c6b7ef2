#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/embedding.hpp"

namespace wise {

// Sparse symmetric co-occurrence counts keyed by (row id, col id).
class CooccurrenceTable {
public:
    static uint64_t key(uint32_t i, uint32_t j) {
        return (static_cast<uint64_t>(i) << 32) | j;
    }

    void add(uint32_t i, uint32_t j, double w) { counts_[key(i, j)] += w; }
    double get(uint32_t i, uint32_t j) const {
        auto it = counts_.find(key(i, j));
        return it == counts_.end() ? 0.0 : it->second;
    }
    size_t size() const { return counts_.size(); }
    const std::unordered_map<uint64_t, double>& entries() const {
        return counts_;
    }

private:
    std::unordered_map<uint64_t, double> counts_;
};

// Symmetric-window counts: each in-sentence pair at distance d <= window
// contributes 1/d from both sides. Sentences do not cross-contaminate;
// out-of-vocabulary tokens participate as <unk>.
CooccurrenceTable count_cooccurrences(const Dataset& corpus,
                                      const Vocabulary& vocab, size_t window);

struct GloveConfig {
    size_t dim = 50;
    double x_max = 100.0;
    double alpha = 0.75;
    int epochs = 25;
    double learning_rate = 0.05;
    uint64_t seed = 1;
};

struct GloveResult {
    EmbeddingMatrix embeddings;          // main + context vectors summed
    std::vector<double> epoch_objective; // full-pass weighted objective,
                                         // index 0 = before training
};

// Weighted least squares fit of log co-occurrence, AdaGrad over shuffled
// nonzero cells. Deterministic given the seed.
GloveResult train_glove(const CooccurrenceTable& table,
                        const Vocabulary& vocab, const GloveConfig& cfg);

// Weighting function f(x) = (x/x_max)^alpha capped at 1.
double glove_weight(double x, double x_max, double alpha);

}  // namespace wise
