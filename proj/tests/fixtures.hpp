#pragma once

// Shared synthetic fixtures for the test suites.

#include <string>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/embedding.hpp"
#include "wise/rng.hpp"
#include "wise/tagger.hpp"
#include "wise/text.hpp"

namespace fixtures {

inline const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> words = {
        "the",   "hotel",  "room",    "staff",   "city",   "view",
        "price", "dinner", "morning", "station", "window", "street",
        "floor", "lobby",  "garden",  "coffee",  "market", "museum",
        "beach", "train"};
    return words;
}

// Keyword-separable dataset: positives contain "recommend", negatives never
// do. Sentence length 4-8 filler tokens.
inline wise::Dataset keyword_dataset(size_t positives, size_t negatives,
                                     uint64_t seed,
                                     const std::string& name = "toy") {
    wise::Rng rng(seed);
    const auto& words = filler_words();
    wise::Dataset d;
    d.name = name;
    auto make = [&](int label) {
        wise::LabeledSentence s;
        s.label = label;
        s.domain = "synthetic";
        size_t len = 4 + rng.next_index(5);
        for (size_t i = 0; i < len; ++i) {
            s.tokens.push_back(words[rng.next_index(words.size())]);
        }
        if (label == 1) {
            s.tokens[rng.next_index(s.tokens.size())] = "recommend";
        }
        s.text = wise::join_tokens(s.tokens);
        return s;
    };
    for (size_t i = 0; i < positives; ++i) d.sentences.push_back(make(1));
    for (size_t i = 0; i < negatives; ++i) d.sentences.push_back(make(0));
    return d;
}

// Small corpus with Zipf-ish token draws, roughly `tokens` tokens total.
inline wise::Dataset zipf_corpus(size_t tokens, uint64_t seed) {
    wise::Rng rng(seed);
    const auto& words = filler_words();
    wise::Dataset d;
    d.name = "zipf";
    size_t emitted = 0;
    while (emitted < tokens) {
        wise::LabeledSentence s;
        s.label = static_cast<int>(rng.next_index(2));
        s.domain = "synthetic";
        size_t len = 5 + rng.next_index(8);
        for (size_t i = 0; i < len; ++i) {
            // Skewed distribution: low indices much more frequent.
            size_t a = rng.next_index(words.size());
            size_t b = rng.next_index(words.size());
            s.tokens.push_back(words[std::min(a, b)]);
        }
        s.text = wise::join_tokens(s.tokens);
        emitted += len;
        d.sentences.push_back(std::move(s));
    }
    return d;
}

// Deterministic tiny embedding table over the filler vocabulary.
inline wise::EmbeddingMatrix toy_embeddings(size_t dim, uint64_t seed) {
    wise::Vocabulary v;
    for (const auto& w : filler_words()) v.add(w);
    v.add("recommend");
    wise::EmbeddingMatrix e = wise::EmbeddingMatrix::zeros(v, dim);
    wise::Rng rng(seed);
    for (auto& x : e.data) x = rng.uniform(-1.0, 1.0);
    return e;
}

// A tiny consistent tagging corpus for averaged-perceptron tests.
inline std::vector<wise::TaggedSentence> tiny_tagged_corpus() {
    using TS = wise::TaggedSentence;
    return {
        TS{{"the", "DT"}, {"cat", "NN"}, {"sat", "VBD"}},
        TS{{"the", "DT"}, {"dog", "NN"}, {"ran", "VBD"}},
        TS{{"a", "DT"}, {"cat", "NN"}, {"ran", "VBD"}, {"quickly", "RB"}},
        TS{{"book", "VB"}, {"a", "DT"}, {"room", "NN"}},
        TS{{"be", "VB"}, {"sure", "JJ"}, {"to", "TO"}, {"book", "VB"}},
    };
}

}  // namespace fixtures
