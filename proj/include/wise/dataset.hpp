#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wise {

// One sentence with a binary suggestion label and a domain tag: the unit
// of every dataset in the toolkit.
struct LabeledSentence {
    std::string text;                 // raw sentence
    std::vector<std::string> tokens;  // filled after tokenization
    int label = 0;                    // 1 = suggestion, 0 = non-suggestion
    std::string domain;

    bool operator==(const LabeledSentence&) const = default;
};

struct Dataset {
    std::string name;
    std::vector<LabeledSentence> sentences;

    size_t size() const { return sentences.size(); }
    size_t count_label(int label) const;

    bool operator==(const Dataset&) const = default;
};

struct DatasetStats {
    size_t sentence_count = 0;
    size_t positive_count = 0;
    size_t vocabulary_size = 0;  // distinct tokens
    size_t token_count = 0;      // total tokens
};

// Tokenizes any sentence whose token list is empty (word tokenizer).
void ensure_tokenized(Dataset& d);

DatasetStats dataset_stats(const Dataset& d);

// Duplicates minority-class sentences (cycling through the seed-shuffled
// minority list) until class counts are equal. Originals keep their order;
// duplicates are appended.
Dataset balance_oversample(const Dataset& d, uint64_t seed);

// TSV: label <TAB> domain <TAB> text, no header. Tabs inside text are
// normalized to spaces on save; tokens are stored as the space-joined
// text column and recovered by whitespace splitting on load.
void save_tsv(const Dataset& d, const std::string& path);
Dataset load_tsv(const std::string& path);

}  // namespace wise
