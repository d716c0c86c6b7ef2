#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wise/dataset.hpp"

namespace wise {

inline constexpr const char* kUnkTag = "UNK_TAG";
inline constexpr const char* kPadTag = "PAD_TAG";

// Ordered inventory of POS tags. Reserved tags UNK_TAG and PAD_TAG are
// always present; content tags are capped at a Penn-Treebank-scale 36.
class TagSet {
public:
    TagSet();
    void add(const std::string& tag);
    bool contains(const std::string& tag) const;
    const std::vector<std::string>& tags() const { return tags_; }
    size_t content_size() const { return tags_.size() - 2; }

private:
    std::vector<std::string> tags_;
};

// Averaged perceptron POS tagger (greedy left-to-right decoding).
class TaggerModel {
public:
    // Per-feature weights for each tag plus averaging accumulators.
    struct WeightCell {
        double weight = 0.0;
        double total = 0.0;    // accumulated weight * steps
        uint64_t stamp = 0;    // step of last update
    };

    const TagSet& tagset() const { return tagset_; }
    std::vector<std::string> tag(const std::vector<std::string>& tokens) const;

    void save(const std::string& path) const;
    static TaggerModel load(const std::string& path);

    int epochs = 0;
    uint64_t seed = 0;
    double training_accuracy = 0.0;

private:
    friend TaggerModel train_tagger(
        const std::vector<std::vector<std::pair<std::string, std::string>>>&,
        int, uint64_t, const TagSet*);

    std::string predict(const std::vector<std::string>& features) const;

    TagSet tagset_;
    // feature -> tag -> weight (ordered maps keep decoding deterministic)
    std::map<std::string, std::map<std::string, WeightCell>> weights_;
    std::map<std::string, uint64_t> tag_freq_;
};

using TaggedSentence = std::vector<std::pair<std::string, std::string>>;

// CoNLL two-column format: "token<TAB>tag" lines, blank line between
// sentences.
std::vector<TaggedSentence> load_conll(const std::string& path);

// declared_tagset, when non-null, makes out-of-inventory tags an error.
TaggerModel train_tagger(const std::vector<TaggedSentence>& corpus,
                         int epochs, uint64_t seed,
                         const TagSet* declared_tagset = nullptr);

// Replaces every sentence's tokens with their POS tags; labels, domains
// and per-sentence token counts are unchanged.
Dataset to_pos_version(const Dataset& d, const TaggerModel& model);

}  // namespace wise
