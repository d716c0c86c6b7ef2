#include "wise/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "wise/rng.hpp"
#include "wise/text.hpp"

namespace wise {

size_t Dataset::count_label(int label) const {
    size_t n = 0;
    for (const auto& s : sentences) {
        if (s.label == label) ++n;
    }
    return n;
}

void ensure_tokenized(Dataset& d) {
    for (auto& s : d.sentences) {
        if (s.tokens.empty()) s.tokens = tokenize(s.text);
    }
}

DatasetStats dataset_stats(const Dataset& d) {
    DatasetStats st;
    st.sentence_count = d.size();
    std::unordered_set<std::string> vocab;
    for (const auto& s : d.sentences) {
        if (s.label == 1) ++st.positive_count;
        st.token_count += s.tokens.size();
        vocab.insert(s.tokens.begin(), s.tokens.end());
    }
    st.vocabulary_size = vocab.size();
    return st;
}

Dataset balance_oversample(const Dataset& d, uint64_t seed) {
    size_t pos = d.count_label(1);
    size_t neg = d.size() - pos;
    if (pos == 0 || neg == 0) {
        throw std::runtime_error("balance_oversample: dataset '" + d.name +
                                 "' has a single class");
    }
    Dataset out = d;
    if (pos == neg) return out;

    int minority_label = pos < neg ? 1 : 0;
    size_t deficit = pos < neg ? neg - pos : pos - neg;

    std::vector<size_t> minority;
    for (size_t i = 0; i < d.size(); ++i) {
        if (d.sentences[i].label == minority_label) minority.push_back(i);
    }
    Rng rng(seed);
    rng.shuffle(minority);
    for (size_t k = 0; k < deficit; ++k) {
        out.sentences.push_back(d.sentences[minority[k % minority.size()]]);
    }
    return out;
}

void save_tsv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset: " + path);
    for (const auto& s : d.sentences) {
        std::string text = s.tokens.empty() ? s.text : join_tokens(s.tokens);
        std::replace(text.begin(), text.end(), '\t', ' ');
        std::string domain = s.domain;
        std::replace(domain.begin(), domain.end(), '\t', ' ');
        out << s.label << '\t' << domain << '\t' << text << '\n';
    }
}

Dataset load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    Dataset d;
    d.name = path;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? std::string::npos
                                          : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw std::runtime_error("malformed TSV line " +
                                     std::to_string(lineno) + " in " + path);
        }
        LabeledSentence s;
        std::string label = line.substr(0, t1);
        if (label == "0") s.label = 0;
        else if (label == "1") s.label = 1;
        else {
            throw std::runtime_error("bad label '" + label + "' at line " +
                                     std::to_string(lineno) + " in " + path);
        }
        s.domain = line.substr(t1 + 1, t2 - t1 - 1);
        s.text = line.substr(t2 + 1);
        if (collapse_whitespace(s.text).empty()) {
            throw std::runtime_error("empty sentence at line " +
                                     std::to_string(lineno) + " in " + path);
        }
        s.tokens = split_whitespace(s.text);
        d.sentences.push_back(std::move(s));
    }
    return d;
}

}  // namespace wise
