#include "wise/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wise/rng.hpp"
#include "wise/text.hpp"

namespace wise {

namespace {

std::string word_shape(const std::string& w) {
    bool upper = false, lower = false, digit = false, other = false;
    for (unsigned char c : w) {
        if (std::isupper(c)) upper = true;
        else if (std::islower(c)) lower = true;
        else if (std::isdigit(c)) digit = true;
        else other = true;
    }
    std::string shape;
    if (upper) shape += 'X';
    if (lower) shape += 'x';
    if (digit) shape += 'd';
    if (other) shape += '-';
    return shape.empty() ? "_" : shape;
}

std::vector<std::string> extract_features(
    const std::vector<std::string>& tokens, size_t i,
    const std::string& prev_tag) {
    const std::string& w = tokens[i];
    std::string lw = to_lower(w);
    std::vector<std::string> f;
    f.reserve(9);
    f.push_back("bias");
    f.push_back("w=" + lw);
    // Original-case word is a feature of its own; casing is informative
    // even though downstream tokens are lowercased.
    if (w != lw) f.push_back("cw=" + w);
    for (size_t n = 1; n <= 3 && n <= lw.size(); ++n) {
        f.push_back("suf" + std::to_string(n) + "=" + lw.substr(lw.size() - n));
    }
    f.push_back("shape=" + word_shape(w));
    f.push_back("pt=" + prev_tag);
    f.push_back("pw=" + (i > 0 ? to_lower(tokens[i - 1]) : std::string("<s>")));
    f.push_back("nw=" + (i + 1 < tokens.size() ? to_lower(tokens[i + 1])
                                               : std::string("</s>")));
    return f;
}

}  // namespace

TagSet::TagSet() {
    tags_.push_back(kUnkTag);
    tags_.push_back(kPadTag);
}

void TagSet::add(const std::string& tag) {
    if (contains(tag)) return;
    if (content_size() >= 36) {
        throw std::runtime_error("tagset exceeds 36 content tags adding: " +
                                 tag);
    }
    tags_.push_back(tag);
}

bool TagSet::contains(const std::string& tag) const {
    return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

std::vector<TaggedSentence> load_conll(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CoNLL file: " + path);
    std::vector<TaggedSentence> corpus;
    TaggedSentence current;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (!current.empty()) corpus.push_back(std::move(current));
            current.clear();
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw std::runtime_error("malformed CoNLL line " +
                                     std::to_string(lineno) + ": " + line);
        }
        current.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    if (!current.empty()) corpus.push_back(std::move(current));
    return corpus;
}

std::string TaggerModel::predict(
    const std::vector<std::string>& features) const {
    std::map<std::string, double> scores;
    for (const auto& f : features) {
        auto it = weights_.find(f);
        if (it == weights_.end()) continue;
        for (const auto& [tag, cell] : it->second) scores[tag] += cell.weight;
    }
    // Argmax over content tags; ties by training frequency then name.
    std::string best;
    double best_score = 0.0;
    uint64_t best_freq = 0;
    for (const auto& tag : tagset_.tags()) {
        if (tag == kUnkTag || tag == kPadTag) continue;
        double sc = 0.0;
        if (auto it = scores.find(tag); it != scores.end()) sc = it->second;
        uint64_t fr = 0;
        if (auto it = tag_freq_.find(tag); it != tag_freq_.end())
            fr = it->second;
        if (best.empty() || sc > best_score ||
            (sc == best_score && (fr > best_freq ||
                                  (fr == best_freq && tag < best)))) {
            best = tag;
            best_score = sc;
            best_freq = fr;
        }
    }
    return best.empty() ? kUnkTag : best;
}

std::vector<std::string> TaggerModel::tag(
    const std::vector<std::string>& tokens) const {
    std::vector<std::string> tags;
    tags.reserve(tokens.size());
    std::string prev = "<START>";
    for (size_t i = 0; i < tokens.size(); ++i) {
        std::string t = predict(extract_features(tokens, i, prev));
        tags.push_back(t);
        prev = t;
    }
    return tags;
}

TaggerModel train_tagger(const std::vector<TaggedSentence>& corpus,
                         int epochs, uint64_t seed,
                         const TagSet* declared_tagset) {
    if (corpus.empty()) throw std::runtime_error("empty tagger corpus");
    if (epochs < 1) throw std::runtime_error("epochs must be >= 1");

    TaggerModel model;
    model.epochs = epochs;
    model.seed = seed;
    for (const auto& sent : corpus) {
        for (const auto& [tok, tag] : sent) {
            if (declared_tagset && !declared_tagset->contains(tag)) {
                throw std::runtime_error("tag outside declared tagset: " + tag);
            }
            if (!model.tagset_.contains(tag)) model.tagset_.add(tag);
            ++model.tag_freq_[tag];
        }
    }

    uint64_t step = 0;
    auto update = [&](const std::string& feat, const std::string& tag,
                      double delta) {
        auto& cell = model.weights_[feat][tag];
        cell.total += cell.weight * static_cast<double>(step - cell.stamp);
        cell.stamp = step;
        cell.weight += delta;
    };

    std::vector<size_t> order(corpus.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);

    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t idx : order) {
            const auto& sent = corpus[idx];
            std::string prev = "<START>";
            std::vector<std::string> tokens(sent.size());
            for (size_t i = 0; i < sent.size(); ++i) tokens[i] = sent[i].first;
            for (size_t i = 0; i < sent.size(); ++i) {
                ++step;
                auto feats = extract_features(tokens, i, prev);
                std::string guess = model.predict(feats);
                const std::string& truth = sent[i].second;
                if (guess != truth) {
                    for (const auto& f : feats) {
                        update(f, truth, 1.0);
                        update(f, guess, -1.0);
                    }
                }
                // Gold previous tag during training (greedy oracle).
                prev = truth;
            }
        }
    }

    // Finalize averaged weights.
    for (auto& [feat, per_tag] : model.weights_) {
        (void)feat;
        for (auto& [tag, cell] : per_tag) {
            (void)tag;
            cell.total += cell.weight * static_cast<double>(step - cell.stamp);
            cell.stamp = step;
            cell.weight = cell.total / static_cast<double>(step);
        }
    }

    size_t correct = 0, total = 0;
    for (const auto& sent : corpus) {
        std::vector<std::string> tokens(sent.size());
        for (size_t i = 0; i < sent.size(); ++i) tokens[i] = sent[i].first;
        auto tags = model.tag(tokens);
        for (size_t i = 0; i < sent.size(); ++i) {
            if (tags[i] == sent[i].second) ++correct;
            ++total;
        }
    }
    model.training_accuracy =
        total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
    return model;
}

Dataset to_pos_version(const Dataset& d, const TaggerModel& model) {
    Dataset out;
    out.name = d.name.empty() ? std::string("pos") : d.name + "-pos";
    out.sentences.reserve(d.size());
    for (const auto& s : d.sentences) {
        LabeledSentence p;
        p.tokens = model.tag(s.tokens);
        p.text = join_tokens(p.tokens);
        p.label = s.label;
        p.domain = s.domain;
        out.sentences.push_back(std::move(p));
    }
    return out;
}

void TaggerModel::save(const std::string& path) const {
    nlohmann::json j;
    j["format"] = "wise-tagger-v1";
    j["epochs"] = epochs;
    j["seed"] = seed;
    j["training_accuracy"] = training_accuracy;
    j["tags"] = tagset_.tags();
    j["tag_freq"] = tag_freq_;
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [feat, per_tag] : weights_) {
        nlohmann::json cells = nlohmann::json::object();
        for (const auto& [tag, cell] : per_tag) {
            cells[tag] = {cell.weight, cell.total, cell.stamp};
        }
        w[feat] = std::move(cells);
    }
    j["weights"] = std::move(w);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write tagger model: " + path);
    out << j.dump();
}

TaggerModel TaggerModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tagger model: " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("format", "") != "wise-tagger-v1") {
        throw std::runtime_error("unknown tagger model format in " + path);
    }
    TaggerModel m;
    m.epochs = j["epochs"];
    m.seed = j["seed"];
    m.training_accuracy = j["training_accuracy"];
    for (const auto& tag : j["tags"]) {
        std::string t = tag;
        if (t != kUnkTag && t != kPadTag) m.tagset_.add(t);
    }
    m.tag_freq_ = j["tag_freq"].get<std::map<std::string, uint64_t>>();
    for (const auto& [feat, cells] : j["weights"].items()) {
        for (const auto& [tag, arr] : cells.items()) {
            WeightCell c;
            c.weight = arr[0];
            c.total = arr[1];
            c.stamp = arr[2];
            m.weights_[feat][tag] = c;
        }
    }
    return m;
}

}  // namespace wise
