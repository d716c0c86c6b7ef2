#include "wise/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace wise {

Vocabulary::Vocabulary() {
    add(kUnkToken);
    add(kPadToken);
}

size_t Vocabulary::add(const std::string& token) {
    auto it = ids_.find(token);
    if (it != ids_.end()) return it->second;
    size_t id = tokens_.size();
    tokens_.push_back(token);
    ids_.emplace(token, id);
    return id;
}

size_t Vocabulary::id(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(const std::string& token) const {
    return ids_.count(token) != 0;
}

Vocabulary build_vocab(const Dataset& corpus, size_t min_count) {
    if (min_count < 1) throw std::runtime_error("min_count must be >= 1");
    std::map<std::string, size_t> freq;
    for (const auto& s : corpus.sentences) {
        for (const auto& t : s.tokens) ++freq[t];
    }
    std::vector<std::pair<std::string, size_t>> kept;
    for (const auto& [tok, n] : freq) {
        if (n >= min_count && tok != kUnkToken && tok != kPadToken) {
            kept.emplace_back(tok, n);
        }
    }
    if (kept.empty()) {
        throw std::runtime_error("build_vocab: empty vocabulary after "
                                 "min_count filter");
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Vocabulary v;
    for (const auto& [tok, n] : kept) {
        (void)n;
        v.add(tok);
    }
    return v;
}

EmbeddingMatrix EmbeddingMatrix::zeros(Vocabulary vocab, size_t dim) {
    EmbeddingMatrix e;
    e.vocab = std::move(vocab);
    e.dim = dim;
    e.data.assign(e.vocab.size() * dim, 0.0);
    return e;
}

void save_embeddings(const EmbeddingMatrix& e, const std::string& path,
                     bool header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write embeddings: " + path);
    if (header) out << e.vocab.size() << ' ' << e.dim << '\n';
    char buf[32];
    for (size_t i = 0; i < e.vocab.size(); ++i) {
        out << e.vocab.token(i);
        const double* r = e.row(i);
        for (size_t j = 0; j < e.dim; ++j) {
            std::snprintf(buf, sizeof buf, " %.9g", r[j]);
            out << buf;
        }
        out << '\n';
    }
}

EmbeddingMatrix load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embeddings: " + path);
    EmbeddingMatrix e;
    std::unordered_set<std::string> seen;
    std::string line;
    size_t lineno = 0;
    size_t declared_count = 0;
    bool has_header = false;
    size_t loaded = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (lineno == 1) {
            // "count dim" header is optional; detect two bare integers.
            size_t c, d;
            char extra;
            std::istringstream probe(line);
            if (probe >> c >> d && !(probe >> extra)) {
                declared_count = c;
                e.dim = d;
                has_header = true;
                continue;
            }
        }
        std::string token;
        ls >> token;
        std::vector<double> values;
        double x;
        while (ls >> x) values.push_back(x);
        if (!ls.eof()) {
            throw std::runtime_error("non-numeric field at line " +
                                     std::to_string(lineno) + " in " + path);
        }
        if (values.empty()) {
            throw std::runtime_error("no vector values at line " +
                                     std::to_string(lineno) + " in " + path);
        }
        if (e.dim == 0) e.dim = values.size();
        if (values.size() != e.dim) {
            throw std::runtime_error(
                "ragged row at line " + std::to_string(lineno) + " in " + path +
                ": expected " + std::to_string(e.dim) + " values, got " +
                std::to_string(values.size()));
        }
        if (!seen.insert(token).second) {
            throw std::runtime_error("duplicate token '" + token +
                                     "' at line " + std::to_string(lineno) +
                                     " in " + path);
        }
        size_t id = e.vocab.add(token);
        if (e.data.size() < e.vocab.size() * e.dim) {
            e.data.resize(e.vocab.size() * e.dim, 0.0);
        }
        std::copy(values.begin(), values.end(), e.data.begin() + id * e.dim);
        ++loaded;
    }
    if (e.dim == 0) throw std::runtime_error("empty embedding file: " + path);
    e.data.resize(e.vocab.size() * e.dim, 0.0);
    if (has_header && loaded != declared_count) {
        throw std::runtime_error("header declares " +
                                 std::to_string(declared_count) +
                                 " rows, file has " + std::to_string(loaded) +
                                 " in " + path);
    }
    return e;
}

std::vector<double> sentence_vector(const std::vector<std::string>& tokens,
                                    const EmbeddingMatrix& e, bool unique) {
    std::vector<double> v(e.dim, 0.0);
    std::unordered_set<std::string> seen;
    for (const auto& t : tokens) {
        if (unique && !seen.insert(t).second) continue;
        if (!e.vocab.contains(t)) continue;  // OOV contributes zero
        const double* r = e.row(e.vocab.id(t));
        for (size_t j = 0; j < e.dim; ++j) v[j] += r[j];
    }
    return v;
}

double cosine(const std::vector<double>& v, const std::vector<double>& w) {
    if (v.size() != w.size()) {
        throw std::runtime_error("cosine: dimension mismatch " +
                                 std::to_string(v.size()) + " vs " +
                                 std::to_string(w.size()));
    }
    double dot = 0.0, nv = 0.0, nw = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        dot += v[i] * w[i];
        nv += v[i] * v[i];
        nw += w[i] * w[i];
    }
    if (nv == 0.0 || nw == 0.0) return 0.0;
    return dot / (std::sqrt(nv) * std::sqrt(nw));
}

std::vector<double> CompositeEmbedding::lookup(const std::string& word,
                                               const std::string& tag) const {
    std::vector<double> out;
    out.reserve(dim());
    const double* wr = word_part.row(word_part.vocab.id(word));
    out.insert(out.end(), wr, wr + word_part.dim);
    const double* pr = pos_part.row(pos_part.vocab.id(tag));
    out.insert(out.end(), pr, pr + pos_part.dim);
    return out;
}

}  // namespace wise
