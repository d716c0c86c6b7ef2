#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wise/dataset.hpp"

namespace wise {

inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kPadToken = "<pad>";
inline constexpr size_t kUnkId = 0;
inline constexpr size_t kPadId = 1;

// Bijection between tokens and dense integer ids. <unk>=0 and <pad>=1
// are always present.
class Vocabulary {
public:
    Vocabulary();

    // Returns the id, adding the token if new.
    size_t add(const std::string& token);
    // Returns the id or kUnkId when absent.
    size_t id(const std::string& token) const;
    bool contains(const std::string& token) const;
    const std::string& token(size_t id) const { return tokens_.at(id); }
    size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    bool operator==(const Vocabulary& other) const {
        return tokens_ == other.tokens_;
    }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, size_t> ids_;
};

// Tokens with frequency >= min_count, ordered by descending frequency then
// lexicographic, specials first.
Vocabulary build_vocab(const Dataset& corpus, size_t min_count);

// Vocabulary-aligned table of dim-dimensional vectors.
struct EmbeddingMatrix {
    Vocabulary vocab;
    size_t dim = 0;
    std::vector<double> data;  // row-major, vocab.size() x dim

    double* row(size_t id) { return data.data() + id * dim; }
    const double* row(size_t id) const { return data.data() + id * dim; }

    static EmbeddingMatrix zeros(Vocabulary vocab, size_t dim);
};

// GloVe text format: optional "<count> <dim>" header, then one line per
// token: token followed by dim floats. 9 significant digits on save.
void save_embeddings(const EmbeddingMatrix& e, const std::string& path,
                     bool header = true);
EmbeddingMatrix load_embeddings(const std::string& path);

// Sum of vectors of the (optionally unique) tokens found in the
// vocabulary; out-of-vocabulary tokens contribute the zero vector.
std::vector<double> sentence_vector(const std::vector<std::string>& tokens,
                                    const EmbeddingMatrix& e, bool unique);

// v.w / (|v||w|); 0 when either norm is 0. Dimension mismatch is an error.
double cosine(const std::vector<double>& v, const std::vector<double>& w);

// Word and POS embeddings looked up side by side.
struct CompositeEmbedding {
    EmbeddingMatrix word_part;
    EmbeddingMatrix pos_part;

    size_t dim() const { return word_part.dim + pos_part.dim; }
    // [word_part(word) ; pos_part(tag)], each part falling back to its
    // UNK row when the token is absent.
    std::vector<double> lookup(const std::string& word,
                               const std::string& tag) const;
};

}  // namespace wise
