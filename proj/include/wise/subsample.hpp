#pragma once

#include <string>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/embedding.hpp"

namespace wise {

struct SubsampleReport {
    size_t selected_positive = 0;
    size_t selected_negative = 0;
    double threshold_positive = 0.0;  // lowest selected score per class
    double threshold_negative = 0.0;
    double fraction = 0.0;
    bool degenerate = false;  // all-zero test vector

    std::string to_text() const;
};

// Number of sentences kept per class: ceil(fraction * class_size).
size_t selected_count(double fraction, size_t class_size);

// Sum of embedding vectors over the unique tokens of the whole test set;
// OOV tokens contribute zero.
std::vector<double> testset_vector(const Dataset& test,
                                   const EmbeddingMatrix& e);

// Per class, ranks wiki sentences by cosine similarity to the test-set
// vector (descending, ties by original index) and keeps the top
// ceil(fraction * class_size). Output preserves original dataset order.
struct SubsampleResult {
    Dataset dataset;
    SubsampleReport report;
};
SubsampleResult semantic_subsample(const Dataset& wiki, const Dataset& test,
                                   const EmbeddingMatrix& e, double fraction);

}  // namespace wise
