#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wise {

struct TsneConfig {
    double perplexity = 30.0;
    int iterations = 1000;
    double learning_rate = 200.0;
    double early_exaggeration = 12.0;
    int exaggeration_iters = 250;
    uint64_t seed = 1;
};

// Standard t-SNE: perplexity-calibrated Gaussian affinities (per-point
// bisection), symmetrized, Student-t low-dimensional kernel, gradient
// descent with early exaggeration, momentum and gains. Deterministic
// given the seed. Row i of the output corresponds to row i of the input.
std::vector<std::array<double, 2>> tsne_project(
    const std::vector<std::vector<double>>& vectors, const TsneConfig& cfg);

// CSV "x,y,label" with a header row; labels must be 0 or 1.
void export_projection(const std::vector<std::array<double, 2>>& points,
                       const std::vector<int>& labels,
                       const std::string& path);

}  // namespace wise
