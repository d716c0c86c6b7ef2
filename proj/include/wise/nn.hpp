#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/embedding.hpp"

namespace wise {

struct ModelConfig {
    size_t embedding_dim = 100;
    Vocabulary vocab;
    std::array<size_t, 3> lstm_sizes{100, 50, 20};
    size_t num_classes = 2;
    double l2_lambda = 1e-4;
    size_t max_seq_len = 100;
    bool trainable_embeddings = true;
    bool truncate_keep_tail = true;  // over-long input drops its head
    uint64_t seed = 1;
};

// One LSTM layer; gate order in the stacked tensors is i, f, g, o.
struct LstmLayer {
    size_t in = 0, out = 0;
    std::vector<double> w;  // 4*out x in
    std::vector<double> u;  // 4*out x out
    std::vector<double> b;  // 4*out
};

struct AdamState {
    std::vector<double> m, v;
};

struct ClassifierModel {
    ModelConfig config;
    std::vector<double> embedding;  // vocab x dim, row-major
    std::array<LstmLayer, 3> lstm;
    std::vector<double> dense_w;  // num_classes x lstm_sizes[2]
    std::vector<double> dense_b;  // num_classes
    // Optimizer state, aligned with the tensor registry order.
    uint64_t adam_step = 0;
    std::vector<AdamState> adam;
    std::vector<std::string> phases;  // training phase names, in order
};

struct TrainConfig {
    int epochs = 5;
    size_t batch_size = 32;
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    uint64_t shuffle_seed = 1;
    std::string phase = "train";
    bool verbose = false;
};

struct EpochStats {
    double loss = 0.0;      // mean cross-entropy + L2 term
    double accuracy = 0.0;  // training-set argmax accuracy
};

// Embedding rows come from init when given (vocabularies must match),
// otherwise uniform(-0.05, 0.05); LSTM/dense weights are uniform scaled
// by fan-in. Deterministic given config.seed.
ClassifierModel build_model(const ModelConfig& cfg,
                            const EmbeddingMatrix* init = nullptr);

std::vector<size_t> to_ids(const std::vector<std::string>& tokens,
                           const Vocabulary& vocab);

// Softmax probabilities over {non-suggestion, suggestion}. PAD ids do not
// advance the LSTM state; sequences longer than max_seq_len are truncated.
std::array<double, 2> forward(const ClassifierModel& m,
                              const std::vector<size_t>& token_ids);

// Final-timestep hidden state of the last LSTM layer.
std::vector<double> sentence_representation(
    const ClassifierModel& m, const std::vector<size_t>& token_ids);

// Adam + BPTT on mean cross-entropy + l2_lambda * ||LSTM weights||^2.
// Per-epoch shuffling from tc.shuffle_seed; appends tc.phase to m.phases.
std::vector<EpochStats> train(ClassifierModel& m, const Dataset& data,
                              const TrainConfig& tc);

// Continues from m's parameters with fresh optimizer state.
std::vector<EpochStats> fine_tune(ClassifierModel& m, const Dataset& data,
                                  const TrainConfig& tc);

// Embedding rows with the model's vocabulary (WiSE extraction).
EmbeddingMatrix extract_embedding_layer(const ClassifierModel& m);

// One Adam step on a single element; t is the 1-based step count.
void adam_update_element(double grad, double& m1, double& m2, double& param,
                         uint64_t t, const TrainConfig& tc);

// Analytic gradients of the batch loss (mean cross-entropy + L2 term),
// one entry per tensor in checkpoint order. The embedding gradient is
// materialized densely.
std::vector<std::pair<std::string, std::vector<double>>> batch_gradients(
    const ClassifierModel& m, const Dataset& batch);

// Max relative error between analytic BPTT gradients and central finite
// differences of the batch loss, over every parameter. Gradients below
// 1e-6 in magnitude are compared on an absolute scale (the central
// difference is cancellation-limited there).
double gradient_check(const ClassifierModel& m, const Dataset& batch,
                      double eps);

// Checkpoint: binary container with a JSON header (format_version, config,
// vocabulary, phases, tensor manifest) followed by little-endian float64
// tensor payloads and optimizer state.
void save_model(const ClassifierModel& m, const std::string& path);
ClassifierModel load_model(const std::string& path);

}  // namespace wise
