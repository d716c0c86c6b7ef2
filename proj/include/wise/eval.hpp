#pragma once

#include <string>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/nn.hpp"

namespace wise {

// Positive-class precision/recall/F1 plus the underlying confusion counts.
struct EvalReport {
    size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    std::string dataset;
    std::string model;

    std::string csv_row() const;
    static std::string csv_header();
};

// Metrics from raw confusion counts; zero denominators give 0.
EvalReport metrics_from_counts(size_t tp, size_t fp, size_t fn, size_t tn);

// Argmax predictions of m on every test sentence.
EvalReport evaluate(const ClassifierModel& m, const Dataset& test);

}  // namespace wise
