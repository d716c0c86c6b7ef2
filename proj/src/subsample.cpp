#include "wise/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wise {

std::string SubsampleReport::to_text() const {
    std::ostringstream out;
    out << "fraction=" << fraction << "\n"
        << "selected_positive=" << selected_positive << "\n"
        << "selected_negative=" << selected_negative << "\n"
        << "threshold_positive=" << threshold_positive << "\n"
        << "threshold_negative=" << threshold_negative << "\n"
        << "degenerate=" << (degenerate ? 1 : 0) << "\n";
    return out.str();
}

size_t selected_count(double fraction, size_t class_size) {
    return static_cast<size_t>(
        std::ceil(fraction * static_cast<double>(class_size)));
}

std::vector<double> testset_vector(const Dataset& test,
                                   const EmbeddingMatrix& e) {
    if (test.size() == 0) {
        throw std::runtime_error("testset_vector: empty test set");
    }
    std::vector<std::string> all;
    for (const auto& s : test.sentences) {
        all.insert(all.end(), s.tokens.begin(), s.tokens.end());
    }
    return sentence_vector(all, e, /*unique=*/true);
}

SubsampleResult semantic_subsample(const Dataset& wiki, const Dataset& test,
                                   const EmbeddingMatrix& e, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::runtime_error("semantic_subsample: fraction must be in "
                                 "(0, 1]");
    }
    if (wiki.count_label(0) == 0 || wiki.count_label(1) == 0) {
        throw std::runtime_error(
            "semantic_subsample: wiki dataset must contain both classes");
    }
    std::vector<double> tv = testset_vector(test, e);
    bool all_zero = std::all_of(tv.begin(), tv.end(),
                                [](double x) { return x == 0.0; });
    if (all_zero) {
        throw std::runtime_error(
            "semantic_subsample: test-set vector is all zero (every test "
            "token is out of vocabulary); all similarities would be 0");
    }

    SubsampleResult result;
    result.report.fraction = fraction;
    result.dataset.name = wiki.name + "-subsample";

    std::vector<char> keep(wiki.size(), 0);
    for (int label = 0; label <= 1; ++label) {
        std::vector<std::pair<double, size_t>> scored;  // (score, index)
        for (size_t i = 0; i < wiki.size(); ++i) {
            if (wiki.sentences[i].label != label) continue;
            auto sv = sentence_vector(wiki.sentences[i].tokens, e,
                                      /*unique=*/true);
            scored.emplace_back(cosine(tv, sv), i);
        }
        size_t take = selected_count(fraction, scored.size());
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) {
                             if (a.first != b.first) return a.first > b.first;
                             return a.second < b.second;
                         });
        for (size_t k = 0; k < take; ++k) keep[scored[k].second] = 1;
        double threshold = take > 0 ? scored[take - 1].first : 0.0;
        if (label == 1) {
            result.report.selected_positive = take;
            result.report.threshold_positive = threshold;
        } else {
            result.report.selected_negative = take;
            result.report.threshold_negative = threshold;
        }
    }
    for (size_t i = 0; i < wiki.size(); ++i) {
        if (keep[i]) result.dataset.sentences.push_back(wiki.sentences[i]);
    }
    return result;
}

}  // namespace wise
