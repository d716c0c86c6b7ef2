#include "wise/glove.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wise/rng.hpp"

namespace wise {

CooccurrenceTable count_cooccurrences(const Dataset& corpus,
                                      const Vocabulary& vocab, size_t window) {
    if (window < 1) throw std::runtime_error("window must be >= 1");
    CooccurrenceTable table;
    for (const auto& s : corpus.sentences) {
        const auto& toks = s.tokens;
        for (size_t i = 0; i < toks.size(); ++i) {
            uint32_t wi = static_cast<uint32_t>(vocab.id(toks[i]));
            size_t lo = i > window ? i - window : 0;
            size_t hi = std::min(toks.size(), i + window + 1);
            for (size_t j = lo; j < hi; ++j) {
                if (j == i) continue;
                uint32_t wj = static_cast<uint32_t>(vocab.id(toks[j]));
                size_t dist = j > i ? j - i : i - j;
                table.add(wi, wj, 1.0 / static_cast<double>(dist));
            }
        }
    }
    return table;
}

double glove_weight(double x, double x_max, double alpha) {
    return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

GloveResult train_glove(const CooccurrenceTable& table,
                        const Vocabulary& vocab, const GloveConfig& cfg) {
    if (table.size() == 0) {
        throw std::runtime_error("train_glove: empty co-occurrence table");
    }
    if (cfg.dim < 1) throw std::runtime_error("train_glove: dim must be >= 1");

    const size_t V = vocab.size();
    const size_t D = cfg.dim;

    // Sorted cell list for a deterministic starting order.
    struct Cell { uint32_t i, j; double x; };
    std::vector<Cell> cells;
    cells.reserve(table.size());
    for (const auto& [k, x] : table.entries()) {
        cells.push_back({static_cast<uint32_t>(k >> 32),
                         static_cast<uint32_t>(k & 0xffffffffu), x});
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    Rng rng(cfg.seed);
    auto init = [&rng, D](std::vector<double>& v, size_t n) {
        v.resize(n);
        for (auto& x : v) x = rng.uniform(-0.5, 0.5) / static_cast<double>(D);
    };
    std::vector<double> w_main, w_ctx, b_main, b_ctx;
    init(w_main, V * D);
    init(w_ctx, V * D);
    init(b_main, V);
    init(b_ctx, V);

    std::vector<double> g2_main(V * D, 1.0), g2_ctx(V * D, 1.0);
    std::vector<double> g2_bmain(V, 1.0), g2_bctx(V, 1.0);

    auto objective = [&]() {
        double total = 0.0;
        for (const auto& c : cells) {
            double dot = 0.0;
            const double* wm = &w_main[c.i * D];
            const double* wc = &w_ctx[c.j * D];
            for (size_t d = 0; d < D; ++d) dot += wm[d] * wc[d];
            double diff = dot + b_main[c.i] + b_ctx[c.j] - std::log(c.x);
            total += glove_weight(c.x, cfg.x_max, cfg.alpha) * diff * diff;
        }
        return total;
    };

    GloveResult result;
    result.epoch_objective.push_back(objective());

    std::vector<size_t> order(cells.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t idx : order) {
            const Cell& c = cells[idx];
            double* wm = &w_main[c.i * D];
            double* wc = &w_ctx[c.j * D];
            double dot = 0.0;
            for (size_t d = 0; d < D; ++d) dot += wm[d] * wc[d];
            double diff = dot + b_main[c.i] + b_ctx[c.j] - std::log(c.x);
            double fdiff = glove_weight(c.x, cfg.x_max, cfg.alpha) * diff;
            if (!std::isfinite(fdiff)) {
                throw std::runtime_error(
                    "train_glove: non-finite update at epoch " +
                    std::to_string(epoch) + ", cell (" + std::to_string(c.i) +
                    "," + std::to_string(c.j) + ")");
            }
            for (size_t d = 0; d < D; ++d) {
                double gm = fdiff * wc[d];
                double gc = fdiff * wm[d];
                wm[d] -= cfg.learning_rate * gm /
                         std::sqrt(g2_main[c.i * D + d]);
                wc[d] -= cfg.learning_rate * gc /
                         std::sqrt(g2_ctx[c.j * D + d]);
                g2_main[c.i * D + d] += gm * gm;
                g2_ctx[c.j * D + d] += gc * gc;
            }
            b_main[c.i] -= cfg.learning_rate * fdiff / std::sqrt(g2_bmain[c.i]);
            b_ctx[c.j] -= cfg.learning_rate * fdiff / std::sqrt(g2_bctx[c.j]);
            g2_bmain[c.i] += fdiff * fdiff;
            g2_bctx[c.j] += fdiff * fdiff;
        }
        double obj = objective();
        if (!std::isfinite(obj)) {
            throw std::runtime_error("train_glove: non-finite objective after "
                                     "epoch " + std::to_string(epoch));
        }
        result.epoch_objective.push_back(obj);
    }

    result.embeddings = EmbeddingMatrix::zeros(vocab, D);
    for (size_t i = 0; i < V; ++i) {
        double* r = result.embeddings.row(i);
        for (size_t d = 0; d < D; ++d) r[d] = w_main[i * D + d] + w_ctx[i * D + d];
    }
    return result;
}

}  // namespace wise
