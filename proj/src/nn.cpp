#include "wise/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "wise/rng.hpp"

namespace wise {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Tensor registry: fixed order used by the optimizer state and the
// checkpoint. Index 0 is the embedding (updated sparsely).
struct TensorRef {
    std::string name;
    std::vector<double>* data;
    bool l2 = false;
};

std::vector<TensorRef> tensors(ClassifierModel& m) {
    std::vector<TensorRef> t;
    t.push_back({"embedding", &m.embedding, false});
    for (int l = 0; l < 3; ++l) {
        std::string p = "lstm" + std::to_string(l) + ".";
        t.push_back({p + "w", &m.lstm[l].w, true});
        t.push_back({p + "u", &m.lstm[l].u, true});
        t.push_back({p + "b", &m.lstm[l].b, false});
    }
    t.push_back({"dense.w", &m.dense_w, false});
    t.push_back({"dense.b", &m.dense_b, false});
    return t;
}

// y += A x, A row-major rows x cols
void matvec_add(const std::vector<double>& a, const double* x, size_t rows,
                size_t cols, double* y) {
    for (size_t r = 0; r < rows; ++r) {
        const double* row = a.data() + r * cols;
        double acc = 0.0;
        for (size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
        y[r] += acc;
    }
}

// y += A^T x
void matvec_t_add(const std::vector<double>& a, const double* x, size_t rows,
                  size_t cols, double* y) {
    for (size_t r = 0; r < rows; ++r) {
        const double* row = a.data() + r * cols;
        for (size_t c = 0; c < cols; ++c) y[c] += row[c] * x[r];
    }
}

struct StepCache {
    std::vector<double> x;  // layer input at this step
    std::vector<double> i, f, g, o, c, tanhc, h;
};

struct ForwardCache {
    std::vector<size_t> ids;  // effective sequence (PAD removed, truncated)
    std::array<std::vector<StepCache>, 3> layers;
    std::vector<double> h_final;  // last layer, last step (zeros if empty)
    std::array<double, 2> logits{};
    std::array<double, 2> probs{};
};

std::vector<size_t> effective_ids(const ClassifierModel& m,
                                  const std::vector<size_t>& token_ids) {
    std::vector<size_t> ids;
    ids.reserve(token_ids.size());
    for (size_t id : token_ids) {
        if (id >= m.config.vocab.size()) {
            throw std::runtime_error("token id " + std::to_string(id) +
                                     " out of vocabulary range " +
                                     std::to_string(m.config.vocab.size()));
        }
        if (id == kPadId) continue;
        ids.push_back(id);
    }
    if (ids.size() > m.config.max_seq_len) {
        if (m.config.truncate_keep_tail) {
            ids.erase(ids.begin(),
                      ids.end() - static_cast<long>(m.config.max_seq_len));
        } else {
            ids.resize(m.config.max_seq_len);
        }
    }
    return ids;
}

void lstm_step(const LstmLayer& layer, const double* x, const double* h_prev,
               const double* c_prev, StepCache& cache) {
    const size_t H = layer.out;
    std::vector<double> z(layer.b);
    matvec_add(layer.w, x, 4 * H, layer.in, z.data());
    matvec_add(layer.u, h_prev, 4 * H, H, z.data());
    cache.i.resize(H);
    cache.f.resize(H);
    cache.g.resize(H);
    cache.o.resize(H);
    cache.c.resize(H);
    cache.tanhc.resize(H);
    cache.h.resize(H);
    for (size_t k = 0; k < H; ++k) {
        cache.i[k] = sigmoid(z[k]);
        cache.f[k] = sigmoid(z[H + k]);
        cache.g[k] = std::tanh(z[2 * H + k]);
        cache.o[k] = sigmoid(z[3 * H + k]);
        cache.c[k] = cache.f[k] * c_prev[k] + cache.i[k] * cache.g[k];
        cache.tanhc[k] = std::tanh(cache.c[k]);
        cache.h[k] = cache.o[k] * cache.tanhc[k];
    }
}

ForwardCache run_forward(const ClassifierModel& m,
                         const std::vector<size_t>& token_ids) {
    ForwardCache fc;
    fc.ids = effective_ids(m, token_ids);
    const size_t T = fc.ids.size();
    const size_t D = m.config.embedding_dim;

    for (int l = 0; l < 3; ++l) fc.layers[l].resize(T);
    for (size_t t = 0; t < T; ++t) {
        // Layer 0 input: embedding row.
        const double* emb = m.embedding.data() + fc.ids[t] * D;
        fc.layers[0][t].x.assign(emb, emb + D);
        for (int l = 0; l < 3; ++l) {
            const LstmLayer& layer = m.lstm[l];
            if (l > 0) fc.layers[l][t].x = fc.layers[l - 1][t].h;
            std::vector<double> zeros(layer.out, 0.0);
            const double* h_prev =
                t > 0 ? fc.layers[l][t - 1].h.data() : zeros.data();
            const double* c_prev =
                t > 0 ? fc.layers[l][t - 1].c.data() : zeros.data();
            lstm_step(layer, fc.layers[l][t].x.data(), h_prev, c_prev,
                      fc.layers[l][t]);
        }
    }

    const size_t H2 = m.config.lstm_sizes[2];
    fc.h_final.assign(H2, 0.0);
    if (T > 0) fc.h_final = fc.layers[2][T - 1].h;

    fc.logits = {m.dense_b[0], m.dense_b[1]};
    matvec_add(m.dense_w, fc.h_final.data(), 2, H2, fc.logits.data());
    double mx = std::max(fc.logits[0], fc.logits[1]);
    double e0 = std::exp(fc.logits[0] - mx);
    double e1 = std::exp(fc.logits[1] - mx);
    fc.probs = {e0 / (e0 + e1), e1 / (e0 + e1)};
    return fc;
}

struct Gradients {
    // Aligned with the tensor registry; index 0 (embedding) is kept
    // sparsely as row -> gradient.
    std::vector<std::vector<double>> dense;
    std::map<size_t, std::vector<double>> embedding_rows;

    static Gradients zeros_like(ClassifierModel& m) {
        Gradients g;
        auto regs = tensors(m);
        g.dense.resize(regs.size());
        for (size_t i = 1; i < regs.size(); ++i) {
            g.dense[i].assign(regs[i].data->size(), 0.0);
        }
        return g;
    }
};

// Backward through one layer. dh_inject[t] is the gradient arriving at
// h_t from above (next layer's dx, or the dense head at the last step).
// Returns dx per timestep.
std::vector<std::vector<double>> backward_layer(
    const LstmLayer& layer, const std::vector<StepCache>& steps,
    const std::vector<std::vector<double>>& dh_inject, std::vector<double>& dw,
    std::vector<double>& du, std::vector<double>& db) {
    const size_t T = steps.size();
    const size_t H = layer.out;
    const size_t I = layer.in;
    std::vector<std::vector<double>> dx(T, std::vector<double>(I, 0.0));
    std::vector<double> dh_next(H, 0.0), dc_next(H, 0.0);
    std::vector<double> da(4 * H);
    for (size_t ti = T; ti-- > 0;) {
        const StepCache& s = steps[ti];
        std::vector<double> dh = dh_next;
        for (size_t k = 0; k < H; ++k) dh[k] += dh_inject[ti][k];
        std::vector<double> dc = dc_next;
        const double* c_prev = ti > 0 ? steps[ti - 1].c.data() : nullptr;
        const double* h_prev = ti > 0 ? steps[ti - 1].h.data() : nullptr;
        for (size_t k = 0; k < H; ++k) {
            dc[k] += dh[k] * s.o[k] * (1.0 - s.tanhc[k] * s.tanhc[k]);
            double do_ = dh[k] * s.tanhc[k];
            double di = dc[k] * s.g[k];
            double df = dc[k] * (ti > 0 ? c_prev[k] : 0.0);
            double dg = dc[k] * s.i[k];
            da[k] = di * s.i[k] * (1.0 - s.i[k]);
            da[H + k] = df * s.f[k] * (1.0 - s.f[k]);
            da[2 * H + k] = dg * (1.0 - s.g[k] * s.g[k]);
            da[3 * H + k] = do_ * s.o[k] * (1.0 - s.o[k]);
        }
        // Parameter gradients: dW += da x^T, dU += da h_prev^T, db += da.
        for (size_t r = 0; r < 4 * H; ++r) {
            double g = da[r];
            if (g == 0.0) continue;
            double* wrow = dw.data() + r * I;
            for (size_t c = 0; c < I; ++c) wrow[c] += g * s.x[c];
            if (ti > 0) {
                double* urow = du.data() + r * H;
                for (size_t c = 0; c < H; ++c) urow[c] += g * h_prev[c];
            }
            db[r] += g;
        }
        // Propagate to inputs and previous step.
        matvec_t_add(layer.w, da.data(), 4 * H, I, dx[ti].data());
        std::fill(dh_next.begin(), dh_next.end(), 0.0);
        matvec_t_add(layer.u, da.data(), 4 * H, H, dh_next.data());
        for (size_t k = 0; k < H; ++k) dc_next[k] = dc[k] * s.f[k];
    }
    return dx;
}

// Accumulates d(cross-entropy)/d(params) for one sentence, scaled, into g.
double backward_sentence(ClassifierModel& m, const ForwardCache& fc, int label,
                         double scale, Gradients& g) {
    const size_t T = fc.ids.size();
    const size_t H2 = m.config.lstm_sizes[2];
    const size_t D = m.config.embedding_dim;

    double ce = -std::log(std::max(fc.probs[label], 1e-300));

    std::array<double, 2> dlogits = fc.probs;
    dlogits[label] -= 1.0;
    dlogits[0] *= scale;
    dlogits[1] *= scale;

    // Dense head. Registry: 10 = dense.w, 11 = dense.b.
    std::vector<double> dh_final(H2, 0.0);
    for (int r = 0; r < 2; ++r) {
        for (size_t c = 0; c < H2; ++c) {
            g.dense[10][r * H2 + c] += dlogits[r] * fc.h_final[c];
            dh_final[c] += m.dense_w[r * H2 + c] * dlogits[r];
        }
        g.dense[11][r] += dlogits[r];
    }
    if (T == 0) return ce;

    // Injections per layer: last layer receives dh_final at the final step.
    std::vector<std::vector<double>> inject(
        T, std::vector<double>(m.lstm[2].out, 0.0));
    inject[T - 1] = dh_final;
    for (int l = 2; l >= 0; --l) {
        size_t wi = 1 + static_cast<size_t>(l) * 3;
        auto dx = backward_layer(m.lstm[l], fc.layers[l], inject,
                                 g.dense[wi], g.dense[wi + 1], g.dense[wi + 2]);
        if (l > 0) {
            inject = std::move(dx);
        } else {
            for (size_t t = 0; t < T; ++t) {
                auto& row = g.embedding_rows[fc.ids[t]];
                if (row.empty()) row.assign(D, 0.0);
                for (size_t d = 0; d < D; ++d) row[d] += dx[t][d];
            }
        }
    }
    return ce;
}

double l2_term(ClassifierModel& m) {
    if (m.config.l2_lambda == 0.0) return 0.0;
    double ss = 0.0;
    for (const auto& t : tensors(m)) {
        if (!t.l2) continue;
        for (double x : *t.data) ss += x * x;
    }
    return m.config.l2_lambda * ss;
}

void add_l2_gradients(ClassifierModel& m, Gradients& g) {
    if (m.config.l2_lambda == 0.0) return;
    auto regs = tensors(m);
    for (size_t i = 1; i < regs.size(); ++i) {
        if (!regs[i].l2) continue;
        const auto& p = *regs[i].data;
        for (size_t k = 0; k < p.size(); ++k) {
            g.dense[i][k] += 2.0 * m.config.l2_lambda * p[k];
        }
    }
}

void init_adam(ClassifierModel& m) {
    auto regs = tensors(m);
    m.adam.assign(regs.size(), {});
    for (size_t i = 0; i < regs.size(); ++i) {
        m.adam[i].m.assign(regs[i].data->size(), 0.0);
        m.adam[i].v.assign(regs[i].data->size(), 0.0);
    }
    m.adam_step = 0;
}

void adam_element(double grad, double& m1, double& m2, double& param,
                  uint64_t t, const TrainConfig& tc) {
    m1 = tc.beta1 * m1 + (1.0 - tc.beta1) * grad;
    m2 = tc.beta2 * m2 + (1.0 - tc.beta2) * grad * grad;
    double mhat = m1 / (1.0 - std::pow(tc.beta1, static_cast<double>(t)));
    double vhat = m2 / (1.0 - std::pow(tc.beta2, static_cast<double>(t)));
    param -= tc.learning_rate * mhat / (std::sqrt(vhat) + tc.adam_eps);
}

void apply_update(ClassifierModel& m, Gradients& g, const TrainConfig& tc) {
    ++m.adam_step;
    auto regs = tensors(m);
    // Embedding: lazy per-row updates keep untouched rows bit-identical.
    if (m.config.trainable_embeddings) {
        const size_t D = m.config.embedding_dim;
        for (auto& [row, grad] : g.embedding_rows) {
            for (size_t d = 0; d < D; ++d) {
                size_t k = row * D + d;
                adam_element(grad[d], m.adam[0].m[k], m.adam[0].v[k],
                             m.embedding[k], m.adam_step, tc);
            }
        }
    }
    for (size_t i = 1; i < regs.size(); ++i) {
        auto& p = *regs[i].data;
        for (size_t k = 0; k < p.size(); ++k) {
            adam_element(g.dense[i][k], m.adam[i].m[k], m.adam[i].v[k], p[k],
                         m.adam_step, tc);
        }
    }
}

}  // namespace

ClassifierModel build_model(const ModelConfig& cfg,
                            const EmbeddingMatrix* init) {
    if (cfg.num_classes != 2) {
        throw std::runtime_error("num_classes must be 2");
    }
    ClassifierModel m;
    m.config = cfg;
    Rng rng(cfg.seed);

    const size_t V = cfg.vocab.size();
    const size_t D = cfg.embedding_dim;
    if (init) {
        if (!(init->vocab == cfg.vocab)) {
            throw std::runtime_error(
                "build_model: init vocabulary does not match config");
        }
        if (init->dim != D) {
            throw std::runtime_error(
                "build_model: init dim " + std::to_string(init->dim) +
                " != embedding_dim " + std::to_string(D));
        }
        m.embedding = init->data;
    } else {
        m.embedding.resize(V * D);
        for (auto& x : m.embedding) x = rng.uniform(-0.05, 0.05);
    }

    size_t in = D;
    for (int l = 0; l < 3; ++l) {
        LstmLayer& layer = m.lstm[l];
        layer.in = in;
        layer.out = cfg.lstm_sizes[static_cast<size_t>(l)];
        double s = 1.0 / std::sqrt(static_cast<double>(layer.in));
        layer.w.resize(4 * layer.out * layer.in);
        for (auto& x : layer.w) x = rng.uniform(-s, s);
        double su = 1.0 / std::sqrt(static_cast<double>(layer.out));
        layer.u.resize(4 * layer.out * layer.out);
        for (auto& x : layer.u) x = rng.uniform(-su, su);
        layer.b.assign(4 * layer.out, 0.0);
        in = layer.out;
    }
    double sd = 1.0 / std::sqrt(static_cast<double>(in));
    m.dense_w.resize(2 * in);
    for (auto& x : m.dense_w) x = rng.uniform(-sd, sd);
    m.dense_b.assign(2, 0.0);

    init_adam(m);
    return m;
}

std::vector<size_t> to_ids(const std::vector<std::string>& tokens,
                           const Vocabulary& vocab) {
    std::vector<size_t> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) ids.push_back(vocab.id(t));
    return ids;
}

std::array<double, 2> forward(const ClassifierModel& m,
                              const std::vector<size_t>& token_ids) {
    return run_forward(m, token_ids).probs;
}

std::vector<double> sentence_representation(
    const ClassifierModel& m, const std::vector<size_t>& token_ids) {
    return run_forward(m, token_ids).h_final;
}

std::vector<EpochStats> train(ClassifierModel& m, const Dataset& data,
                              const TrainConfig& tc) {
    std::vector<EpochStats> history;
    if (tc.epochs <= 0) return history;
    if (data.size() == 0) throw std::runtime_error("train: empty dataset");
    if (data.count_label(1) == 0 || data.count_label(0) == 0) {
        throw std::runtime_error("train: both classes must be present");
    }
    m.phases.push_back(tc.phase);

    std::vector<std::vector<size_t>> ids(data.size());
    std::vector<int> labels(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
        ids[i] = to_ids(data.sentences[i].tokens, m.config.vocab);
        labels[i] = data.sentences[i].label;
    }

    std::vector<size_t> order(data.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(tc.shuffle_seed);

    for (int epoch = 0; epoch < tc.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        size_t correct = 0, batches = 0;
        for (size_t start = 0; start < order.size(); start += tc.batch_size) {
            size_t end = std::min(order.size(), start + tc.batch_size);
            double scale = 1.0 / static_cast<double>(end - start);
            Gradients g = Gradients::zeros_like(m);
            double batch_ce = 0.0;
            for (size_t k = start; k < end; ++k) {
                size_t i = order[k];
                ForwardCache fc = run_forward(m, ids[i]);
                if (fc.probs[labels[i]] > 0.5) ++correct;
                batch_ce += scale * backward_sentence(m, fc, labels[i], scale, g);
            }
            add_l2_gradients(m, g);
            double batch_loss = batch_ce + l2_term(m);
            if (!std::isfinite(batch_loss)) {
                throw std::runtime_error(
                    "train: non-finite loss at epoch " + std::to_string(epoch) +
                    ", batch " + std::to_string(batches));
            }
            apply_update(m, g, tc);
            epoch_loss += batch_loss;
            ++batches;
        }
        EpochStats st;
        st.loss = epoch_loss / static_cast<double>(batches);
        st.accuracy =
            static_cast<double>(correct) / static_cast<double>(data.size());
        if (tc.verbose) {
            std::cerr << "[" << tc.phase << "] epoch " << (epoch + 1) << "/"
                      << tc.epochs << " loss=" << st.loss
                      << " acc=" << st.accuracy << "\n";
        }
        history.push_back(st);
    }
    return history;
}

std::vector<EpochStats> fine_tune(ClassifierModel& m, const Dataset& data,
                                  const TrainConfig& tc) {
    init_adam(m);  // fresh optimizer state for the new phase
    return train(m, data, tc);
}

EmbeddingMatrix extract_embedding_layer(const ClassifierModel& m) {
    EmbeddingMatrix e;
    e.vocab = m.config.vocab;
    e.dim = m.config.embedding_dim;
    e.data = m.embedding;
    return e;
}

void adam_update_element(double grad, double& m1, double& m2, double& param,
                         uint64_t t, const TrainConfig& tc) {
    adam_element(grad, m1, m2, param, t, tc);
}

std::vector<std::pair<std::string, std::vector<double>>> batch_gradients(
    const ClassifierModel& model, const Dataset& batch) {
    if (batch.size() == 0) {
        throw std::runtime_error("batch_gradients: empty batch");
    }
    ClassifierModel m = model;
    Gradients g = Gradients::zeros_like(m);
    double scale = 1.0 / static_cast<double>(batch.size());
    for (const auto& s : batch.sentences) {
        auto ids = to_ids(s.tokens, m.config.vocab);
        ForwardCache fc = run_forward(m, ids);
        backward_sentence(m, fc, s.label, scale, g);
    }
    add_l2_gradients(m, g);

    std::vector<std::pair<std::string, std::vector<double>>> out;
    auto regs = tensors(m);
    std::vector<double> emb(m.embedding.size(), 0.0);
    const size_t D = m.config.embedding_dim;
    for (const auto& [row, grad] : g.embedding_rows) {
        std::copy(grad.begin(), grad.end(), emb.begin() + row * D);
    }
    out.emplace_back(regs[0].name, std::move(emb));
    for (size_t i = 1; i < regs.size(); ++i) {
        out.emplace_back(regs[i].name, std::move(g.dense[i]));
    }
    return out;
}

double gradient_check(const ClassifierModel& model, const Dataset& batch,
                      double eps) {
    if (eps <= 0.0) throw std::runtime_error("gradient_check: eps must be > 0");
    if (batch.size() == 0) throw std::runtime_error("gradient_check: empty batch");

    ClassifierModel m = model;  // working copy
    std::vector<std::vector<size_t>> ids(batch.size());
    std::vector<int> labels(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        ids[i] = to_ids(batch.sentences[i].tokens, m.config.vocab);
        labels[i] = batch.sentences[i].label;
    }
    double scale = 1.0 / static_cast<double>(batch.size());

    auto batch_loss = [&]() {
        double ce = 0.0;
        for (size_t i = 0; i < batch.size(); ++i) {
            ForwardCache fc = run_forward(m, ids[i]);
            ce += -std::log(std::max(fc.probs[labels[i]], 1e-300));
        }
        return scale * ce + l2_term(m);
    };

    // Analytic gradients.
    Gradients g = Gradients::zeros_like(m);
    for (size_t i = 0; i < batch.size(); ++i) {
        ForwardCache fc = run_forward(m, ids[i]);
        backward_sentence(m, fc, labels[i], scale, g);
    }
    add_l2_gradients(m, g);

    const size_t D = m.config.embedding_dim;
    auto analytic_embedding = [&](size_t k) {
        auto it = g.embedding_rows.find(k / D);
        return it == g.embedding_rows.end() ? 0.0 : it->second[k % D];
    };

    double max_rel = 0.0;
    auto regs = tensors(m);
    for (size_t ti = 0; ti < regs.size(); ++ti) {
        auto& p = *regs[ti].data;
        for (size_t k = 0; k < p.size(); ++k) {
            double saved = p[k];
            p[k] = saved + eps;
            double lp = batch_loss();
            p[k] = saved - eps;
            double lm = batch_loss();
            p[k] = saved;
            double gn = (lp - lm) / (2.0 * eps);
            double ga = ti == 0 ? analytic_embedding(k) : g.dense[ti][k];
            // Floor the denominator: below ~1e-6 the central difference
            // itself is dominated by floating-point cancellation, so such
            // parameters are compared on an absolute scale instead.
            double denom = std::max({std::fabs(ga), std::fabs(gn), 1e-6});
            max_rel = std::max(max_rel, std::fabs(ga - gn) / denom);
        }
    }
    return max_rel;
}

// ---------------------------------------------------------------------------
// Checkpointing

namespace {

constexpr char kMagic[8] = {'W', 'I', 'S', 'E', 'C', 'K', 'P', 'T'};
constexpr uint32_t kFormatVersion = 1;

void write_doubles(std::ostream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_doubles(std::istream& in, std::vector<double>& v, size_t n,
                  const std::string& field) {
    v.resize(n);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint truncated in field " + field);
}

}  // namespace

void save_model(const ClassifierModel& model, const std::string& path) {
    ClassifierModel& m = const_cast<ClassifierModel&>(model);
    auto regs = tensors(m);

    nlohmann::json header;
    header["format_version"] = kFormatVersion;
    nlohmann::json cfg;
    cfg["embedding_dim"] = m.config.embedding_dim;
    cfg["lstm_sizes"] = m.config.lstm_sizes;
    cfg["num_classes"] = m.config.num_classes;
    cfg["l2_lambda"] = m.config.l2_lambda;
    cfg["max_seq_len"] = m.config.max_seq_len;
    cfg["trainable_embeddings"] = m.config.trainable_embeddings;
    cfg["truncate_keep_tail"] = m.config.truncate_keep_tail;
    cfg["seed"] = m.config.seed;
    header["config"] = cfg;
    header["vocabulary"] = m.config.vocab.tokens();
    header["phases"] = m.phases;
    header["adam_step"] = m.adam_step;
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& t : regs) {
        manifest.push_back({{"name", t.name}, {"size", t.data->size()}});
    }
    header["tensors"] = manifest;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
    std::string hs = header.dump();
    uint64_t hlen = hs.size();
    out.write(kMagic, 8);
    out.write(reinterpret_cast<const char*>(&hlen), 8);
    out.write(hs.data(), static_cast<std::streamsize>(hs.size()));
    for (const auto& t : regs) write_doubles(out, *t.data);
    for (size_t i = 0; i < regs.size(); ++i) {
        write_doubles(out, m.adam[i].m);
        write_doubles(out, m.adam[i].v);
    }
}

ClassifierModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) {
        throw std::runtime_error("checkpoint magic mismatch in " + path);
    }
    uint64_t hlen = 0;
    in.read(reinterpret_cast<char*>(&hlen), 8);
    std::string hs(hlen, '\0');
    in.read(hs.data(), static_cast<std::streamsize>(hlen));
    if (!in) throw std::runtime_error("checkpoint truncated in field header");
    nlohmann::json header = nlohmann::json::parse(hs);
    uint32_t version = header.at("format_version");
    if (version != kFormatVersion) {
        throw std::runtime_error("unsupported format_version " +
                                 std::to_string(version) + " in " + path);
    }

    ClassifierModel m;
    const auto& cfg = header.at("config");
    m.config.embedding_dim = cfg.at("embedding_dim");
    m.config.lstm_sizes = cfg.at("lstm_sizes");
    m.config.num_classes = cfg.at("num_classes");
    m.config.l2_lambda = cfg.at("l2_lambda");
    m.config.max_seq_len = cfg.at("max_seq_len");
    m.config.trainable_embeddings = cfg.at("trainable_embeddings");
    m.config.truncate_keep_tail = cfg.at("truncate_keep_tail");
    m.config.seed = cfg.at("seed");
    std::vector<std::string> vocab_tokens = header.at("vocabulary");
    for (const auto& t : vocab_tokens) m.config.vocab.add(t);
    m.phases = header.at("phases").get<std::vector<std::string>>();
    m.adam_step = header.at("adam_step");

    // Rebuild tensor shapes from config, then fill from the manifest.
    size_t in_dim = m.config.embedding_dim;
    for (int l = 0; l < 3; ++l) {
        m.lstm[l].in = in_dim;
        m.lstm[l].out = m.config.lstm_sizes[static_cast<size_t>(l)];
        in_dim = m.lstm[l].out;
    }
    auto regs = tensors(m);
    const auto& manifest = header.at("tensors");
    if (manifest.size() != regs.size()) {
        throw std::runtime_error("checkpoint tensor manifest size mismatch");
    }
    for (size_t i = 0; i < regs.size(); ++i) {
        std::string name = manifest[i].at("name");
        size_t size = manifest[i].at("size");
        if (name != regs[i].name) {
            throw std::runtime_error("checkpoint tensor order mismatch at " +
                                     name);
        }
        read_doubles(in, *regs[i].data, size, name);
    }
    m.adam.resize(regs.size());
    for (size_t i = 0; i < regs.size(); ++i) {
        size_t size = manifest[i].at("size");
        read_doubles(in, m.adam[i].m, size, regs[i].name + ".adam.m");
        read_doubles(in, m.adam[i].v, size, regs[i].name + ".adam.v");
    }
    return m;
}

}  // namespace wise
