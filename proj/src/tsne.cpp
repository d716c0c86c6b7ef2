#include "wise/tsne.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "wise/rng.hpp"

namespace wise {

namespace {

// Gaussian row conditional probabilities for one point, calibrated by
// bisection on the precision beta until the entropy matches
// log(perplexity).
void calibrate_row(const std::vector<double>& d2, size_t i, double perplexity,
                   std::vector<double>& p_row) {
    const size_t n = p_row.size();
    const double target = std::log(perplexity);
    double beta = 1.0, beta_min = -1e300, beta_max = 1e300;
    for (int iter = 0; iter < 200; ++iter) {
        double sum = 0.0;
        for (size_t j = 0; j < n; ++j) {
            p_row[j] = j == i ? 0.0 : std::exp(-beta * d2[j]);
            sum += p_row[j];
        }
        double entropy = 0.0;
        if (sum > 0.0) {
            for (size_t j = 0; j < n; ++j) {
                if (p_row[j] > 0.0) {
                    double p = p_row[j] / sum;
                    entropy -= p * std::log(p);
                }
            }
        }
        double diff = entropy - target;
        if (std::fabs(diff) < 1e-7) break;
        if (diff > 0.0) {
            beta_min = beta;
            beta = beta_max > 1e299 ? beta * 2.0 : (beta + beta_max) / 2.0;
        } else {
            beta_max = beta;
            beta = beta_min < -1e299 ? beta / 2.0 : (beta + beta_min) / 2.0;
        }
    }
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
        p_row[j] = j == i ? 0.0 : std::exp(-beta * d2[j]);
        sum += p_row[j];
    }
    if (sum <= 0.0) sum = 1.0;
    for (auto& p : p_row) p /= sum;
}

}  // namespace

std::vector<std::array<double, 2>> tsne_project(
    const std::vector<std::vector<double>>& vectors, const TsneConfig& cfg) {
    const size_t n = vectors.size();
    if (n < 5) throw std::runtime_error("tsne_project: need at least 5 points");
    if (!(cfg.perplexity < static_cast<double>(n))) {
        throw std::runtime_error("tsne_project: perplexity must be < N");
    }
    const size_t dim = vectors[0].size();
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw std::runtime_error("tsne_project: ragged input rows");
        }
        for (double x : v) {
            if (!std::isfinite(x)) {
                throw std::runtime_error("tsne_project: non-finite input");
            }
        }
    }

    // Pairwise squared distances.
    std::vector<std::vector<double>> d2(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (size_t k = 0; k < dim; ++k) {
                double d = vectors[i][k] - vectors[j][k];
                s += d * d;
            }
            d2[i][j] = d2[j][i] = s;
        }
    }

    // Symmetrized affinities.
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    {
        std::vector<double> row(n);
        for (size_t i = 0; i < n; ++i) {
            calibrate_row(d2[i], i, cfg.perplexity, row);
            for (size_t j = 0; j < n; ++j) p[i][j] = row[j];
        }
    }
    double psum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double v = (p[i][j] + p[j][i]);
            p[i][j] = p[j][i] = v;
            psum += 2.0 * v;
        }
    }
    for (auto& row : p) {
        for (auto& v : row) {
            v = std::max(v / psum, 1e-12) * cfg.early_exaggeration;
        }
    }

    Rng rng(cfg.seed);
    auto gaussian = [&rng]() {
        // Box-Muller
        double u1 = std::max(rng.next_double(), 1e-300);
        double u2 = rng.next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    std::vector<std::array<double, 2>> y(n);
    for (auto& pt : y) {
        pt[0] = gaussian() * 1e-4;
        pt[1] = gaussian() * 1e-4;
    }

    std::vector<std::array<double, 2>> dy(n), velocity(n, {0.0, 0.0});
    std::vector<std::array<double, 2>> gains(n, {1.0, 1.0});

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        // Student-t kernel.
        std::vector<std::vector<double>> num(n, std::vector<double>(n, 0.0));
        double qsum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                double dx = y[i][0] - y[j][0];
                double dz = y[i][1] - y[j][1];
                double v = 1.0 / (1.0 + dx * dx + dz * dz);
                num[i][j] = num[j][i] = v;
                qsum += 2.0 * v;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            dy[i] = {0.0, 0.0};
            for (size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                double q = std::max(num[i][j] / qsum, 1e-12);
                double mult = 4.0 * (p[i][j] - q) * num[i][j];
                dy[i][0] += mult * (y[i][0] - y[j][0]);
                dy[i][1] += mult * (y[i][1] - y[j][1]);
            }
        }
        double momentum = iter < cfg.exaggeration_iters ? 0.5 : 0.8;
        for (size_t i = 0; i < n; ++i) {
            for (int k = 0; k < 2; ++k) {
                bool same_sign = (dy[i][k] > 0.0) == (velocity[i][k] > 0.0);
                gains[i][k] = same_sign ? std::max(gains[i][k] * 0.8, 0.01)
                                        : gains[i][k] + 0.2;
                velocity[i][k] = momentum * velocity[i][k] -
                                 cfg.learning_rate * gains[i][k] * dy[i][k];
                y[i][k] += velocity[i][k];
            }
        }
        // Re-center.
        double mx = 0.0, mz = 0.0;
        for (const auto& pt : y) {
            mx += pt[0];
            mz += pt[1];
        }
        mx /= static_cast<double>(n);
        mz /= static_cast<double>(n);
        for (auto& pt : y) {
            pt[0] -= mx;
            pt[1] -= mz;
        }
        if (iter + 1 == cfg.exaggeration_iters) {
            for (auto& row : p) {
                for (auto& v : row) v /= cfg.early_exaggeration;
            }
        }
    }
    return y;
}

void export_projection(const std::vector<std::array<double, 2>>& points,
                       const std::vector<int>& labels,
                       const std::string& path) {
    if (points.size() != labels.size()) {
        throw std::runtime_error("export_projection: " +
                                 std::to_string(points.size()) +
                                 " points vs " + std::to_string(labels.size()) +
                                 " labels");
    }
    for (int l : labels) {
        if (l != 0 && l != 1) {
            throw std::runtime_error("export_projection: labels must be 0/1");
        }
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write projection: " + path);
    out << "x,y,label\n";
    char buf[80];
    for (size_t i = 0; i < points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%d\n", points[i][0],
                      points[i][1], labels[i]);
        out << buf;
    }
}

}  // namespace wise
