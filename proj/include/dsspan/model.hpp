#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsspan/features.hpp"
#include "dsspan/graph.hpp"
#include "dsspan/rng.hpp"

namespace dsspan {

struct ModelConfig {
  int embedding_dim = 64;
  double learning_rate = 1.0;
  int epochs = 5;

  void check() const {
    if (embedding_dim < 1) throw Error("embedding_dim must be >= 1");
    if (epochs < 0) throw Error("epochs must be >= 0");
  }
};

// Shallow two-matrix softmax network: h = W^T x, u = Wout^T h, y = softmax(u).
// W is input_dim x embedding_dim row-major, Wout embedding_dim x class_count.
struct EmbedModel {
  int input_dim = 0;
  int embedding_dim = 0;
  int class_count = 0;
  std::vector<double> w;
  std::vector<double> w_out;

  static EmbedModel init(int input_dim, int embedding_dim, int class_count, Rng& rng) {
    EmbedModel m;
    m.input_dim = input_dim;
    m.embedding_dim = embedding_dim;
    m.class_count = class_count;
    m.w.resize(static_cast<std::size_t>(input_dim) * embedding_dim);
    m.w_out.resize(static_cast<std::size_t>(embedding_dim) * class_count);
    const double half = 0.5 / embedding_dim;
    for (double& v : m.w) v = (rng.unit() * 2.0 - 1.0) * half;
    for (double& v : m.w_out) v = (rng.unit() * 2.0 - 1.0) * half;
    return m;
  }

  bool finite() const {
    for (double v : w)
      if (!std::isfinite(v)) return false;
    for (double v : w_out)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

inline std::vector<double> hidden(const EmbedModel& m, std::span<const double> x) {
  std::vector<double> h(static_cast<std::size_t>(m.embedding_dim), 0.0);
  for (int k = 0; k < m.input_dim; ++k) {
    const double xk = x[static_cast<std::size_t>(k)];
    if (xk == 0.0) continue;
    const double* wrow = &m.w[static_cast<std::size_t>(k) * m.embedding_dim];
    for (int e = 0; e < m.embedding_dim; ++e) h[static_cast<std::size_t>(e)] += xk * wrow[e];
  }
  return h;
}

inline std::vector<double> softmax(std::vector<double> u) {
  double mx = u[0];
  for (double v : u) mx = std::max(mx, v);
  double sum = 0.0;
  for (double& v : u) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : u) v /= sum;
  return u;
}

// Class distribution for one feature vector. A zero input yields the uniform
// distribution.
inline std::vector<double> forward(const EmbedModel& m, std::span<const double> x) {
  const std::vector<double> h = hidden(m, x);
  std::vector<double> u(static_cast<std::size_t>(m.class_count), 0.0);
  for (int e = 0; e < m.embedding_dim; ++e) {
    const double he = h[static_cast<std::size_t>(e)];
    if (he == 0.0) continue;
    const double* orow = &m.w_out[static_cast<std::size_t>(e) * m.class_count];
    for (int c = 0; c < m.class_count; ++c) u[static_cast<std::size_t>(c)] += he * orow[c];
  }
  return softmax(std::move(u));
}

// Argmax with ties broken toward the lowest class id.
inline int predict(const EmbedModel& m, std::span<const double> x) {
  const std::vector<double> p = forward(m, x);
  int best = 0;
  for (int c = 1; c < m.class_count; ++c) {
    if (p[static_cast<std::size_t>(c)] > p[static_cast<std::size_t>(best)]) best = c;
  }
  return best;
}

inline double total_loss(const EmbedModel& m, const FeatureMatrix& x,
                         std::span<const int> labels) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const std::vector<double> p = forward(m, x.rows[i]);
    loss -= std::log(p[static_cast<std::size_t>(labels[i])]);
  }
  return loss;
}

// Full-batch gradients of the cross-entropy loss w.r.t. W and Wout,
// in the same layouts as the parameters.
inline std::pair<std::vector<double>, std::vector<double>> gradients(
    const EmbedModel& m, const FeatureMatrix& x, std::span<const int> labels) {
  std::vector<double> gw(m.w.size(), 0.0);
  std::vector<double> gout(m.w_out.size(), 0.0);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const std::vector<double>& xi = x.rows[i];
    const std::vector<double> h = hidden(m, xi);
    std::vector<double> u(static_cast<std::size_t>(m.class_count), 0.0);
    for (int e = 0; e < m.embedding_dim; ++e) {
      for (int c = 0; c < m.class_count; ++c) {
        u[static_cast<std::size_t>(c)] +=
            h[static_cast<std::size_t>(e)] * m.w_out[static_cast<std::size_t>(e) * m.class_count + c];
      }
    }
    std::vector<double> du = softmax(std::move(u));
    du[static_cast<std::size_t>(labels[i])] -= 1.0;  // softmax minus one-hot
    std::vector<double> dh(static_cast<std::size_t>(m.embedding_dim), 0.0);
    for (int e = 0; e < m.embedding_dim; ++e) {
      for (int c = 0; c < m.class_count; ++c) {
        gout[static_cast<std::size_t>(e) * m.class_count + c] +=
            h[static_cast<std::size_t>(e)] * du[static_cast<std::size_t>(c)];
        dh[static_cast<std::size_t>(e)] +=
            m.w_out[static_cast<std::size_t>(e) * m.class_count + c] * du[static_cast<std::size_t>(c)];
      }
    }
    for (int k = 0; k < m.input_dim; ++k) {
      const double xk = xi[static_cast<std::size_t>(k)];
      if (xk == 0.0) continue;
      for (int e = 0; e < m.embedding_dim; ++e) {
        gw[static_cast<std::size_t>(k) * m.embedding_dim + e] +=
            xk * dh[static_cast<std::size_t>(e)];
      }
    }
  }
  return {std::move(gw), std::move(gout)};
}

// Per-example gradient descent in seeded shuffled order. Returns the mean
// loss per epoch, measured on the forward pass before each update.
inline std::vector<double> train(EmbedModel& m, const FeatureMatrix& x,
                                 std::span<const int> labels, const ModelConfig& cfg, Rng& rng) {
  cfg.check();
  if (x.rows.size() != labels.size()) throw Error("train: rows and labels disagree");
  std::vector<double> trace;
  if (x.rows.empty()) return trace;

  std::vector<int> order(x.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  std::vector<double> dh(static_cast<std::size_t>(m.embedding_dim));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (int idx : order) {
      const std::vector<double>& xi = x.rows[static_cast<std::size_t>(idx)];
      const int y = labels[static_cast<std::size_t>(idx)];
      const std::vector<double> h = hidden(m, xi);
      std::vector<double> u(static_cast<std::size_t>(m.class_count), 0.0);
      for (int e = 0; e < m.embedding_dim; ++e) {
        for (int c = 0; c < m.class_count; ++c) {
          u[static_cast<std::size_t>(c)] +=
              h[static_cast<std::size_t>(e)] *
              m.w_out[static_cast<std::size_t>(e) * m.class_count + c];
        }
      }
      std::vector<double> du = softmax(std::move(u));
      loss_sum -= std::log(du[static_cast<std::size_t>(y)]);
      du[static_cast<std::size_t>(y)] -= 1.0;

      std::fill(dh.begin(), dh.end(), 0.0);
      for (int e = 0; e < m.embedding_dim; ++e) {
        double* orow = &m.w_out[static_cast<std::size_t>(e) * m.class_count];
        const double he = h[static_cast<std::size_t>(e)];
        for (int c = 0; c < m.class_count; ++c) {
          dh[static_cast<std::size_t>(e)] += orow[c] * du[static_cast<std::size_t>(c)];
          orow[c] -= cfg.learning_rate * he * du[static_cast<std::size_t>(c)];
        }
      }
      for (int k = 0; k < m.input_dim; ++k) {
        const double xk = xi[static_cast<std::size_t>(k)];
        if (xk == 0.0) continue;
        double* wrow = &m.w[static_cast<std::size_t>(k) * m.embedding_dim];
        for (int e = 0; e < m.embedding_dim; ++e) {
          wrow[e] -= cfg.learning_rate * xk * dh[static_cast<std::size_t>(e)];
        }
      }
    }
    trace.push_back(loss_sum / static_cast<double>(x.rows.size()));
    if (!std::isfinite(trace.back()) || !m.finite()) {
      throw Error("train: non-finite parameters at epoch " + std::to_string(epoch));
    }
  }
  return trace;
}

}  // namespace dsspan
