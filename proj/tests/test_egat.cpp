// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dvdet/model/egat.hpp"
#include "dvdet/nn/gradcheck.hpp"

using namespace dvdet;
using namespace dvdet::model;
using nn::Real;
using nn::Tensor;

namespace {

// Reference single-head GAT written against a dense adjacency matrix,
// independent of the adjacency-list implementation under test.
Tensor reference_gat(const std::vector<std::vector<bool>>& adj, const Tensor& x, const Tensor& w,
                     const Tensor& a, double slope) {
  const size_t n = x.rows(), in = x.cols(), out = w.cols();
  Tensor h({n, out});
  for (size_t i = 0; i < n; ++i) {
    for (size_t o = 0; o < out; ++o) {
      Real s = 0;
      for (size_t k = 0; k < in; ++k) s += x.at(i, k) * w.at(k, o);
      h.at(i, o) = s;
    }
  }
  Tensor y({n, out});
  for (size_t i = 0; i < n; ++i) {
    std::vector<Real> logits;
    std::vector<size_t> idx;
    for (size_t j = 0; j < n; ++j) {
      if (!adj[i][j] && j != i) continue;
      Real e = 0;
      for (size_t o = 0; o < out; ++o) e += a[o] * (h.at(i, o) + h.at(j, o));
      logits.push_back(e > 0 ? e : static_cast<Real>(slope) * e);
      idx.push_back(j);
    }
    const Real mx = *std::max_element(logits.begin(), logits.end());
    Real denom = 0;
    for (Real& l : logits) {
      l = std::exp(l - mx);
      denom += l;
    }
    for (size_t k = 0; k < idx.size(); ++k) {
      const Real att = logits[k] / denom;
      for (size_t o = 0; o < out; ++o) y.at(i, o) += att * h.at(idx[k], o);
    }
    for (size_t o = 0; o < out; ++o) {
      const Real v = y.at(i, o);
      y.at(i, o) = v > 0 ? v : std::expm1(v);
    }
  }
  return y;
}

GraphView view_of(size_t n, const std::vector<std::pair<size_t, size_t>>& edges,
                  const std::vector<double>& tiers, const std::vector<double>& weights) {
  ast::WeightedCodeGraph g;
  g.node_ids.resize(n);
  std::iota(g.node_ids.begin(), g.node_ids.end(), 0);
  g.edges = edges;
  g.node_tiers = tiers;
  g.edge_weights = weights;
  g.features = Tensor({n, 1});
  return GraphView::from(g);
}

Tensor random_tensor(const nn::CounterRng& rng, uint64_t stream, std::vector<size_t> shape) {
  Tensor t(std::move(shape));
  for (size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<Real>(rng.uniform_symmetric(stream, i, 0.8));
  }
  return t;
}

}  // namespace

TEST_CASE("unit edge importance degenerates to a plain GAT layer") {
  const nn::CounterRng rng(17);
  for (uint64_t trial = 0; trial < 20; ++trial) {
    const size_t n = 2 + rng.bits(trial, 0) % 5;
    const size_t in = 3, out = 4;

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<std::pair<size_t, size_t>> edges;
    uint64_t ctr = 1;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (rng.uniform(trial, ctr++) < 0.6) {
          adj[i][j] = adj[j][i] = true;
          edges.emplace_back(i, j);
        }
      }
    }
    GraphView view = view_of(n, edges, std::vector<double>(n, 1.0),
                             std::vector<double>(edges.size(), 1.0));

    EgatLayer layer("t", in, out, 0.2);
    nn::ParamStore store;
    layer.init_params(store, nn::CounterRng(trial + 100));
    Tensor x = random_tensor(rng, trial + 500, {n, in});

    Tensor got = layer.forward(view, x, store);
    Tensor want = reference_gat(adj, x, store.value("t.W"), store.value("t.a"), 0.2);
    REQUIRE(got.shape() == want.shape());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(got[i] - want[i]) < 1e-10);
    }
  }
}

TEST_CASE("an isolated node attends only to itself") {
  GraphView view = view_of(1, {}, {1.5}, {});
  EgatLayer layer("t", 2, 3, 0.2);
  nn::ParamStore store;
  layer.init_params(store, nn::CounterRng(1));
  Tensor x({1, 2}, {0.3, -0.7});

  Tensor y = layer.forward(view, x, store);
  const Tensor& w = store.value("t.W");
  for (size_t o = 0; o < 3; ++o) {
    Real pre = x.at(0, 0) * w.at(0, o) + x.at(0, 1) * w.at(1, o);
    CHECK(y.at(0, o) == doctest::Approx(pre > 0 ? pre : std::expm1(pre)).epsilon(1e-12));
  }
}

TEST_CASE("three-node path graph matches a scalar evaluation") {
  // nodes 0-1-2 in a path; tiers 2, 1.5, 1; hand-set 1x1 parameters
  GraphView view = view_of(3, {{0, 1}, {1, 2}}, {2.0, 1.5, 1.0}, {1.5, 1.0});
  EgatLayer layer("t", 1, 1, 0.2);
  nn::ParamStore store;
  store.create("t.W", {1, 1});
  store.create("t.a", {1});
  store.value("t.W")[0] = 0.5;
  store.value("t.a")[0] = -1.0;
  Tensor x({3, 1}, {1.0, -2.0, 3.0});

  // scalar-by-scalar evaluation of the layer formula
  const double h0 = 0.5 * 1.0, h1 = 0.5 * -2.0, h2 = 0.5 * 3.0;
  const double q0 = -h0, q1 = -h1, q2 = -h2;
  auto lrelu = [](double v) { return v > 0 ? v : 0.2 * v; };
  auto elu = [](double v) { return v > 0 ? v : std::exp(v) - 1.0; };
  // node 0: neighbors {0 (self, S=2), 1 (S=1.5)}
  const double e00 = lrelu((q0 + q0) * 2.0), e01 = lrelu((q0 + q1) * 1.5);
  const double m0 = std::max(e00, e01);
  const double a00 = std::exp(e00 - m0), a01 = std::exp(e01 - m0);
  const double y0 = elu((a00 * h0 + a01 * h1) / (a00 + a01));
  // node 1: neighbors {0 (1.5), 1 (self, 1.5), 2 (1.0)}
  const double e10 = lrelu((q1 + q0) * 1.5), e11 = lrelu((q1 + q1) * 1.5),
               e12 = lrelu((q1 + q2) * 1.0);
  const double m1 = std::max({e10, e11, e12});
  const double a10 = std::exp(e10 - m1), a11 = std::exp(e11 - m1), a12 = std::exp(e12 - m1);
  const double y1 = elu((a10 * h0 + a11 * h1 + a12 * h2) / (a10 + a11 + a12));
  // node 2: neighbors {1 (1.0), 2 (self, 1.0)}
  const double e21 = lrelu((q2 + q1) * 1.0), e22 = lrelu((q2 + q2) * 1.0);
  const double m2 = std::max(e21, e22);
  const double a21 = std::exp(e21 - m2), a22 = std::exp(e22 - m2);
  const double y2 = elu((a21 * h1 + a22 * h2) / (a21 + a22));

  Tensor y = layer.forward(view, x, store);
  CHECK(std::abs(y.at(0, 0) - y0) < 1e-10);
  CHECK(std::abs(y.at(1, 0) - y1) < 1e-10);
  CHECK(std::abs(y.at(2, 0) - y2) < 1e-10);
}

TEST_CASE("attention rows sum to one") {
  GraphView view = view_of(4, {{0, 1}, {0, 2}, {2, 3}}, {2, 1.25, 1, 1.5}, {1.25, 1, 1});
  EgatLayer layer("t", 3, 2, 0.2);
  nn::ParamStore store;
  layer.init_params(store, nn::CounterRng(2));
  Tensor x = random_tensor(nn::CounterRng(3), 0, {4, 3});

  EgatLayer::Cache cache;
  layer.forward(view, x, store, &cache);
  for (const auto& row : cache.attention) {
    Real sum = std::accumulate(row.begin(), row.end(), Real(0));
    CHECK(std::abs(sum - 1) < 1e-9);
  }
}

TEST_CASE("permutation equivariance of the layer, invariance of the readout") {
  const std::vector<std::pair<size_t, size_t>> edges{{0, 1}, {1, 2}, {0, 3}};
  const std::vector<double> tiers{2, 1.5, 1, 1.25};
  const std::vector<double> weights{1.5, 1, 1.25};
  GraphView view = view_of(4, edges, tiers, weights);

  EgatLayer layer("t", 2, 3, 0.2);
  nn::ParamStore store;
  layer.init_params(store, nn::CounterRng(4));
  Tensor x = random_tensor(nn::CounterRng(5), 0, {4, 2});

  // permutation pi: old -> new position
  const std::vector<size_t> pi{2, 0, 3, 1};
  std::vector<std::pair<size_t, size_t>> p_edges;
  for (auto [u, v] : edges) {
    size_t a = pi[u], b = pi[v];
    p_edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::vector<double> p_tiers(4);
  for (size_t i = 0; i < 4; ++i) p_tiers[pi[i]] = tiers[i];
  std::vector<double> p_weights = weights;  // parallel to p_edges, same order
  GraphView p_view = view_of(4, p_edges, p_tiers, p_weights);
  Tensor p_x({4, 2});
  for (size_t i = 0; i < 4; ++i) {
    for (size_t d = 0; d < 2; ++d) p_x.at(pi[i], d) = x.at(i, d);
  }

  Tensor y = layer.forward(view, x, store);
  Tensor p_y = layer.forward(p_view, p_x, store);
  for (size_t i = 0; i < 4; ++i) {
    for (size_t d = 0; d < 3; ++d) {
      CHECK(p_y.at(pi[i], d) == doctest::Approx(y.at(i, d)).epsilon(1e-12));
    }
  }

  auto r = graph_readout(y);
  auto p_r = graph_readout(p_y);
  for (size_t d = 0; d < 3; ++d) CHECK(r[d] == doctest::Approx(p_r[d]).epsilon(1e-12));
}

TEST_CASE("zero weight matrix makes layer output constant across nodes") {
  GraphView view = view_of(3, {{0, 1}, {1, 2}}, {1, 1, 1}, {1, 1});
  EgatLayer layer("t", 2, 2, 0.2);
  nn::ParamStore store;
  store.create("t.W", {2, 2});
  store.create("t.a", {2});
  store.value("t.a")[0] = 0.3;
  Tensor x = random_tensor(nn::CounterRng(6), 0, {3, 2});
  Tensor y = layer.forward(view, x, store);
  for (size_t i = 1; i < 3; ++i) {
    for (size_t d = 0; d < 2; ++d) CHECK(y.at(i, d) == y.at(0, d));
  }
}

TEST_CASE("graph readout means rows") {
  Tensor one({1, 3}, {1, 2, 3});
  CHECK(graph_readout(one) == std::vector<Real>{1, 2, 3});

  Tensor opposite({2, 2}, {1, -2, -1, 2});
  auto r = graph_readout(opposite);
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(0.0));

  Tensor m = random_tensor(nn::CounterRng(7), 0, {4, 5});
  auto got = graph_readout(m);
  for (size_t d = 0; d < 5; ++d) {
    Real mean = (m.at(0, d) + m.at(1, d) + m.at(2, d) + m.at(3, d)) / 4;
    CHECK(got[d] == doctest::Approx(mean).epsilon(1e-12));
  }

  CHECK_THROWS_AS(graph_readout(Tensor({0, 3})), std::invalid_argument);
}

TEST_CASE("encoder is deterministic in eval mode and errors on bad dims") {
  GraphView view = view_of(3, {{0, 1}, {1, 2}}, {2, 1, 1}, {1, 1});
  EgatEncoder encoder("enc", 4, {3}, 2, 0.5, 0.2);
  nn::ParamStore store;
  encoder.init_params(store, nn::CounterRng(8));
  Tensor x = random_tensor(nn::CounterRng(9), 0, {3, 4});

  const nn::CounterRng rng(10);
  Tensor a = encoder.forward(view, x, store, false, rng, 0);
  Tensor b = encoder.forward(view, x, store, false, rng, 1);
  CHECK(a == b);

  Tensor bad = random_tensor(nn::CounterRng(9), 0, {3, 5});
  CHECK_THROWS_AS(encoder.forward(view, bad, store, false, rng, 0), InvariantError);
}

TEST_CASE("training-mode dropout masks vary with the noise scope") {
  GraphView view = view_of(3, {{0, 1}, {1, 2}}, {1, 1, 1}, {1, 1});
  EgatEncoder encoder("enc", 4, {8}, 2, 0.5, 0.2);
  nn::ParamStore store;
  encoder.init_params(store, nn::CounterRng(8));
  Tensor x = random_tensor(nn::CounterRng(9), 0, {3, 4});
  const nn::CounterRng rng(10);
  Tensor a = encoder.forward(view, x, store, true, rng, 0);
  Tensor b = encoder.forward(view, x, store, true, rng, 0);
  Tensor c = encoder.forward(view, x, store, true, rng, 1);
  CHECK(a == b);       // same scope replays the same mask
  CHECK_FALSE(a == c); // different scope redraws it
}

TEST_CASE("egat encoder gradients match finite differences") {
  GraphView view = view_of(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {2, 1.5, 1, 1.25},
                           {1.5, 1, 1, 1.25});
  EgatEncoder encoder("enc", 3, {4, 3}, 2, 0.5, 0.2);
  nn::ParamStore store;
  encoder.init_params(store, nn::CounterRng(11));
  Tensor x = random_tensor(nn::CounterRng(12), 0, {4, 3});
  Tensor weights = random_tensor(nn::CounterRng(13), 0, {4, 2});
  const nn::CounterRng rng(14);

  auto f = [&] {
    Tensor y = encoder.forward(view, x, store, false, rng, 0);
    Real s = 0;
    for (size_t i = 0; i < y.size(); ++i) s += y[i] * weights[i];
    return s;
  };

  store.zero_grads();
  EgatEncoder::Cache cache;
  encoder.forward(view, x, store, false, rng, 0, &cache);
  encoder.backward(view, cache, weights, store);

  auto numeric = finite_diff_grad(f, store);
  CHECK(nn::max_grad_rel_error(store, numeric) < 1e-4);
}
