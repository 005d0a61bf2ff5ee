// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "dvdet/errors.hpp"
#include "dvdet/nn/checkpoint.hpp"
#include "dvdet/nn/gradcheck.hpp"
#include "dvdet/nn/ops.hpp"
#include "dvdet/nn/optim.hpp"

using namespace dvdet;
using namespace dvdet::nn;

TEST_CASE("softmax symmetry and stability") {
  auto u = softmax(std::vector<Real>{0, 0, 0});
  for (Real v : u) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));

  auto stable = softmax(std::vector<Real>{1000, 0});
  CHECK(stable[0] == doctest::Approx(1.0));
  CHECK(stable[1] == doctest::Approx(0.0));
  CHECK(std::isfinite(stable[0]));

  CHECK_THROWS_AS(softmax(std::vector<Real>{}), std::invalid_argument);
}

TEST_CASE("softmax matches the naive formula and sums to one") {
  const CounterRng rng(11);
  for (uint64_t t = 0; t < 200; ++t) {
    std::vector<Real> v(5);
    for (size_t i = 0; i < v.size(); ++i) {
      v[i] = static_cast<Real>(rng.uniform_symmetric(t, i, 3.0));
    }
    auto got = softmax(v);
    // naive exp/sum oracle
    Real denom = 0;
    for (Real x : v) denom += std::exp(x);
    Real sum = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      CHECK(std::abs(got[i] - std::exp(v[i]) / denom) < 1e-12);
      CHECK(got[i] > 0);
      sum += got[i];
    }
    CHECK(std::abs(sum - 1) < 1e-9);
  }
}

TEST_CASE("cross entropy") {
  std::vector<Real> onehot{0, 1, 0};
  CHECK(cross_entropy(std::vector<Real>{0, 1, 0}, onehot) == doctest::Approx(0));
  CHECK(cross_entropy(std::vector<Real>{0.25, 0.25, 0.25, 0.25}, size_t{2}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));

  const CounterRng rng(12);
  for (uint64_t t = 0; t < 100; ++t) {
    std::vector<Real> p(4);
    Real sum = 0;
    for (size_t i = 0; i < 4; ++i) {
      p[i] = static_cast<Real>(0.05 + rng.uniform(t, i));
      sum += p[i];
    }
    for (Real& x : p) x /= sum;
    const size_t y = rng.bits(t, 99) % 4;
    std::vector<Real> onehot_y(4, 0);
    onehot_y[y] = 1;
    // direct -sum y log p
    Real expected = 0;
    for (size_t i = 0; i < 4; ++i) expected -= onehot_y[i] * std::log(p[i]);
    CHECK(std::abs(cross_entropy(p, onehot_y) - expected) < 1e-10);
  }

  CHECK_THROWS_AS(cross_entropy(std::vector<Real>{1, 0}, std::vector<Real>{1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cross_entropy(std::vector<Real>{0.5, 0.5}, std::vector<Real>{1, 1}),
                  std::invalid_argument);
  // clamp keeps the loss finite at p = 0
  CHECK(std::isfinite(cross_entropy(std::vector<Real>{1, 0}, size_t{1})));
}

TEST_CASE("adam first step moves a scalar by about lr") {
  ParamStore store;
  store.create("w", {1});
  store.value("w")[0] = 1;
  store.grad("w")[0] = 1;
  adam_step(store, {.lr = 0.01}, 1);
  // m^ = v^ = 1 after bias correction, so the step is lr/(1 + eps)
  CHECK(store.value("w")[0] == doctest::Approx(1 - 0.01).epsilon(1e-6));
  CHECK(store.grad("w")[0] == 0);  // grads zeroed
}

TEST_CASE("adam leaves parameters alone under zero gradients") {
  ParamStore store;
  const CounterRng rng(5);
  store.create_glorot("w", {3, 4}, rng);
  Tensor before = store.value("w");
  for (long t = 1; t <= 3; ++t) adam_step(store, {}, t);
  CHECK(store.value("w") == before);
}

TEST_CASE("adam under constant gradient moves monotonically against it") {
  ParamStore store;
  store.create("w", {1});
  Real prev = store.value("w")[0];
  for (long t = 1; t <= 5; ++t) {
    store.grad("w")[0] = 2.5;
    adam_step(store, {.lr = 0.01}, t);
    CHECK(store.value("w")[0] < prev);
    prev = store.value("w")[0];
  }
}

TEST_CASE("cosine annealing endpoints and midpoint") {
  CHECK(cosine_lr(0, 100, 0.01) == doctest::Approx(0.01));
  CHECK(cosine_lr(100, 100, 0.01) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cosine_lr(50, 100, 0.01) == doctest::Approx(0.005));
  CHECK_THROWS_AS(cosine_lr(101, 100, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(cosine_lr(-1, 100, 0.01), std::invalid_argument);
}

TEST_CASE("dropout mask") {
  const CounterRng rng(9);
  auto ones = dropout_mask({10}, 0.0, rng, 1, 0, true);
  for (size_t i = 0; i < ones.size(); ++i) CHECK(ones[i] == 1);

  auto eval = dropout_mask({10}, 0.9, rng, 1, 0, false);
  for (size_t i = 0; i < eval.size(); ++i) CHECK(eval[i] == 1);

  auto mask = dropout_mask({10000}, 0.5, rng, 1, 0, true);
  size_t kept = 0;
  for (size_t i = 0; i < mask.size(); ++i) {
    CHECK((mask[i] == 0 || mask[i] == 2));
    if (mask[i] != 0) ++kept;
  }
  const double fraction = static_cast<double>(kept) / 10000.0;
  CHECK(fraction == doctest::Approx(0.5).epsilon(0.04));

  CHECK_THROWS_AS(dropout_mask({4}, 1.0, rng, 1, 0, true), std::invalid_argument);
  // same (stream, counter) replays the same mask
  CHECK(dropout_mask({64}, 0.5, rng, 7, 3, true) == dropout_mask({64}, 0.5, rng, 7, 3, true));
}

TEST_CASE("finite differences recover analytic gradients") {
  ParamStore store;
  const CounterRng rng(21);
  store.create_glorot("w", {6}, rng);

  SUBCASE("quadratic") {
    auto f = [&] {
      Real s = 0;
      const Tensor& w = store.value("w");
      for (size_t i = 0; i < w.size(); ++i) s += w[i] * w[i];
      return s / 2;
    };
    auto grads = finite_diff_grad(f, store);
    const Tensor& w = store.value("w");
    for (size_t i = 0; i < w.size(); ++i) {
      CHECK(grads.at("w")[i] == doctest::Approx(w[i]).epsilon(1e-6));
    }
  }
  SUBCASE("constant function has zero gradient") {
    auto grads = finite_diff_grad([] { return Real(3.5); }, store);
    for (size_t i = 0; i < grads.at("w").size(); ++i) {
      CHECK(grads.at("w")[i] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("checkpoint round trip is bit exact") {
  ParamStore store;
  const CounterRng rng(33);
  store.create_glorot("a.W", {4, 3}, rng);
  store.create_glorot("b.vec", {7}, rng);

  const auto path = std::filesystem::temp_directory_path() / "dvdet_ckpt_test.bin";
  save_checkpoint(path, store, "{\"note\":\"test\"}");
  CHECK(read_checkpoint_meta(path) == "{\"note\":\"test\"}");

  ParamStore loaded;
  loaded.create("a.W", {4, 3});
  loaded.create("b.vec", {7});
  load_checkpoint(path, loaded);
  CHECK(loaded.value("a.W") == store.value("a.W"));
  CHECK(loaded.value("b.vec") == store.value("b.vec"));

  ParamStore wrong_shape;
  wrong_shape.create("a.W", {3, 4});
  wrong_shape.create("b.vec", {7});
  CHECK_THROWS_AS(load_checkpoint(path, wrong_shape), CheckpointError);

  ParamStore missing;
  missing.create("a.W", {4, 3});
  CHECK_THROWS_AS(load_checkpoint(path, missing), CheckpointError);

  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_checkpoint_meta(path), CheckpointError);
}

TEST_CASE("tensor finiteness and shape checks") {
  Tensor t({2, 2});
  CHECK(t.all_finite());
  t[0] = std::numeric_limits<Real>::infinity();
  CHECK_FALSE(t.all_finite());
  CHECK_THROWS_AS(Tensor({2, 2}, {1, 2, 3}), InvariantError);

  ParamStore store;
  store.create("x", {2});
  CHECK_THROWS_AS(store.create("x", {2}), InvariantError);
  CHECK_THROWS_AS(store.value("nope"), InvariantError);
}
