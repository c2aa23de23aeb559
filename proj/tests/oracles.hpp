#pragma once

// Reference implementations the library is checked against. Deliberately
// naive: O(n^2) DFT, central differences, per-threshold counting.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "jamwatch/detector.hpp"
#include "jamwatch/nn/network.hpp"

namespace oracle {

using cd = std::complex<double>;

/// |DFT|^2 / (n fs), shifted so bin 0 sits at n/2.
inline std::vector<double> psd(std::span<const std::complex<float>> y, double fs) {
  const std::size_t n = y.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd acc = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * m) % n) / static_cast<double>(n);
      acc += cd(y[m].real(), y[m].imag()) * cd(std::cos(ang), std::sin(ang));
    }
    out[(k + n / 2) % n] = std::norm(acc) / (static_cast<double>(n) * fs);
  }
  return out;
}

struct SweepCounts {
  double p_fa, p_md;
};

inline SweepCounts count(std::span<const double> h0, std::span<const double> h1, double tau) {
  std::size_t fa = 0, md = 0;
  for (double s : h0) fa += s >= tau;
  for (double s : h1) md += s < tau;
  return {static_cast<double>(fa) / static_cast<double>(h0.size()),
          static_cast<double>(md) / static_cast<double>(h1.size())};
}

/// Loss used for gradient checks: L = sum_i w_i * y_i with fixed random w.
template <typename Net>
struct ProbeLoss {
  jamwatch::nn::Vector<double> w;

  double operator()(const Net& net, const jamwatch::nn::Tensor<double>& x) const {
    return jamwatch::nn::predict(net, x).data.dot(w);
  }
};

struct GradReport {
  double worst_param = 0;
  double worst_input = 0;
  std::size_t checked = 0;
};

/// Relative error |a - n| / max(|a|, |n|, floor) between analytic and
/// central-difference gradients, worst case over every parameter and input
/// entry (or a random subset of `max_per_tensor` entries when larger).
inline GradReport gradient_check(jamwatch::nn::Network<double> net, jamwatch::nn::Tensor<double> x,
                                 std::uint64_t seed, double h = 1e-3, std::size_t max_per_tensor = 200) {
  using namespace jamwatch::nn;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  ProbeLoss<Network<double>> loss{Vector<double>(net.output_shape().numel())};
  for (Index i = 0; i < loss.w.size(); ++i) loss.w[i] = u(rng);

  const auto acts = forward(net, x);
  const Tensor<double> upstream(net.output_shape(), loss.w);
  const auto g = backward(net, acts, upstream);

  auto rel = [](double a, double n) { return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6}); };
  auto pick = [&](Index size) {
    std::vector<Index> idx;
    if (static_cast<std::size_t>(size) <= max_per_tensor) {
      for (Index i = 0; i < size; ++i) idx.push_back(i);
    } else {
      std::uniform_int_distribution<Index> d(0, size - 1);
      for (std::size_t i = 0; i < max_per_tensor; ++i) idx.push_back(d(rng));
    }
    return idx;
  };

  GradReport r;
  for (std::size_t l = 0; l < net.size(); ++l) {
    for (int which = 0; which < 2; ++which) {
      const Index size = which == 0 ? net.params()[l].weight.size() : net.params()[l].bias.size();
      for (Index i : pick(size)) {
        auto value = [&](double delta) {
          auto& p = net.mutable_params()[l];
          double& v = which == 0 ? p.weight.data()[i] : p.bias.data()[i];
          const double old = v;
          v = old + delta;
          const double out = loss(net, x);
          v = old;
          return out;
        };
        const double numeric = (value(h) - value(-h)) / (2 * h);
        const double analytic = which == 0 ? g.params[l].weight.data()[i] : g.params[l].bias.data()[i];
        r.worst_param = std::max(r.worst_param, rel(analytic, numeric));
        ++r.checked;
      }
    }
  }
  for (Index i : pick(x.size())) {
    auto value = [&](double delta) {
      Tensor<double> xp = x;
      xp.data[i] += delta;
      return loss(net, xp);
    };
    const double numeric = (value(h) - value(-h)) / (2 * h);
    r.worst_input = std::max(r.worst_input, rel(g.input.data[i], numeric));
    ++r.checked;
  }
  return r;
}

/// Random tensor with entries in [-1, 1] kept away from 0 by `gap` so that
/// ReLU kinks and pooling ties are not straddled by the difference step.
inline jamwatch::nn::Tensor<double> random_tensor(const jamwatch::nn::Shape& s, std::uint64_t seed,
                                                  double gap = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(gap, 1.0);
  std::bernoulli_distribution sign(0.5);
  jamwatch::nn::Tensor<double> t(s);
  for (jamwatch::nn::Index i = 0; i < t.size(); ++i) t.data[i] = sign(rng) ? u(rng) : -u(rng);
  return t;
}

}  // namespace oracle
