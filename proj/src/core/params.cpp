#include "wm4d/core/params.hpp"

#include <cmath>

#include "wm4d/core/error.hpp"

namespace wm4d {

Param& ParamStore::def(const std::string& name, Tensor init) {
  require(params_.count(name) == 0, "ConfigError", "duplicate parameter " + name);
  auto p = std::make_unique<Param>(name, std::move(init));
  Param& ref = *p;
  params_.emplace(name, std::move(p));
  return ref;
}

Param& ParamStore::get(const std::string& name) {
  auto it = params_.find(name);
  require(it != params_.end(), "MissingArtifact", "unknown parameter " + name);
  return *it->second;
}

const Param& ParamStore::get(const std::string& name) const {
  auto it = params_.find(name);
  require(it != params_.end(), "MissingArtifact", "unknown parameter " + name);
  return *it->second;
}

void ParamStore::zero_grad() {
  for (auto& [k, p] : params_) std::fill(p->grad.data.begin(), p->grad.data.end(), 0.0);
}

void ParamStore::adam_step(const AdamConfig& cfg) {
  ++step_;
  const double b1t = 1.0 - std::pow(cfg.beta1, static_cast<double>(step_));
  const double b2t = 1.0 - std::pow(cfg.beta2, static_cast<double>(step_));
  for (auto& [k, p] : params_) {
    double* w = p->value.ptr();
    double* g = p->grad.ptr();
    double* m = p->m.ptr();
    double* v = p->v.ptr();
    const std::int64_t n = p->value.numel();
    for (std::int64_t i = 0; i < n; ++i) {
      double gi = g[i] + cfg.weight_decay * w[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
      const double mhat = m[i] / b1t;
      const double vhat = v[i] / b2t;
      w[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

double ParamStore::grad_norm() const {
  double s = 0.0;
  for (const auto& [k, p] : params_)
    for (double g : p->grad.data) s += g * g;
  return std::sqrt(s);
}

std::int64_t ParamStore::total_size() const {
  std::int64_t n = 0;
  for (const auto& [k, p] : params_) n += p->value.numel();
  return n;
}

Tensor init_xavier(std::vector<int> shape, RngStream& rng) {
  require(shape.size() == 2, "ShapeError", "xavier init expects a matrix");
  const double s = std::sqrt(2.0 / static_cast<double>(shape[0] + shape[1]));
  return Tensor::randn(std::move(shape), rng, s);
}

Tensor init_normal(std::vector<int> shape, RngStream& rng, double stddev) {
  return Tensor::randn(std::move(shape), rng, stddev);
}

}  // namespace wm4d
