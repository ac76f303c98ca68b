#pragma once

#include <map>
#include <memory>
#include <string>

#include "wm4d/core/tensor.hpp"

namespace wm4d {

/// A named trainable array with its gradient and Adam moments.
struct Param {
  std::string name;
  Tensor value;
  Tensor grad;
  Tensor m;  // first moment
  Tensor v;  // second moment

  explicit Param(std::string n, Tensor val)
      : name(std::move(n)),
        value(std::move(val)),
        grad(Tensor::zeros(value.shape)),
        m(Tensor::zeros(value.shape)),
        v(Tensor::zeros(value.shape)) {}
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
};

/// Ordered map of named parameters; ordering is by name so that checkpoints,
/// gradient merges and optimizer sweeps are deterministic.
class ParamStore {
 public:
  Param& def(const std::string& name, Tensor init);
  Param& get(const std::string& name);
  const Param& get(const std::string& name) const;
  bool has(const std::string& name) const { return params_.count(name) > 0; }

  void zero_grad();
  void adam_step(const AdamConfig& cfg);  // uses and advances step_
  std::int64_t step_count() const { return step_; }
  void set_step_count(std::int64_t s) { step_ = s; }

  double grad_norm() const;
  std::int64_t total_size() const;

  template <typename Fn>
  void for_each(Fn&& fn) {
    for (auto& [k, p] : params_) fn(*p);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [k, p] : params_) fn(*p);
  }

 private:
  std::map<std::string, std::unique_ptr<Param>> params_;
  std::int64_t step_ = 0;
};

// Initializers.
Tensor init_xavier(std::vector<int> shape, RngStream& rng);
Tensor init_normal(std::vector<int> shape, RngStream& rng, double stddev);

}  // namespace wm4d
