#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "wm4d/core/error.hpp"
#include "wm4d/core/rng.hpp"

namespace wm4d {

/// Dense row-major double tensor. Small, value-semantic; all shapes at desk
/// scale, so no views or reference counting.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
    data.assign(static_cast<std::size_t>(count(shape)), 0.0);
  }

  static std::int64_t count(const std::vector<int>& s) {
    std::int64_t n = 1;
    for (int d : s) {
      require(d >= 0, "ShapeError", "negative dimension");
      n *= d;
    }
    return n;
  }

  static Tensor zeros(std::vector<int> s) { return Tensor(std::move(s)); }

  static Tensor full(std::vector<int> s, double v) {
    Tensor t(std::move(s));
    std::fill(t.data.begin(), t.data.end(), v);
    return t;
  }

  static Tensor randn(std::vector<int> s, RngStream& rng, double stddev = 1.0) {
    Tensor t(std::move(s));
    for (double& x : t.data) x = stddev * rng.normal();
    return t;
  }

  static Tensor from(std::vector<int> s, std::vector<double> values) {
    require(count(s) == static_cast<std::int64_t>(values.size()), "ShapeError",
            "value count does not match shape");
    Tensor t;
    t.shape = std::move(s);
    t.data = std::move(values);
    return t;
  }

  std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
  int ndim() const { return static_cast<int>(shape.size()); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }

  // 2-D accessors (rows x cols); used pervasively by the NN ops.
  int rows() const { return ndim() == 2 ? shape[0] : (ndim() == 1 ? shape[0] : -1); }
  int cols() const { return ndim() == 2 ? shape[1] : (ndim() == 1 ? 1 : -1); }
  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * shape[1] + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * shape[1] + j]; }

  double& operator[](std::int64_t i) { return data[static_cast<std::size_t>(i)]; }
  double operator[](std::int64_t i) const { return data[static_cast<std::size_t>(i)]; }

  bool all_finite() const;
  double max_abs() const;
};

}  // namespace wm4d
