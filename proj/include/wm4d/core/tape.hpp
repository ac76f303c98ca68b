#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "wm4d/core/params.hpp"
#include "wm4d/core/tensor.hpp"

namespace wm4d::nn {

class Tape;

/// Lightweight handle to a tape node.
struct Var {
  Tape* tape = nullptr;
  int id = -1;
  bool valid() const { return tape != nullptr && id >= 0; }
};

/// Per-thread gradient buffer: parameter gradients are accumulated here and
/// merged into the store by the caller in a fixed order, which keeps
/// multi-threaded batch training bit-deterministic.
class GradSink {
 public:
  Tensor& of(const Param& p);
  void add_into(ParamStore& store) const;
  void clear() { grads_.clear(); }

 private:
  std::unordered_map<const Param*, Tensor> grads_;
};

/// Reverse-mode autodiff tape over dense double tensors. Nodes are created in
/// execution order, so reverse creation order is a valid reverse topological
/// order for backward().
class Tape {
 public:
  using BackFn = std::function<void(Tape&, const Tensor& gout)>;

  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) {}

  bool grad_enabled() const { return grad_enabled_; }

  Var constant(Tensor value);
  Var leaf(Tensor value);  // grad-tracked input (e.g. the latent being optimized)
  Var param(const Param& p, GradSink& sink);

  const Tensor& val(Var v) const { return nodes_[static_cast<std::size_t>(v.id)].value; }
  Tensor& grad(Var v);
  bool requires_grad(Var v) const {
    return nodes_[static_cast<std::size_t>(v.id)].requires_grad;
  }

  /// Seeds d(loss)/d(loss) = 1 (loss must be scalar) and propagates.
  void backward(Var loss);

  /// Accumulate into a node's gradient (no-op for untracked nodes).
  void accum_grad(Var v, const Tensor& g);

  std::size_t size() const { return nodes_.size(); }

  Var make_op(Tensor value, const std::vector<Var>& inputs, BackFn back);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    BackFn back;
    bool requires_grad = false;
  };

  std::vector<Node> nodes_;
  bool grad_enabled_;
};

// ---- generic elementwise / reduction ops ----
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double c);
Var add_rowvec(Var x, Var v);   // x: N x d, v: d (or 1 x d)
Var mul_rowvec(Var x, Var g);   // channel-wise gate broadcast over rows
Var relu(Var a);
Var sigmoid(Var a);
Var tanh_op(Var a);
Var clip(Var a, double lo, double hi);
Var sum_all(Var a);             // -> scalar [1]
Var mean_all(Var a);
Var sumsq(Var a);               // sum a^2
Var sse(Var a, Var b);          // sum (a-b)^2
Var mse(Var a, Var b);          // mean (a-b)^2
Var weighted_sse(Var a, Var b, Tensor weights);  // sum w*(a-b)^2, w constant

// ---- structure ops ----
Var matmul(Var a, Var b);                  // (N x K)(K x M)
Var linear(Var x, Var w, Var b);           // x: N x in, w: in x out, b: out
Var linear_nobias(Var x, Var w);
Var rows(Var x, int r0, int r1);           // half-open row slice
Var vcat(const std::vector<Var>& parts);   // stack rows
Var concat_cols(const std::vector<Var>& parts);
Var gather_rows(Var x, std::vector<int> idx);
Var mean_row_groups(Var x, int group_len);     // (G*g x d) -> (G x d)
Var replace_rows(Var x, Tensor clean, std::vector<std::uint8_t> mask);  // mask=1 rows substituted, grads cut
Var max_pool_rows(Var x);                  // N x d -> 1 x d, argmax routing
Var cosine_rows(Var a, Var b, double eps = 1e-8);  // N x d pairs -> N x 1

// ---- fused NN ops (hand-written backwards) ----
Var layer_norm(Var x, Var gain, Var bias, double eps = 1e-6);

/// Dense attention: every query row attends to every key row.
Var attention_full(Var q, Var k, Var v, int heads);

/// Block-diagonal attention: rows form G consecutive groups of group_len;
/// attention is restricted within each group.
Var grouped_attention(Var q, Var k, Var v, int group_len, int heads);

/// Query i attends to key rows [i*j_per_query, (i+1)*j_per_query).
Var rowwise_attention(Var q, Var k, Var v, int j_per_query, int heads);

/// Query i attends to key rows idx[i*window+w]; negative index = masked out.
Var indexed_attention(Var q, Var k, Var v, std::vector<int> idx, int window);

/// Same-padded 1-D convolution over time. x: T x Cin, w: Cout x (Cin*k), b: Cout.
Var conv1d(Var x, Var w, Var b, int kernel, int dilation);

/// Bilinear sampling with border clamp. f: (h*w) x C feature grid, p: M x 2
/// continuous (x=col, y=row) positions; differentiable in f and p.
Var bilinear_sample(Var f, Var p, int h, int w);

}  // namespace wm4d::nn
