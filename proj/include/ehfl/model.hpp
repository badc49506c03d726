#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ehfl/vec.hpp"

namespace ehfl::model {

using Vec = vec::Vec;

// Model vectors have even length 2N; the first half maps to the real parts
// and the second half to the imaginary parts of N complex symbols.
struct ComplexSymbolVector {
  Vec re;
  Vec im;
};

// Throws std::invalid_argument for odd-length input.
ComplexSymbolVector pack(const Vec& v);
// Exact inverse of pack (bit-identical round trip).
Vec unpack(const ComplexSymbolVector& c);

// A federated training task: per-device datasets plus loss/gradient
// evaluation. Implementations are pure with respect to the weights, so
// devices can be evaluated concurrently.
class LossTask {
 public:
  virtual ~LossTask() = default;

  virtual std::size_t dim() const = 0;
  virtual std::size_t device_count() const = 0;
  // |B_m|
  virtual std::size_t sample_count(std::size_t device) const = 0;
  std::size_t total_samples() const;

  // average per-sample loss over the device's dataset
  virtual double device_loss(std::size_t device, const Vec& theta) const = 0;

  // gradient of the average loss over `batch` (indices into the device
  // dataset); an empty batch means the full dataset. Throws if the device has
  // no data or theta has the wrong dimension.
  virtual void stochastic_gradient(std::size_t device, const Vec& theta,
                                   std::span<const std::uint32_t> batch, Vec& out) const = 0;

  // sum_m (|B_m|/B) F_m(theta)
  double global_loss(const Vec& theta) const;

  virtual bool classification() const { return false; }
  // fraction correct on the held-out test set; only for classification tasks
  virtual double test_accuracy(const Vec& /*theta*/) const;

  virtual Vec initial_weights(std::uint64_t /*master_seed*/) const { return Vec(dim(), 0.0); }

 protected:
  void check_device(std::size_t device) const;
  void check_dim(const Vec& theta) const;
};

// F_m(theta) = 0.5 * ||theta - c_m||^2 with per-device centers drawn from a
// seeded standard normal. Device samples are N(c_m, sample_stddev^2) points
// recentred so their mean is exactly c_m; the full-batch gradient is then
// theta - c_m and the minimiser is known in closed form.
class QuadraticTask final : public LossTask {
 public:
  QuadraticTask(std::size_t devices, std::size_t dim, std::vector<std::size_t> samples_per_device,
                std::uint64_t master_seed, double sample_stddev = 1.0);

  std::size_t dim() const override { return dim_; }
  std::size_t device_count() const override { return centers_.size(); }
  std::size_t sample_count(std::size_t device) const override;
  double device_loss(std::size_t device, const Vec& theta) const override;
  void stochastic_gradient(std::size_t device, const Vec& theta,
                           std::span<const std::uint32_t> batch, Vec& out) const override;

  const Vec& center(std::size_t device) const;
  // |B_m|/B-weighted mean of the centers
  Vec optimum() const;
  double optimal_loss() const;  // F(theta*)
  // Gamma = F* - sum_m p_m F_m*; for this task F_m* = 0, so Gamma = F*.
  double dataset_bias() const { return optimal_loss(); }

 private:
  std::size_t dim_;
  std::vector<Vec> centers_;
  std::vector<std::vector<Vec>> samples_;
};

// Binary logistic regression on synthetic Gaussian features with labels from
// a hidden separator plus margin noise.
class LogisticTask final : public LossTask {
 public:
  LogisticTask(std::size_t devices, std::size_t dim, std::vector<std::size_t> samples_per_device,
               std::uint64_t master_seed, std::size_t test_samples = 1024);

  std::size_t dim() const override { return dim_; }
  std::size_t device_count() const override { return data_.size(); }
  std::size_t sample_count(std::size_t device) const override;
  double device_loss(std::size_t device, const Vec& theta) const override;
  void stochastic_gradient(std::size_t device, const Vec& theta,
                           std::span<const std::uint32_t> batch, Vec& out) const override;
  bool classification() const override { return true; }
  double test_accuracy(const Vec& theta) const override;

 private:
  struct Sample {
    Vec x;
    double y;  // +1 / -1
  };
  std::size_t dim_;
  std::vector<std::vector<Sample>> data_;
  std::vector<Sample> test_;
};

// One-hidden-layer tanh network with softmax cross-entropy on a bundled toy
// two-class XOR-blob set; gradients by hand-written backprop.
class DenseNetTask final : public LossTask {
 public:
  DenseNetTask(std::size_t devices, std::vector<std::size_t> samples_per_device,
               std::uint64_t master_seed, std::size_t hidden = 16, std::size_t test_samples = 1024);

  std::size_t dim() const override { return dim_; }
  std::size_t device_count() const override { return data_.size(); }
  std::size_t sample_count(std::size_t device) const override;
  double device_loss(std::size_t device, const Vec& theta) const override;
  void stochastic_gradient(std::size_t device, const Vec& theta,
                           std::span<const std::uint32_t> batch, Vec& out) const override;
  bool classification() const override { return true; }
  double test_accuracy(const Vec& theta) const override;
  Vec initial_weights(std::uint64_t master_seed) const override;

  static constexpr std::size_t kInputDim = 2;
  static constexpr std::size_t kClasses = 2;

 private:
  struct Sample {
    double x[kInputDim];
    std::uint8_t label;
  };
  double sample_loss(const Vec& theta, const Sample& s, Vec* grad) const;

  std::size_t hidden_;
  std::size_t dim_;
  std::vector<std::vector<Sample>> data_;
  std::vector<Sample> test_;
};

}  // namespace ehfl::model
