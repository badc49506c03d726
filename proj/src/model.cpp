#include "ehfl/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ehfl/rng.hpp"

namespace ehfl::model {

ComplexSymbolVector pack(const Vec& v) {
  if (v.size() % 2 != 0) throw std::invalid_argument("pack: vector length must be even");
  const std::size_t n = v.size() / 2;
  ComplexSymbolVector c;
  c.re.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  c.im.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
  return c;
}

Vec unpack(const ComplexSymbolVector& c) {
  if (c.re.size() != c.im.size())
    throw std::invalid_argument("unpack: re/im length mismatch");
  Vec v;
  v.reserve(2 * c.re.size());
  v.insert(v.end(), c.re.begin(), c.re.end());
  v.insert(v.end(), c.im.begin(), c.im.end());
  return v;
}

std::size_t LossTask::total_samples() const {
  std::size_t b = 0;
  for (std::size_t m = 0; m < device_count(); ++m) b += sample_count(m);
  return b;
}

double LossTask::global_loss(const Vec& theta) const {
  check_dim(theta);
  const double b = static_cast<double>(total_samples());
  double loss = 0.0;
  for (std::size_t m = 0; m < device_count(); ++m) {
    loss += static_cast<double>(sample_count(m)) / b * device_loss(m, theta);
  }
  return loss;
}

double LossTask::test_accuracy(const Vec&) const {
  return std::numeric_limits<double>::quiet_NaN();
}

void LossTask::check_device(std::size_t device) const {
  if (device >= device_count()) throw std::invalid_argument("task: device index out of range");
}

void LossTask::check_dim(const Vec& theta) const {
  if (theta.size() != dim()) throw std::invalid_argument("task: weight dimension mismatch");
}

// ---------------------------------------------------------------------------
// QuadraticTask

QuadraticTask::QuadraticTask(std::size_t devices, std::size_t dim,
                             std::vector<std::size_t> samples_per_device,
                             std::uint64_t master_seed, double sample_stddev)
    : dim_(dim) {
  if (devices == 0) throw std::invalid_argument("QuadraticTask: need at least one device");
  if (dim == 0 || dim % 2 != 0)
    throw std::invalid_argument("QuadraticTask: dimension must be positive and even");
  if (samples_per_device.size() != devices)
    throw std::invalid_argument("QuadraticTask: one sample count per device required");

  centers_.resize(devices);
  samples_.resize(devices);
  for (std::size_t m = 0; m < devices; ++m) {
    const std::size_t nm = samples_per_device[m];
    if (nm == 0) throw std::invalid_argument("QuadraticTask: empty dataset");
    rng::Generator gc(master_seed, rng::Stream::task_setup, m);
    Vec& c = centers_[m];
    c.resize(dim);
    for (double& x : c) x = gc.normal();

    rng::Generator gs(master_seed, rng::Stream::data_samples, m);
    auto& pts = samples_[m];
    pts.assign(nm, Vec(dim, 0.0));
    Vec mean(dim, 0.0);
    for (auto& p : pts) {
      for (std::size_t i = 0; i < dim; ++i) {
        p[i] = gs.normal(0.0, sample_stddev);
        mean[i] += p[i];
      }
    }
    // recentre so the dataset mean is exactly c_m
    for (std::size_t i = 0; i < dim; ++i) mean[i] /= static_cast<double>(nm);
    for (auto& p : pts) {
      for (std::size_t i = 0; i < dim; ++i) p[i] += c[i] - mean[i];
    }
  }
}

std::size_t QuadraticTask::sample_count(std::size_t device) const {
  check_device(device);
  return samples_[device].size();
}

const Vec& QuadraticTask::center(std::size_t device) const {
  check_device(device);
  return centers_[device];
}

double QuadraticTask::device_loss(std::size_t device, const Vec& theta) const {
  check_device(device);
  check_dim(theta);
  return 0.5 * vec::dist_sq(theta, centers_[device]);
}

void QuadraticTask::stochastic_gradient(std::size_t device, const Vec& theta,
                                        std::span<const std::uint32_t> batch, Vec& out) const {
  check_device(device);
  check_dim(theta);
  out = theta;
  if (batch.empty()) {
    // full batch: the dataset mean is c_m by construction
    vec::axpy(out, -1.0, centers_[device]);
    return;
  }
  const auto& pts = samples_[device];
  Vec mean(dim_, 0.0);
  for (std::uint32_t idx : batch) {
    if (idx >= pts.size()) throw std::invalid_argument("QuadraticTask: batch index out of range");
    vec::add(mean, pts[idx]);
  }
  vec::axpy(out, -1.0 / static_cast<double>(batch.size()), mean);
}

Vec QuadraticTask::optimum() const {
  Vec opt(dim_, 0.0);
  const double b = static_cast<double>(total_samples());
  for (std::size_t m = 0; m < centers_.size(); ++m) {
    vec::axpy(opt, static_cast<double>(samples_[m].size()) / b, centers_[m]);
  }
  return opt;
}

double QuadraticTask::optimal_loss() const { return global_loss(optimum()); }

// ---------------------------------------------------------------------------
// LogisticTask

namespace {

// log(1 + exp(-t)) without overflow
double log1p_exp_neg(double t) {
  if (t > 0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

LogisticTask::LogisticTask(std::size_t devices, std::size_t dim,
                           std::vector<std::size_t> samples_per_device,
                           std::uint64_t master_seed, std::size_t test_samples)
    : dim_(dim) {
  if (devices == 0) throw std::invalid_argument("LogisticTask: need at least one device");
  if (dim == 0 || dim % 2 != 0)
    throw std::invalid_argument("LogisticTask: dimension must be positive and even");
  if (samples_per_device.size() != devices)
    throw std::invalid_argument("LogisticTask: one sample count per device required");

  rng::Generator gsep(master_seed, rng::Stream::task_setup, devices);
  Vec separator(dim);
  for (double& x : separator) x = gsep.normal();

  auto draw = [&](rng::Generator& g) {
    Sample s;
    s.x.resize(dim);
    double margin = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      s.x[i] = g.normal();
      margin += s.x[i] * separator[i];
    }
    margin += g.normal(0.0, 0.5);
    s.y = margin >= 0 ? 1.0 : -1.0;
    return s;
  };

  data_.resize(devices);
  for (std::size_t m = 0; m < devices; ++m) {
    if (samples_per_device[m] == 0) throw std::invalid_argument("LogisticTask: empty dataset");
    rng::Generator g(master_seed, rng::Stream::data_samples, m);
    data_[m].reserve(samples_per_device[m]);
    for (std::size_t i = 0; i < samples_per_device[m]; ++i) data_[m].push_back(draw(g));
  }
  rng::Generator gt(master_seed, rng::Stream::test_samples);
  test_.reserve(test_samples);
  for (std::size_t i = 0; i < test_samples; ++i) test_.push_back(draw(gt));
}

std::size_t LogisticTask::sample_count(std::size_t device) const {
  check_device(device);
  return data_[device].size();
}

double LogisticTask::device_loss(std::size_t device, const Vec& theta) const {
  check_device(device);
  check_dim(theta);
  double loss = 0.0;
  for (const Sample& s : data_[device]) loss += log1p_exp_neg(s.y * vec::dot(theta, s.x));
  return loss / static_cast<double>(data_[device].size());
}

void LogisticTask::stochastic_gradient(std::size_t device, const Vec& theta,
                                       std::span<const std::uint32_t> batch, Vec& out) const {
  check_device(device);
  check_dim(theta);
  out.assign(dim_, 0.0);
  const auto& pts = data_[device];
  auto accumulate = [&](const Sample& s) {
    const double coef = -s.y * sigmoid(-s.y * vec::dot(theta, s.x));
    vec::axpy(out, coef, s.x);
  };
  if (batch.empty()) {
    for (const Sample& s : pts) accumulate(s);
    vec::scale(out, 1.0 / static_cast<double>(pts.size()));
  } else {
    for (std::uint32_t idx : batch) {
      if (idx >= pts.size()) throw std::invalid_argument("LogisticTask: batch index out of range");
      accumulate(pts[idx]);
    }
    vec::scale(out, 1.0 / static_cast<double>(batch.size()));
  }
}

double LogisticTask::test_accuracy(const Vec& theta) const {
  check_dim(theta);
  std::size_t correct = 0;
  for (const Sample& s : test_) {
    const double z = vec::dot(theta, s.x);
    if ((z >= 0 ? 1.0 : -1.0) == s.y) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_.size());
}

// ---------------------------------------------------------------------------
// DenseNetTask

DenseNetTask::DenseNetTask(std::size_t devices, std::vector<std::size_t> samples_per_device,
                           std::uint64_t master_seed, std::size_t hidden,
                           std::size_t test_samples)
    : hidden_(hidden), dim_(hidden * (kInputDim + 1) + kClasses * (hidden + 1)) {
  if (devices == 0) throw std::invalid_argument("DenseNetTask: need at least one device");
  if (hidden == 0 || hidden > 64)
    throw std::invalid_argument("DenseNetTask: hidden size must be in [1, 64]");
  if (dim_ % 2 != 0)
    throw std::invalid_argument("DenseNetTask: parameter count must be even; adjust hidden size");
  if (samples_per_device.size() != devices)
    throw std::invalid_argument("DenseNetTask: one sample count per device required");

  // two-class XOR blobs at (+-1, +-1)
  auto draw = [](rng::Generator& g) {
    Sample s;
    const double sx = g.uniform01() < 0.5 ? -1.0 : 1.0;
    const double sy = g.uniform01() < 0.5 ? -1.0 : 1.0;
    s.x[0] = sx + g.normal(0.0, 0.4);
    s.x[1] = sy + g.normal(0.0, 0.4);
    s.label = (sx == sy) ? 0 : 1;
    return s;
  };

  data_.resize(devices);
  for (std::size_t m = 0; m < devices; ++m) {
    if (samples_per_device[m] == 0) throw std::invalid_argument("DenseNetTask: empty dataset");
    rng::Generator g(master_seed, rng::Stream::data_samples, m);
    data_[m].reserve(samples_per_device[m]);
    for (std::size_t i = 0; i < samples_per_device[m]; ++i) data_[m].push_back(draw(g));
  }
  rng::Generator gt(master_seed, rng::Stream::test_samples);
  test_.reserve(test_samples);
  for (std::size_t i = 0; i < test_samples; ++i) test_.push_back(draw(gt));
}

std::size_t DenseNetTask::sample_count(std::size_t device) const {
  check_device(device);
  return data_[device].size();
}

// layout: W1 (hidden x in, row-major), b1 (hidden), W2 (classes x hidden), b2 (classes)
double DenseNetTask::sample_loss(const Vec& theta, const Sample& s, Vec* grad) const {
  const std::size_t h = hidden_;
  const double* w1 = theta.data();
  const double* b1 = w1 + h * kInputDim;
  const double* w2 = b1 + h;
  const double* b2 = w2 + kClasses * h;

  double a[64];  // tanh activations; hidden_ <= 64 enforced implicitly by config sizes
  double z2[kClasses];
  for (std::size_t j = 0; j < h; ++j) {
    double z = b1[j];
    for (std::size_t i = 0; i < kInputDim; ++i) z += w1[j * kInputDim + i] * s.x[i];
    a[j] = std::tanh(z);
  }
  for (std::size_t c = 0; c < kClasses; ++c) {
    double z = b2[c];
    for (std::size_t j = 0; j < h; ++j) z += w2[c * h + j] * a[j];
    z2[c] = z;
  }
  const double zmax = std::max(z2[0], z2[1]);
  const double lse = zmax + std::log(std::exp(z2[0] - zmax) + std::exp(z2[1] - zmax));
  const double loss = lse - z2[s.label];

  if (grad) {
    double* g1 = grad->data();
    double* gb1 = g1 + h * kInputDim;
    double* g2 = gb1 + h;
    double* gb2 = g2 + kClasses * h;
    double dz2[kClasses];
    for (std::size_t c = 0; c < kClasses; ++c) {
      dz2[c] = std::exp(z2[c] - lse) - (c == s.label ? 1.0 : 0.0);
      gb2[c] += dz2[c];
      for (std::size_t j = 0; j < h; ++j) g2[c * h + j] += dz2[c] * a[j];
    }
    for (std::size_t j = 0; j < h; ++j) {
      double da = 0.0;
      for (std::size_t c = 0; c < kClasses; ++c) da += w2[c * h + j] * dz2[c];
      const double dz1 = da * (1.0 - a[j] * a[j]);
      gb1[j] += dz1;
      for (std::size_t i = 0; i < kInputDim; ++i) g1[j * kInputDim + i] += dz1 * s.x[i];
    }
  }
  return loss;
}

double DenseNetTask::device_loss(std::size_t device, const Vec& theta) const {
  check_device(device);
  check_dim(theta);
  double loss = 0.0;
  for (const Sample& s : data_[device]) loss += sample_loss(theta, s, nullptr);
  return loss / static_cast<double>(data_[device].size());
}

void DenseNetTask::stochastic_gradient(std::size_t device, const Vec& theta,
                                       std::span<const std::uint32_t> batch, Vec& out) const {
  check_device(device);
  check_dim(theta);
  out.assign(dim_, 0.0);
  const auto& pts = data_[device];
  if (batch.empty()) {
    for (const Sample& s : pts) sample_loss(theta, s, &out);
    vec::scale(out, 1.0 / static_cast<double>(pts.size()));
  } else {
    for (std::uint32_t idx : batch) {
      if (idx >= pts.size()) throw std::invalid_argument("DenseNetTask: batch index out of range");
      sample_loss(theta, pts[idx], &out);
    }
    vec::scale(out, 1.0 / static_cast<double>(batch.size()));
  }
}

double DenseNetTask::test_accuracy(const Vec& theta) const {
  check_dim(theta);
  const std::size_t h = hidden_;
  const double* w1 = theta.data();
  const double* b1 = w1 + h * kInputDim;
  const double* w2 = b1 + h;
  const double* b2 = w2 + kClasses * h;
  std::size_t correct = 0;
  for (const Sample& s : test_) {
    double a[64];
    for (std::size_t j = 0; j < h; ++j) {
      double z = b1[j];
      for (std::size_t i = 0; i < kInputDim; ++i) z += w1[j * kInputDim + i] * s.x[i];
      a[j] = std::tanh(z);
    }
    double best = -1e300;
    std::size_t arg = 0;
    for (std::size_t c = 0; c < kClasses; ++c) {
      double z = b2[c];
      for (std::size_t j = 0; j < h; ++j) z += w2[c * h + j] * a[j];
      if (z > best) {
        best = z;
        arg = c;
      }
    }
    if (arg == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_.size());
}

Vec DenseNetTask::initial_weights(std::uint64_t master_seed) const {
  rng::Generator g(master_seed, rng::Stream::init_weights);
  Vec w(dim_);
  for (double& x : w) x = g.normal(0.0, 0.3);
  return w;
}

}  // namespace ehfl::model
