#include "ehfl/ota.hpp"

#include <cstring>
#include <stdexcept>

#include "ehfl/kernels.hpp"

namespace ehfl::ota {

ScaledDifference scale_difference(const Vec& delta, double data_ratio, std::int64_t cooldown) {
  if (cooldown <= 0) throw std::invalid_argument("ota: cooldown multiplier must be >= 1");
  if (!(data_ratio > 0.0)) throw std::invalid_argument("ota: data ratio must be positive");
  ScaledDifference out;
  out.weight = data_ratio * static_cast<double>(cooldown);
  out.delta = delta;
  vec::scale(out.delta, out.weight);
  return out;
}

std::optional<Vec> aggregate_error_free(std::span<const ScaledDifference> scaled) {
  if (scaled.empty()) return std::nullopt;
  Vec sum(scaled.front().delta.size(), 0.0);
  double weight_sum = 0.0;
  for (const ScaledDifference& s : scaled) {
    vec::add(sum, s.delta);
    weight_sum += s.weight;
  }
  vec::scale(sum, 1.0 / weight_sum);
  return sum;
}

CombinedSignal transmit_and_combine(std::span<const model::ComplexSymbolVector> x,
                                    const channel::Realization& ch) {
  const std::size_t devices = ch.devices;
  const std::size_t antennas = ch.antennas;
  const std::size_t symbols = ch.symbols;
  if (x.size() != devices)
    throw std::invalid_argument("ota: one symbol vector per participant required");
  for (const auto& xv : x) {
    if (xv.re.size() != symbols || xv.im.size() != symbols)
      throw std::invalid_argument("ota: symbol vector dimension mismatch");
  }

  const auto& k = kernels::active();

  Vec y_re(symbols, 0.0), y_im(symbols, 0.0);
  Vec nz_re(symbols, 0.0), nz_im(symbols, 0.0);
  // per-device accumulators over antennas: gain_m = sum_k |h_mk|^2 and
  // cross_m = sum_k conj(s_k) h_mk with s_k = sum_m h_mk
  std::vector<Vec> gain(devices, Vec(symbols, 0.0));
  std::vector<Vec> cross_re(devices, Vec(symbols, 0.0));
  std::vector<Vec> cross_im(devices, Vec(symbols, 0.0));

  Vec s_re(symbols), s_im(symbols), yk_re(symbols), yk_im(symbols);
  const std::size_t bytes = symbols * sizeof(double);

  for (std::size_t kk = 0; kk < antennas; ++kk) {
    std::memset(s_re.data(), 0, bytes);
    std::memset(s_im.data(), 0, bytes);
    for (std::size_t m = 0; m < devices; ++m) {
      k.add(s_re.data(), ch.h_re_at(m, kk), symbols);
      k.add(s_im.data(), ch.h_im_at(m, kk), symbols);
    }
    std::memcpy(yk_re.data(), ch.z_re_at(kk), bytes);
    std::memcpy(yk_im.data(), ch.z_im_at(kk), bytes);
    for (std::size_t m = 0; m < devices; ++m) {
      k.cmul_accum(yk_re.data(), yk_im.data(), ch.h_re_at(m, kk), ch.h_im_at(m, kk),
                   x[m].re.data(), x[m].im.data(), symbols);
    }
    k.cconj_mul_accum(y_re.data(), y_im.data(), s_re.data(), s_im.data(), yk_re.data(),
                      yk_im.data(), symbols);
    k.cconj_mul_accum(nz_re.data(), nz_im.data(), s_re.data(), s_im.data(), ch.z_re_at(kk),
                      ch.z_im_at(kk), symbols);
    for (std::size_t m = 0; m < devices; ++m) {
      k.abs2_accum(gain[m].data(), ch.h_re_at(m, kk), ch.h_im_at(m, kk), symbols);
      k.cconj_mul_accum(cross_re[m].data(), cross_im[m].data(), s_re.data(), s_im.data(),
                        ch.h_re_at(m, kk), ch.h_im_at(m, kk), symbols);
    }
  }

  const double inv_k = 1.0 / static_cast<double>(antennas);
  CombinedSignal out;
  out.y.re = std::move(y_re);
  out.y.im = std::move(y_im);
  vec::scale(out.y.re, inv_k);
  vec::scale(out.y.im, inv_k);
  out.noise.re = std::move(nz_re);
  out.noise.im = std::move(nz_im);
  vec::scale(out.noise.re, inv_k);
  vec::scale(out.noise.im, inv_k);

  out.signal.re.assign(symbols, 0.0);
  out.signal.im.assign(symbols, 0.0);
  out.interference.re.assign(symbols, 0.0);
  out.interference.im.assign(symbols, 0.0);
  Vec tmp_re(symbols);
  for (std::size_t m = 0; m < devices; ++m) {
    vec::scale(gain[m], inv_k);
    vec::scale(cross_re[m], inv_k);
    vec::scale(cross_im[m], inv_k);
    k.mul_accum(out.signal.re.data(), gain[m].data(), x[m].re.data(), symbols);
    k.mul_accum(out.signal.im.data(), gain[m].data(), x[m].im.data(), symbols);
    // cross-device part: sum_{m' != m} conj(h_m'k) h_mk = conj(s_k) h_mk - |h_mk|^2
    for (std::size_t n = 0; n < symbols; ++n) tmp_re[n] = cross_re[m][n] - gain[m][n];
    k.cmul_accum(out.interference.re.data(), out.interference.im.data(), tmp_re.data(),
                 cross_im[m].data(), x[m].re.data(), x[m].im.data(), symbols);
  }
  return out;
}

Vec recover(const CombinedSignal& combined, double weight_sum, double sigma_h2,
            double beta_bar) {
  if (!(weight_sum > 0.0)) throw std::invalid_argument("ota: recover needs C > 0");
  if (!(sigma_h2 > 0.0) || !(beta_bar > 0.0))
    throw std::invalid_argument("ota: recover needs sigma_h2 > 0 and beta_bar > 0");
  const std::size_t symbols = combined.y.re.size();
  const double inv = 1.0 / (weight_sum * sigma_h2 * beta_bar);
  Vec delta(2 * symbols);
  for (std::size_t n = 0; n < symbols; ++n) {
    delta[n] = combined.y.re[n] * inv;
    delta[n + symbols] = combined.y.im[n] * inv;
  }
  return delta;
}

double transmit_energy(std::span<const model::ComplexSymbolVector> x) {
  double acc = 0.0;
  for (const auto& xv : x) {
    acc += kernels::active().dot(xv.re.data(), xv.re.data(), xv.re.size());
    acc += kernels::active().dot(xv.im.data(), xv.im.data(), xv.im.size());
  }
  return acc;
}

TermPowers mean_powers(const CombinedSignal& combined) {
  const auto mean_abs2 = [](const model::ComplexSymbolVector& v) {
    if (v.re.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t n = 0; n < v.re.size(); ++n) acc += v.re[n] * v.re[n] + v.im[n] * v.im[n];
    return acc / static_cast<double>(v.re.size());
  };
  TermPowers p;
  p.signal = mean_abs2(combined.signal);
  p.interference = mean_abs2(combined.interference);
  p.noise = mean_abs2(combined.noise);
  return p;
}

}  // namespace ehfl::ota
