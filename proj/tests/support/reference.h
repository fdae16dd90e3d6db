#pragma once

// Test-only oracles. These deliberately share nothing with the library
// kernels: no padded copy, bounds checks per tap, double accumulation and a
// different loop order.

#include <cstdint>
#include <random>
#include <vector>

#include "vsrcost/tensor.h"

namespace vsrcost::testing {

// Grouped 3-D cross-correlation on C x L x H x W with weights
// Co x (C/groups) x T x K x K. Same padding uses TF-style offsets
// (floor(total/2) before), valid padding uses none.
inline Tensor reference_conv(const Tensor& x, const Tensor& w, std::int64_t groups,
                             std::int64_t st, std::int64_t sh, std::int64_t sw, bool same) {
  const std::int64_t c = x.dim(0), l = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const std::int64_t co = w.dim(0), cig = w.dim(1), kt = w.dim(2), kh = w.dim(3), kw = w.dim(4);
  auto out_extent = [&](std::int64_t in, std::int64_t k, std::int64_t s) {
    return same ? (in + s - 1) / s : (in - k) / s + 1;
  };
  auto pad_before = [&](std::int64_t in, std::int64_t k, std::int64_t s) -> std::int64_t {
    if (!same) return 0;
    const std::int64_t out = out_extent(in, k, s);
    const std::int64_t total = (out - 1) * s + k - in;
    return total > 0 ? total / 2 : 0;
  };
  const std::int64_t lo = out_extent(l, kt, st), ho = out_extent(h, kh, sh), wo = out_extent(wd, kw, sw);
  const std::int64_t pt = pad_before(l, kt, st), ph = pad_before(h, kh, sh), pw = pad_before(wd, kw, sw);
  const std::int64_t cog = co / groups;

  std::vector<double> acc(static_cast<std::size_t>(co * lo * ho * wo), 0.0);
  auto at_x = [&](std::int64_t ci, std::int64_t li, std::int64_t hi, std::int64_t wi) -> double {
    if (li < 0 || li >= l || hi < 0 || hi >= h || wi < 0 || wi >= wd) return 0.0;
    return x[((ci * l + li) * h + hi) * wd + wi];
  };
  for (std::int64_t t = 0; t < kt; ++t)
    for (std::int64_t y = 0; y < kh; ++y)
      for (std::int64_t z = 0; z < kw; ++z)
        for (std::int64_t o = 0; o < co; ++o)
          for (std::int64_t j = 0; j < cig; ++j) {
            const std::int64_t ci = (o / cog) * cig + j;
            const double wv = w[(((o * cig + j) * kt + t) * kh + y) * kw + z];
            for (std::int64_t a = 0; a < lo; ++a)
              for (std::int64_t b = 0; b < ho; ++b)
                for (std::int64_t d = 0; d < wo; ++d)
                  acc[static_cast<std::size_t>(((o * lo + a) * ho + b) * wo + d)] +=
                      wv * at_x(ci, a * st + t - pt, b * sh + y - ph, d * sw + z - pw);
          }
  std::vector<float> data(acc.begin(), acc.end());
  return Tensor({co, lo, ho, wo}, std::move(data));
}

inline Tensor random_tensor(Shape shape, std::mt19937_64& rng, float lo = -1.0f, float hi = 1.0f) {
  std::uniform_real_distribution<float> dist(lo, hi);
  Tensor t(std::move(shape));
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

inline float max_abs_diff(const Tensor& a, const Tensor& b) {
  float m = 0.0f;
  for (std::int64_t i = 0; i < a.size(); ++i) {
    const float d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace vsrcost::testing
