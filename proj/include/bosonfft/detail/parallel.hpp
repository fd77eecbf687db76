// Copyright 2026 The bosonfft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace bosonfft::detail {

/// Neumaier-compensated accumulator for complex sums.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    add_one(re_, re_c_, v.real());
    add_one(im_, im_c_, v.imag());
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_one(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Splits [0, count) into fixed-size chunks and runs body(chunk_index, begin,
/// end) over them on up to `threads` workers. Chunk boundaries depend only on
/// `count` and `chunk`, so per-chunk results are identical for any thread
/// count.
template <typename Body>
void for_each_chunk(std::size_t count, std::size_t chunk, unsigned threads, Body&& body) {
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
  auto run = [&](unsigned w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      const std::size_t begin = c * chunk;
      body(c, begin, std::min(count, begin + chunk));
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
}

}  // namespace bosonfft::detail
