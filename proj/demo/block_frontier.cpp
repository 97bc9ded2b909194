// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

// Prints the block construction next to the best vector of the same length
// found by a small exhaustive sweep.

#include <cstdio>

#include "anticonc/anticonc.hpp"

int main() {
  using namespace anticonc;
  for (auto [n, k] : {std::pair{4, 2}, {6, 2}, {6, 3}, {8, 4}}) {
    const BlockParams bp = block_construction(n, k);
    const ConcentrationReport rep = concentration(bp.weights);
    std::printf("block n=%d k=%d w=(%s) rho=%s |R|=%s delta/eps=%.6f\n", n, k, bp.weights.str().c_str(),
                to_string(rep.rho).c_str(), rep.range_size.get_str().c_str(), rep.delta / rep.epsilon);
  }

  const auto points = sweep(SweepConfig{6, 4, 1});
  const AuditReport a = audit(points, 20.0);
  std::printf("sweep n=6 max_weight=4: %zu vectors, max delta/eps=%.6f at (%s), %zu above delta=2eps\n",
              a.points, a.max_delta_over_eps, a.argmax_delta_over_eps->str().c_str(), a.above_conjecture);
  return 0;
}
