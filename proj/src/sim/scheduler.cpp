// SPDX-License-Identifier: Apache-2.0
#include "vaba/sim/scheduler.hpp"

namespace vaba::sim {

std::size_t pick_uniform(const PendingQueue& queue, std::mt19937_64& rng) {
  // Plain modulo keeps the draw a pure function of the generator stream; the
  // bias at queue sizes in the thousands is far below anything we measure.
  return static_cast<std::size_t>(rng() % queue.size());
}

}  // namespace vaba::sim
