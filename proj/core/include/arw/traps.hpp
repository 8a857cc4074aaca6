#pragma once

#include <cstdint>
#include <vector>

#include "arw/jumps.hpp"

namespace arw {

// Outcome of the instruction-exploration fixation certifier.  On success the
// settlement of every particle is replayed as acceptable topplings and the
// certified window is independently stabilized legally; both must leave the
// origin odometer at exactly zero.
struct TrapReport {
    enum class Status { success, occupied_origin, no_trap, exploration_cap };

    Status status = Status::success;
    int failed_at = 0;  // particle index at failure; positive right, negative left

    std::vector<std::int32_t> traps_right;  // a_1 < a_2 < ...
    std::vector<std::int32_t> traps_left;   // ... < a_-2 < a_-1 < 0
    std::vector<std::int32_t> gaps;         // |a_k - a_{k-1}| pooled over both sides

    bool corruption_confined = true;   // unused instructions stay in (a_{k-1}, a_k]
    bool replay_ok = false;            // acceptable replay stabilized, origin untouched
    std::uint64_t replay_origin_odometer = 0;
    bool engine_verified = false;      // legal stabilization of the certified window
    std::uint64_t engine_origin_odometer = 0;

    std::int32_t window_lo = 0, window_hi = 0;  // certified interval
    std::int64_t particles_settled = 0;

    bool success() const { return status == Status::success; }
};

// Explores the instruction field particle by particle (nearest-neighbor 1D
// walks), sets a sleeping trap for each of the first n particles on either
// side of the origin, and certifies that stabilizing them never topples the
// origin.  Requires a particle-free origin to start.
TrapReport trap_certify(double mu, double lambda, const JumpDistribution& jumps,
                        std::int32_t n_particles, std::uint64_t seed,
                        std::uint64_t exploration_cap = 2'000'000);

}  // namespace arw
