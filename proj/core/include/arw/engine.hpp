#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arw/initial_law.hpp"
#include "arw/instruction_field.hpp"
#include "arw/lattice.hpp"

namespace arw {

class illegal_toppling : public std::logic_error {
  public:
    explicit illegal_toppling(const std::string& what) : std::logic_error(what) {}
};

// Per-site toppling counts over the arena storage (halo entries stay zero).
class Odometer {
  public:
    Odometer() = default;
    explicit Odometer(const Arena& arena)
        : counts_(static_cast<std::size_t>(arena.cells()), 0) {}

    std::uint64_t at_index(std::int64_t i) const { return counts_[static_cast<std::size_t>(i)]; }
    std::uint64_t& at_index(std::int64_t i) { return counts_[static_cast<std::size_t>(i)]; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (std::uint64_t c : counts_) t += c;
        return t;
    }

    friend bool operator==(const Odometer&, const Odometer&) = default;

  private:
    std::vector<std::uint64_t> counts_;
};

enum class ToppleMode { legal, acceptable };

// Mutating toppling state: the next instruction consumed at x is always
// (x, odometer(x) + 1); the field itself is never modified.
struct EngineState {
    Configuration config;
    Odometer odometer;
    const InstructionField* field = nullptr;

    EngineState(Configuration cfg, const InstructionField& f)
        : config(std::move(cfg)), odometer(config.arena()), field(&f) {}
};

// Topple site x: consume instruction (x, odometer(x)+1) and apply it.  Legal
// mode requires an active particle; acceptable mode any particle.  In
// jump-only (lambda = infinity) fields, window sites left with a lone active
// particle by the jump are converted to sleeping at zero odometer cost.
void topple(EngineState& state, const Site& x, ToppleMode mode);

struct TopplingPolicy {
    enum class Kind { fifo, lifo, sweep, uniform_random, explicit_sequence };

    Kind kind = Kind::fifo;
    std::uint64_t policy_seed = 0;
    std::vector<Site> sequence;

    static TopplingPolicy fifo() { return {Kind::fifo, 0, {}}; }
    static TopplingPolicy lifo() { return {Kind::lifo, 0, {}}; }
    static TopplingPolicy sweep() { return {Kind::sweep, 0, {}}; }
    static TopplingPolicy uniform_random(std::uint64_t seed) {
        return {Kind::uniform_random, seed, {}};
    }
    static TopplingPolicy explicit_sequence(std::vector<Site> sites) {
        return {Kind::explicit_sequence, 0, std::move(sites)};
    }

    static TopplingPolicy parse(const std::string& name, std::uint64_t policy_seed);
    std::string name() const;
};

enum class StabStatus { stable, cap_exceeded };

struct StabilizationResult {
    StabStatus status = StabStatus::stable;
    Configuration final;
    Odometer odometer;
    std::uint64_t topplings_total = 0;
    std::uint64_t origin_odometer = 0;
};

// Default toppling budget: 100 * |window| * max(1, mean density).
std::uint64_t default_cap(const Arena& arena, double mean_density);

// Topples policy-selected unstable window sites until the window is stable or
// the budget is spent.  When the result is stable, the final configuration
// and odometer are policy-independent (global abelianness).  In-place variant
// continues from an existing odometer, so successive relaxations of the same
// system keep consuming fresh instructions.
StabStatus stabilize_in_place(Configuration& config, Odometer& odometer,
                              const InstructionField& field, const TopplingPolicy& policy,
                              std::uint64_t cap, std::uint64_t* topplings_out = nullptr);

StabilizationResult stabilize(Configuration config, const InstructionField& field,
                              const TopplingPolicy& policy, std::uint64_t cap);

// Applies an explicit site sequence in acceptable mode (throws not_acceptable
// on a violation).  status reports whether the window ended stable.
StabilizationResult stabilize_acceptable(Configuration config, const InstructionField& field,
                                         std::span<const Site> sequence);

// ---------------------------------------------------------------------------
// Property harnesses

struct InstanceSpec {
    Arena arena;
    InitialLaw law;
    double lambda = 1.0;
    JumpDistribution jumps;
    std::uint64_t cap = 0;  // 0: default_cap
};

struct AbelianReport {
    bool all_stable = true;
    bool all_equal = true;
    std::uint64_t max_odometer_discrepancy = 0;
    std::uint64_t topplings_total = 0;
};

// Stabilizes one instance under each policy on the identical (eta_0, field)
// and compares the outcomes exactly.
AbelianReport check_abelian(const InstanceSpec& spec, std::span<const TopplingPolicy> policies,
                            std::uint64_t seed);

struct LeastActionReport {
    bool constructed = false;     // acceptable stabilizing alpha found under cap
    bool dominated = true;        // m_beta <= m_alpha pointwise
    bool strict = false;          // strict inequality somewhere
    std::uint64_t alpha_total = 0;
    std::uint64_t beta_total = 0;
};

// Builds an acceptable stabilizing sequence alpha (a legal run padded with
// extra acceptable topplings of sleeping sites) and a legal run beta on the
// same instance, and checks m_beta <= m_alpha pointwise.
LeastActionReport check_least_action(const InstanceSpec& spec, std::uint64_t seed,
                                     int pad_topplings = 3);

struct OdometerProfileEntry {
    std::int32_t radius = 0;
    std::uint64_t origin_odometer = 0;
    StabStatus status = StabStatus::stable;
};

// Origin odometer of the stabilization of [-L, L]^d for each L in radii, with
// the same seed (hence the same eta_0 restriction and field) across windows.
std::vector<OdometerProfileEntry> odometer_profile(const InitialLaw& law, double lambda,
                                                   const JumpDistribution& jumps, int dim,
                                                   std::span<const std::int32_t> radii,
                                                   std::uint64_t seed, std::uint64_t cap = 0);

}  // namespace arw
