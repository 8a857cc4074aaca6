#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace arw {

// Raised when an operation that the site algebra does not accept is applied
// (removing from or sleeping an empty site).
class not_acceptable : public std::domain_error {
  public:
    explicit not_acceptable(const std::string& what) : std::domain_error(what) {}
};

class state_overflow : public std::overflow_error {
  public:
    explicit state_overflow(const std::string& what) : std::overflow_error(what) {}
};

// One lattice site's content: empty, one sleeping particle, or n >= 1 active
// particles, ordered empty < sleeping < active(1) < active(2) < ...
class SiteState {
  public:
    constexpr SiteState() = default;

    static constexpr SiteState empty() { return SiteState{0}; }
    static constexpr SiteState sleeping() { return SiteState{-1}; }
    static SiteState active(std::int32_t n) {
        if (n < 1) throw std::invalid_argument("SiteState::active requires n >= 1");
        return SiteState{n};
    }

    constexpr bool is_empty() const { return v_ == 0; }
    constexpr bool is_sleeping() const { return v_ == -1; }
    constexpr bool is_active() const { return v_ >= 1; }

    // Number of active particles at the site.
    constexpr std::int32_t active_count() const { return v_ >= 1 ? v_ : 0; }

    // Number of particles regardless of state; a sleeper counts as one.
    constexpr std::int32_t particle_count() const { return v_ >= 1 ? v_ : (v_ == -1 ? 1 : 0); }

    friend constexpr bool operator==(SiteState a, SiteState b) { return a.v_ == b.v_; }
    friend constexpr std::strong_ordering operator<=>(SiteState a, SiteState b) {
        return a.order_key() <=> b.order_key();
    }

  private:
    constexpr explicit SiteState(std::int32_t v) : v_(v) {}
    // empty -> 0, sleeping -> 1, active(n) -> n + 1.
    constexpr std::int64_t order_key() const { return v_ == -1 ? 1 : (v_ == 0 ? 0 : std::int64_t{v_} + 1); }

    friend SiteState plus_one(SiteState);
    friend SiteState minus_one(SiteState);
    friend SiteState sleep_apply(SiteState);

    std::int32_t v_ = 0;  // 0 empty, -1 sleeping, n >= 1 active(n)
};

// Add one active particle; waking a sleeper yields two active particles.
inline SiteState plus_one(SiteState s) {
    if (s.v_ == 0) return SiteState{1};
    if (s.v_ == -1) return SiteState{2};
    if (s.v_ == std::numeric_limits<std::int32_t>::max())
        throw state_overflow("site particle count overflow");
    return SiteState{s.v_ + 1};
}

// Remove one particle; not acceptable on an empty site.
inline SiteState minus_one(SiteState s) {
    if (s.v_ == 0) throw not_acceptable("minus_one on empty site");
    if (s.v_ == -1) return SiteState{0};
    return SiteState{s.v_ - 1};
}

// Sleep operator: a lone active particle falls asleep, two or more active
// particles are unaffected, a sleeper stays asleep. Not acceptable on empty.
inline SiteState sleep_apply(SiteState s) {
    if (s.v_ == 0) throw not_acceptable("sleep on empty site");
    if (s.v_ == 1 || s.v_ == -1) return SiteState::sleeping();
    return s;
}

inline std::int32_t active_count(SiteState s) { return s.active_count(); }
inline std::int32_t particle_count(SiteState s) { return s.particle_count(); }

}  // namespace arw
