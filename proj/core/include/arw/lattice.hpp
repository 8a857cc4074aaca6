#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arw/rng.hpp"
#include "arw/site_state.hpp"

namespace arw {

inline constexpr int max_dim = 3;

// Lattice site, up to 3 coordinates; unused axes stay 0.
struct Site {
    std::array<std::int32_t, 3> c{0, 0, 0};

    constexpr Site() = default;
    constexpr explicit Site(std::int32_t x) : c{x, 0, 0} {}
    constexpr Site(std::int32_t x, std::int32_t y) : c{x, y, 0} {}
    constexpr Site(std::int32_t x, std::int32_t y, std::int32_t z) : c{x, y, z} {}

    constexpr std::int32_t operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    std::int32_t& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    friend constexpr bool operator==(const Site&, const Site&) = default;

    friend constexpr Site operator+(Site a, const Site& b) {
        for (int i = 0; i < max_dim; ++i) a.c[static_cast<std::size_t>(i)] += b[i];
        return a;
    }

    // Site hash suitable for keyed counter-based generation.
    constexpr std::uint64_t key(std::uint64_t h) const {
        return rng::combine(h, rng::zigzag(c[0]), rng::zigzag(c[1]), rng::zigzag(c[2]));
    }
};

inline constexpr Site origin{};

// Axis-aligned inclusive box of sites.
struct Box {
    int dim = 1;
    Site lo, hi;

    static Box interval(std::int32_t a, std::int32_t b) { return Box{1, Site(a), Site(b)}; }
    static Box rect(Site a, Site b, int d) { return Box{d, a, b}; }
    // [-r, r]^d
    static Box centered(std::int32_t r, int d) {
        Box box;
        box.dim = d;
        for (int i = 0; i < d; ++i) {
            box.lo[i] = -r;
            box.hi[i] = r;
        }
        return box;
    }
    // {0, ..., side-1}^d
    static Box cube(std::int32_t side, int d) {
        Box box;
        box.dim = d;
        for (int i = 0; i < d; ++i) {
            box.lo[i] = 0;
            box.hi[i] = side - 1;
        }
        return box;
    }

    std::int32_t extent(int axis) const { return hi[axis] - lo[axis] + 1; }

    std::int64_t cells() const {
        std::int64_t n = 1;
        for (int i = 0; i < dim; ++i) n *= extent(i);
        return n;
    }

    bool contains(const Site& s) const {
        for (int i = 0; i < dim; ++i)
            if (s[i] < lo[i] || s[i] > hi[i]) return false;
        for (int i = dim; i < max_dim; ++i)
            if (s[i] != 0) return false;
        return true;
    }
};

enum class BoundaryMode {
    frozen,       // jumps land in the halo and stay there; halo sites never topple
    dissipative,  // jumps leaving the window delete the particle (counted)
    torus         // jump targets wrap coordinate-wise; no halo
};

// Finite-storage view of the lattice: a toppling window plus a halo margin,
// with one of three boundary behaviors.  Storage is dense and row-major with
// the first axis fastest.
class Arena {
  public:
    Arena(int dim, Box window, int halo, BoundaryMode mode)
        : dim_(dim), window_(window), halo_(halo), mode_(mode) {
        if (dim < 1 || dim > max_dim) throw std::invalid_argument("arena dimension must be 1..3");
        if (window.dim != dim) throw std::invalid_argument("window dimension mismatch");
        if (halo < 0) throw std::invalid_argument("negative halo");
        if (mode == BoundaryMode::torus && halo != 0)
            throw std::invalid_argument("torus arena requires halo = 0");
        for (int i = 0; i < dim; ++i)
            if (window.lo[i] > window.hi[i]) throw std::invalid_argument("empty window");
        storage_ = window;
        for (int i = 0; i < dim; ++i) {
            storage_.lo[i] -= halo;
            storage_.hi[i] += halo;
        }
        std::int64_t stride = 1;
        for (int i = 0; i < dim; ++i) {
            stride_[static_cast<std::size_t>(i)] = stride;
            stride *= storage_.extent(i);
        }
        cells_ = stride;
    }

    int dim() const { return dim_; }
    const Box& window() const { return window_; }
    const Box& storage() const { return storage_; }
    int halo() const { return halo_; }
    BoundaryMode mode() const { return mode_; }
    std::int64_t cells() const { return cells_; }
    std::int64_t window_cells() const { return window_.cells(); }

    bool in_window(const Site& s) const { return window_.contains(s); }
    bool in_storage(const Site& s) const { return storage_.contains(s); }

    // Torus-wrapped copy of s (identity for other modes).
    Site wrap(Site s) const {
        if (mode_ != BoundaryMode::torus) return s;
        for (int i = 0; i < dim_; ++i) {
            const std::int32_t n = storage_.extent(i);
            std::int32_t r = (s[i] - storage_.lo[i]) % n;
            if (r < 0) r += n;
            s[i] = storage_.lo[i] + r;
        }
        return s;
    }

    std::int64_t index_of(const Site& s) const {
        std::int64_t idx = 0;
        for (int i = 0; i < dim_; ++i)
            idx += std::int64_t{s[i] - storage_.lo[i]} * stride_[static_cast<std::size_t>(i)];
        return idx;
    }

    Site site_at(std::int64_t idx) const {
        Site s;
        for (int i = 0; i < dim_; ++i) {
            const std::int64_t n = storage_.extent(i);
            s[i] = storage_.lo[i] + static_cast<std::int32_t>(idx % n);
            idx /= n;
        }
        return s;
    }

    // Flat-index displacement of a jump offset (valid when no wrap occurs).
    std::int64_t flat_delta(const Site& offset) const {
        std::int64_t d = 0;
        for (int i = 0; i < dim_; ++i)
            d += std::int64_t{offset[i]} * stride_[static_cast<std::size_t>(i)];
        return d;
    }

    friend bool operator==(const Arena& a, const Arena& b) {
        return a.dim_ == b.dim_ && a.window_.lo == b.window_.lo && a.window_.hi == b.window_.hi &&
               a.halo_ == b.halo_ && a.mode_ == b.mode_;
    }

  private:
    int dim_;
    Box window_;
    int halo_;
    BoundaryMode mode_;
    Box storage_;
    std::array<std::int64_t, 3> stride_{1, 1, 1};
    std::int64_t cells_ = 0;
};

// A site-state assignment over an arena's storage, plus the count of
// particles deleted by a dissipative boundary.
class Configuration {
  public:
    explicit Configuration(Arena arena)
        : arena_(std::move(arena)),
          states_(static_cast<std::size_t>(arena_.cells()), SiteState::empty()) {}

    const Arena& arena() const { return arena_; }

    SiteState at(const Site& s) const { return states_[idx(s)]; }
    SiteState at_index(std::int64_t i) const { return states_[static_cast<std::size_t>(i)]; }
    void set(const Site& s, SiteState v) { states_[idx(s)] = v; }
    void set_index(std::int64_t i, SiteState v) { states_[static_cast<std::size_t>(i)] = v; }

    std::uint64_t outside_count() const { return outside_count_; }
    void add_outside(std::uint64_t n) { outside_count_ += n; }

    // Total particle count over window + halo.
    std::uint64_t total_particles() const {
        std::uint64_t n = 0;
        for (const SiteState s : states_) n += static_cast<std::uint64_t>(s.particle_count());
        return n;
    }

    std::uint64_t window_particles() const {
        std::uint64_t n = 0;
        const std::int64_t cells = arena_.cells();
        for (std::int64_t i = 0; i < cells; ++i)
            if (arena_.in_window(arena_.site_at(i)))
                n += static_cast<std::uint64_t>(at_index(i).particle_count());
        return n;
    }

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.arena_ == b.arena_ && a.states_ == b.states_ &&
               a.outside_count_ == b.outside_count_;
    }

  private:
    std::size_t idx(const Site& s) const {
        const Site w = arena_.wrap(s);
        if (!arena_.in_storage(w)) throw std::out_of_range("site outside arena storage");
        return static_cast<std::size_t>(arena_.index_of(w));
    }

    Arena arena_;
    std::vector<SiteState> states_;
    std::uint64_t outside_count_ = 0;
};

}  // namespace arw
