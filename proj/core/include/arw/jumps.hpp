#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "arw/lattice.hpp"

namespace arw {

struct JumpEntry {
    Site offset;
    double prob;
};

// Finite-support jump distribution p(.) on Z^d.  Offsets are unique, nonzero,
// with probabilities in (0,1] summing to 1 within 1e-12.
class JumpDistribution {
  public:
    JumpDistribution(int dim, std::vector<JumpEntry> entries);

    int dim() const { return dim_; }
    const std::vector<JumpEntry>& entries() const { return entries_; }

    // v = sum_z p(z) z
    const std::array<double, 3>& drift() const { return drift_; }
    // max |z_i| over the support; the halo requirement for frozen arenas
    std::int32_t max_range() const { return max_range_; }
    // all offsets have ||z||_1 = 1
    bool nearest_neighbor() const { return nearest_neighbor_; }

    // Entry index drawn from p using a uniform u in [0,1).
    std::size_t pick(double u) const {
        std::size_t k = 0;
        while (k + 1 < cum_.size() && u >= cum_[k]) ++k;
        return k;
    }
    const Site& sample(double u) const { return entries_[pick(u)].offset; }

    // Named families used throughout.
    static JumpDistribution directed_1d();              // p(+1) = 1
    static JumpDistribution symmetric_1d();             // 1/2, 1/2
    static JumpDistribution biased_1d(double p_right);  // p(+1)=q, p(-1)=1-q
    static JumpDistribution symmetric_2d();             // 1/4 each
    static JumpDistribution biased_2d(double p_e1);     // p(+e1)=q, rest split
    static JumpDistribution symmetric_3d();

    // Parses either a named family ("directed", "sym1d", "biased1d:0.9",
    // "sym2d", "biased2d:0.8", "sym3d") or an explicit table
    // "dx[,dy[,dz]]:p;dx:p;...", e.g. "1:0.7;-1:0.3".
    static JumpDistribution parse(const std::string& text);

    std::string describe() const { return description_; }

    friend bool operator==(const JumpDistribution& a, const JumpDistribution& b);

  private:
    int dim_;
    std::vector<JumpEntry> entries_;
    std::vector<double> cum_;
    std::array<double, 3> drift_{0, 0, 0};
    std::int32_t max_range_ = 0;
    bool nearest_neighbor_ = false;
    std::string description_;
};

}  // namespace arw
