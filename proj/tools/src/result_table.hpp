#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace arw::cli {

// Formats like printf %.17g; infinities become "inf"/"-inf".
std::string fmt17(double v);

// Flat, schema-versioned result record.  Every row carries the full
// parameter tuple and seed, so any row can be reproduced on its own.
struct ResultRow {
    std::int64_t window = 0;
    double mu = 0.0;
    std::int64_t replicate = -1;  // -1: summary row
    std::string metric;
    double value = 0.0;
};

class ResultTable {
  public:
    explicit ResultTable(const RunConfig& cfg) : cfg_(cfg) {}

    void add(std::int64_t replicate, const std::string& metric, double value) {
        rows_.push_back(ResultRow{cfg_.window, cfg_.mu, replicate, metric, value});
    }
    void add_at(std::int64_t window, std::int64_t replicate, const std::string& metric,
                double value) {
        rows_.push_back(ResultRow{window, cfg_.mu, replicate, metric, value});
    }
    // For commands that scan densities: the row keeps its own mu.
    void add_mu(double mu, std::int64_t window, std::int64_t replicate,
                const std::string& metric, double value) {
        rows_.push_back(ResultRow{window, mu, replicate, metric, value});
    }

    std::size_t size() const { return rows_.size(); }

    // Serializes to cfg.out (or stdout when empty).  Files are written as
    // <out>.partial and renamed on success, so a complete file is never
    // replaced by a truncated one.  Returns an exit code.
    int write() const;

  private:
    std::string render_csv() const;
    std::string render_json() const;

    RunConfig cfg_;
    std::vector<ResultRow> rows_;
};

}  // namespace arw::cli
