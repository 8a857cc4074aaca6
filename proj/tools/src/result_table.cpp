#include "result_table.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace arw::cli {

namespace {

constexpr const char* schema_version = "arw-1";

// RFC-4180 quoting: wrap when the field holds a comma, quote or newline.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string ResultTable::render_csv() const {
    std::ostringstream os;
    os << "schema,command,dim,lambda,mu,jumps,L,reps,seed,cap,replicate,metric,value\r\n";
    const std::string head = std::string(schema_version) + "," + csv_escape(cfg_.command) + "," +
                             std::to_string(cfg_.dim) + "," + fmt17(cfg_.lambda) + ",";
    const std::string mid = "," + std::to_string(cfg_.reps) + "," + std::to_string(cfg_.seed) +
                            "," + std::to_string(cfg_.cap) + ",";
    for (const ResultRow& r : rows_) {
        os << head << fmt17(r.mu) << ',' << csv_escape(cfg_.jumps) << ',' << r.window << mid
           << r.replicate << ',' << csv_escape(r.metric) << ',' << fmt17(r.value) << "\r\n";
    }
    return os.str();
}

std::string ResultTable::render_json() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ResultRow& r : rows_) {
        nlohmann::ordered_json j;
        j["schema"] = schema_version;
        j["command"] = cfg_.command;
        j["dim"] = cfg_.dim;
        if (std::isinf(cfg_.lambda))
            j["lambda"] = "inf";
        else
            j["lambda"] = cfg_.lambda;
        j["mu"] = r.mu;
        j["jumps"] = cfg_.jumps;
        j["L"] = r.window;
        j["reps"] = cfg_.reps;
        j["seed"] = cfg_.seed;
        j["cap"] = cfg_.cap;
        j["replicate"] = r.replicate;
        j["metric"] = r.metric;
        j["value"] = r.value;
        rows.push_back(std::move(j));
    }
    return rows.dump(1) + "\n";
}

int ResultTable::write() const {
    const std::string body = cfg_.format == "json" ? render_json() : render_csv();
    if (cfg_.out.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return exit_ok;
    }
    const std::string partial = cfg_.out + ".partial";
    {
        std::ofstream f(partial, std::ios::binary | std::ios::trunc);
        if (!f) {
            std::fprintf(stderr, "arw: cannot open %s\n", partial.c_str());
            return exit_runtime;
        }
        f.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!f.flush()) {
            std::fprintf(stderr, "arw: short write to %s\n", partial.c_str());
            return exit_runtime;
        }
    }
    std::error_code ec;
    std::filesystem::rename(partial, cfg_.out, ec);
    if (ec) {
        std::fprintf(stderr, "arw: cannot finalize %s: %s\n", cfg_.out.c_str(),
                     ec.message().c_str());
        return exit_runtime;
    }
    return exit_ok;
}

}  // namespace arw::cli
