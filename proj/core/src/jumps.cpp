#include "arw/jumps.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace arw {

JumpDistribution::JumpDistribution(int dim, std::vector<JumpEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim < 1 || dim > max_dim) throw std::invalid_argument("jump distribution dimension must be 1..3");
    if (entries_.empty()) throw std::invalid_argument("empty jump distribution");
    double total = 0.0;
    nearest_neighbor_ = true;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const JumpEntry& e = entries_[i];
        if (!(e.prob > 0.0) || e.prob > 1.0)
            throw std::invalid_argument("jump probability outside (0,1]");
        bool zero = true;
        std::int64_t l1 = 0;
        for (int a = 0; a < max_dim; ++a) {
            if (a >= dim && e.offset[a] != 0)
                throw std::invalid_argument("jump offset uses axis beyond dimension");
            if (e.offset[a] != 0) zero = false;
            l1 += std::abs(std::int64_t{e.offset[a]});
            max_range_ = std::max(max_range_, std::abs(e.offset[a]));
        }
        if (zero) throw std::invalid_argument("zero jump offset not allowed");
        if (l1 != 1) nearest_neighbor_ = false;
        for (std::size_t j = 0; j < i; ++j)
            if (entries_[j].offset == e.offset)
                throw std::invalid_argument("repeated jump offset");
        total += e.prob;
        for (int a = 0; a < dim; ++a)
            drift_[static_cast<std::size_t>(a)] += e.prob * e.offset[a];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("jump probabilities must sum to 1 (within 1e-12)");
    cum_.reserve(entries_.size());
    double acc = 0.0;
    for (const JumpEntry& e : entries_) {
        acc += e.prob;
        cum_.push_back(acc);
    }
    cum_.back() = 1.0;

    std::ostringstream os;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ';';
        for (int a = 0; a < dim_; ++a) {
            if (a) os << ',';
            os << entries_[i].offset[a];
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", entries_[i].prob);
        os << ':' << buf;
    }
    description_ = os.str();
}

bool operator==(const JumpDistribution& a, const JumpDistribution& b) {
    if (a.dim_ != b.dim_ || a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        if (!(a.entries_[i].offset == b.entries_[i].offset) ||
            a.entries_[i].prob != b.entries_[i].prob)
            return false;
    return true;
}

JumpDistribution JumpDistribution::directed_1d() {
    return JumpDistribution(1, {{Site(1), 1.0}});
}

JumpDistribution JumpDistribution::symmetric_1d() {
    return JumpDistribution(1, {{Site(1), 0.5}, {Site(-1), 0.5}});
}

JumpDistribution JumpDistribution::biased_1d(double p_right) {
    if (!(p_right > 0.0) || !(p_right < 1.0))
        throw std::invalid_argument("biased1d needs p_right in (0,1)");
    return JumpDistribution(1, {{Site(1), p_right}, {Site(-1), 1.0 - p_right}});
}

JumpDistribution JumpDistribution::symmetric_2d() {
    return JumpDistribution(
        2, {{Site(1, 0), 0.25}, {Site(-1, 0), 0.25}, {Site(0, 1), 0.25}, {Site(0, -1), 0.25}});
}

JumpDistribution JumpDistribution::biased_2d(double p_e1) {
    if (!(p_e1 > 0.0) || !(p_e1 < 1.0)) throw std::invalid_argument("biased2d needs p in (0,1)");
    const double rest = (1.0 - p_e1) / 3.0;
    return JumpDistribution(
        2, {{Site(1, 0), p_e1}, {Site(-1, 0), rest}, {Site(0, 1), rest}, {Site(0, -1), rest}});
}

JumpDistribution JumpDistribution::symmetric_3d() {
    const double p = 1.0 / 6.0;
    return JumpDistribution(3, {{Site(1, 0, 0), p},
                                {Site(-1, 0, 0), p},
                                {Site(0, 1, 0), p},
                                {Site(0, -1, 0), p},
                                {Site(0, 0, 1), p},
                                {Site(0, 0, -1), p}});
}

namespace {

JumpDistribution parse_table(const std::string& text) {
    std::vector<JumpEntry> entries;
    int dim = 1;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto colon = item.rfind(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("jump table entry missing ':' in \"" + item + "\"");
        const std::string coords = item.substr(0, colon);
        const std::string prob = item.substr(colon + 1);
        JumpEntry e{};
        int axis = 0;
        std::stringstream cs(coords);
        std::string c;
        while (std::getline(cs, c, ',')) {
            if (axis >= max_dim) throw std::invalid_argument("jump offset has more than 3 axes");
            e.offset[axis] = std::stoi(c);
            ++axis;
        }
        if (axis == 0) throw std::invalid_argument("empty jump offset");
        dim = std::max(dim, axis);
        e.prob = std::stod(prob);
        entries.push_back(e);
    }
    return JumpDistribution(dim, std::move(entries));
}

}  // namespace

JumpDistribution JumpDistribution::parse(const std::string& text) {
    if (text == "directed" || text == "directed1d") return directed_1d();
    if (text == "sym1d" || text == "symmetric1d") return symmetric_1d();
    if (text == "sym2d" || text == "symmetric2d") return symmetric_2d();
    if (text == "sym3d" || text == "symmetric3d") return symmetric_3d();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        if (head == "biased1d") return biased_1d(std::stod(text.substr(colon + 1)));
        if (head == "biased2d") return biased_2d(std::stod(text.substr(colon + 1)));
    }
    return parse_table(text);
}

}  // namespace arw
