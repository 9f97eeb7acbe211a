#include "fwm/fitting.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fwm/errors.hpp"

namespace fwm {

void Trace::validate() const {
    const std::size_t n = time_us.size();
    if (n < 16) throw std::domain_error("Trace: need at least 16 samples, have " + std::to_string(n));
    if (probe_power.size() != n || signal_power.size() != n) {
        throw std::domain_error("Trace: column lengths differ");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(time_us[k]) || !std::isfinite(probe_power[k]) || !std::isfinite(signal_power[k])) {
            throw std::domain_error("Trace: non-finite entry at row " + std::to_string(k));
        }
        if (k > 0 && !(time_us[k] > time_us[k - 1])) {
            throw std::domain_error("Trace: time axis not strictly increasing at row " + std::to_string(k));
        }
        if (probe_power[k] < 0.0 || signal_power[k] < 0.0) {
            throw std::domain_error("Trace: negative power at row " + std::to_string(k));
        }
    }
}

namespace {

std::pair<std::string, std::string> parse_comment(const std::string& line) {
    std::string body = line.substr(1);
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) return {std::string{}, std::string{}};
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    return {trim(body.substr(0, eq)), trim(body.substr(eq + 1))};
}

} // namespace

Trace load_trace(std::istream& is) {
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    int col_time = -1, col_probe = -1, col_signal = -1;

    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto kv = parse_comment(line);
            if (!kv.first.empty()) trace.metadata.push_back(std::move(kv));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
                if (cells[c] == "time_us") col_time = c;
                else if (cells[c] == "probe_out_norm") col_probe = c;
                else if (cells[c] == "signal_out_norm") col_signal = c;
            }
            if (col_time < 0 || col_probe < 0 || col_signal < 0) {
                throw io_error("load_trace: line " + std::to_string(line_no) +
                               ": header must name time_us, probe_out_norm and signal_out_norm");
            }
            header_seen = true;
            continue;
        }
        const int needed = std::max({col_time, col_probe, col_signal});
        if (static_cast<int>(cells.size()) <= needed) {
            throw io_error("load_trace: line " + std::to_string(line_no) + ": expected at least " +
                           std::to_string(needed + 1) + " columns, got " + std::to_string(cells.size()));
        }
        auto number = [&](const std::string& s, const char* what) {
            try {
                std::size_t used = 0;
                const double v = std::stod(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw io_error("load_trace: line " + std::to_string(line_no) + ": cannot parse " +
                               what + " value '" + s + "'");
            }
        };
        trace.time_us.push_back(number(cells[col_time], "time_us"));
        trace.probe_power.push_back(number(cells[col_probe], "probe_out_norm"));
        trace.signal_power.push_back(number(cells[col_signal], "signal_out_norm"));
    }
    if (!header_seen) throw io_error("load_trace: no column header found");
    try {
        trace.validate();
    } catch (const std::domain_error& e) {
        throw io_error(std::string("load_trace: ") + e.what());
    }
    return trace;
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_trace: cannot open '" + path + "'");
    return load_trace(in);
}

Trace trace_from_result(const PropagationResult& result, int stride, const PhysicalConstants& consts) {
    if (stride < 1) throw std::domain_error("trace_from_result: stride must be at least 1");
    const double peak = result.probe_in.peak_power();
    if (!(peak > 0.0)) throw std::domain_error("trace_from_result: incident probe has no power");
    const double us = consts.us_per_gamma_time();
    Trace trace;
    const std::size_t n = result.probe_out.samples.size();
    for (std::size_t k = 0; k < n; k += static_cast<std::size_t>(stride)) {
        trace.time_us.push_back(static_cast<double>(k) * result.probe_out.dt * us);
        trace.probe_power.push_back(std::norm(result.probe_out.samples[k]) / peak);
        trace.signal_power.push_back(std::norm(result.signal_out.samples[k]) / peak);
    }
    trace.validate();
    return trace;
}

} // namespace fwm
