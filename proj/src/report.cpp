#include "cvhide/report.hpp"

#include <nlohmann/json.hpp>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "cvhide/errors.hpp"

namespace cvhide {

std::string format_sig12(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (size_t c = 0; c < table.columns.size(); ++c)
        os << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    os << '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) os << row[c] << (c + 1 < row.size() ? "," : "");
        os << '\n';
    }
    return os.str();
}

std::string to_text(const Table& table) {
    std::vector<size_t> width(table.columns.size(), 0);
    for (size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
    for (const auto& row : table.rows)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (size_t c = 0; c < cells.size(); ++c) {
            os << cells[c];
            if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
        }
        os << '\n';
    };
    emit(table.columns);
    for (const auto& row : table.rows) emit(row);
    return os.str();
}

std::string to_json(const Table& table, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
            r[table.columns[c]] = row[c];
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["provenance"] = {{"cutoffs", table.cutoffs}, {"grids", table.grids}};
    return j.dump(2) + "\n";
}

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> out;
    const auto c1 = text.find(':');
    try {
        if (c1 == std::string::npos) {
            out.push_back(std::stod(text));
            return out;
        }
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw invalid_parameter("range must be start:stop:step or a single value: " + text);
        const double start = std::stod(text.substr(0, c1));
        const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(text.substr(c2 + 1));
        if (step <= 0.0 || stop < start)
            throw invalid_parameter("range must have step > 0 and stop >= start: " + text);
        const int count = int(std::floor((stop - start) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) out.push_back(start + i * step);
        return out;
    } catch (const std::invalid_argument&) {
        throw invalid_parameter("malformed range: " + text);
    } catch (const std::out_of_range&) {
        throw invalid_parameter("malformed range: " + text);
    }
}

std::vector<long long> parse_int_range(const std::string& text) {
    std::vector<long long> out;
    for (double v : parse_range(text)) out.push_back(llround(v));
    return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (jobs <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min(jobs, count);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

int default_jobs() {
    if (const char* env = std::getenv("CVHIDE_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

} // namespace cvhide
