#include "gridnav/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace gridnav {

bool operator==(const Scenario& a, const Scenario& b) {
    const auto mapping_eq = [](const MappingParams& x, const MappingParams& y) {
        return x.n_av == y.n_av && x.sync_period == y.sync_period && x.time_step == y.time_step &&
               x.epsilon == y.epsilon && x.offset_range == y.offset_range && x.speed == y.speed &&
               x.seed == y.seed && x.max_time == y.max_time;
    };
    const auto sensor_eq = [](const SensorConfig& x, const SensorConfig& y) {
        return x.rho_max == y.rho_max && x.ray_count == y.ray_count &&
               x.range_step == y.range_step;
    };
    const auto aps_eq = [](const std::vector<AccessPoint>& x, const std::vector<AccessPoint>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].center != y[i].center || x[i].coverage_radius != y[i].coverage_radius)
                return false;
        return true;
    };
    const auto weight_eq = [](const WeightKind& x, const WeightKind& y) {
        return x.law == y.law && x.gamma == y.gamma && x.beta == y.beta;
    };
    const auto post_eq = [](const PostprocessParams& x, const PostprocessParams& y) {
        return x.kernel_size == y.kernel_size && x.kernel_radius == y.kernel_radius &&
               x.downsample == y.downsample && x.tau == y.tau;
    };
    const auto plan_eq = [](const PlannerParams& x, const PlannerParams& y) {
        return x.alpha == y.alpha && x.algorithm == y.algorithm && x.start == y.start &&
               x.stop == y.stop;
    };
    const auto bench_eq = [](const BenchParams& x, const BenchParams& y) {
        return x.trials == y.trials && x.alphas == y.alphas && x.algorithms == y.algorithms &&
               x.baseline == y.baseline && x.weights == y.weights && x.seed == y.seed;
    };
    return a.geom == b.geom && a.obstacles == b.obstacles && a.av_starts == b.av_starts &&
           mapping_eq(a.mapping, b.mapping) && sensor_eq(a.sensor, b.sensor) &&
           aps_eq(a.aps, b.aps) && weight_eq(a.weight, b.weight) && post_eq(a.post, b.post) &&
           plan_eq(a.planner, b.planner) && bench_eq(a.bench, b.bench);
}

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ScenarioError("line " + std::to_string(line) + ": " + message);
}

long long parse_int(const std::string& v, int line) {
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& v, int line) {
    std::size_t pos = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(v, &pos);
    } catch (const std::exception&) {
        fail(line, "expected an unsigned integer, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
    return out;
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
    return out;
}

std::vector<std::string> split(const std::string& v, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : v) {
        if (ch == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

Cell parse_cell(const std::string& v, int line) {
    const auto parts = split(v, ',');
    if (parts.size() != 2) fail(line, "expected 'n1,n2', got '" + v + "'");
    return Cell{static_cast<int>(parse_int(parts[0], line)),
                static_cast<int>(parse_int(parts[1], line))};
}

ObstacleRect parse_rect(const std::string& v, int line) {
    const auto parts = split(v, ',');
    if (parts.size() != 2) fail(line, "expected 'r1:r2,c1:c2', got '" + v + "'");
    const auto rows = split(parts[0], ':');
    const auto cols = split(parts[1], ':');
    if (rows.size() != 2 || cols.size() != 2) fail(line, "expected 'r1:r2,c1:c2', got '" + v + "'");
    return ObstacleRect{static_cast<int>(parse_int(rows[0], line)),
                        static_cast<int>(parse_int(rows[1], line)),
                        static_cast<int>(parse_int(cols[0], line)),
                        static_cast<int>(parse_int(cols[1], line))};
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::map<int, ObstacleRect> rects;
    std::map<int, Cell> starts;
    std::map<int, AccessPoint> aps;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string content = raw;
        const std::size_t hash = content.find('#');
        if (hash != std::string::npos) content.erase(hash);
        content = trim(content);
        if (content.empty()) continue;

        const std::size_t eq = content.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");

        if (key == "grid.n") s.geom.n = static_cast<int>(parse_int(value, line));
        else if (key == "grid.delta") s.geom.delta = parse_double(value, line);
        else if (key.rfind("obstacle.", 0) == 0) {
            const int i = static_cast<int>(parse_int(key.substr(9), line));
            if (i < 1) fail(line, "obstacle index must be >= 1");
            if (rects.count(i)) fail(line, "duplicate key '" + key + "'");
            rects[i] = parse_rect(value, line);
        } else if (key == "av.count") s.mapping.n_av = static_cast<int>(parse_int(value, line));
        else if (key.rfind("av.start.", 0) == 0) {
            const int i = static_cast<int>(parse_int(key.substr(9), line));
            if (i < 1) fail(line, "start index must be >= 1");
            if (starts.count(i)) fail(line, "duplicate key '" + key + "'");
            starts[i] = parse_cell(value, line);
        } else if (key == "mapping.sync_period") s.mapping.sync_period = parse_double(value, line);
        else if (key == "mapping.time_step") s.mapping.time_step = parse_double(value, line);
        else if (key == "mapping.epsilon") s.mapping.epsilon = parse_double(value, line);
        else if (key == "mapping.offset_range")
            s.mapping.offset_range = static_cast<int>(parse_int(value, line));
        else if (key == "mapping.speed") s.mapping.speed = parse_double(value, line);
        else if (key == "mapping.seed") s.mapping.seed = parse_u64(value, line);
        else if (key == "mapping.max_time") s.mapping.max_time = parse_double(value, line);
        else if (key == "sensor.rho_max") s.sensor.rho_max = parse_double(value, line);
        else if (key == "sensor.ray_count")
            s.sensor.ray_count = static_cast<int>(parse_int(value, line));
        else if (key == "sensor.range_step") s.sensor.range_step = parse_double(value, line);
        else if (key.rfind("ap.", 0) == 0) {
            const int i = static_cast<int>(parse_int(key.substr(3), line));
            if (i < 1) fail(line, "AP index must be >= 1");
            if (aps.count(i)) fail(line, "duplicate key '" + key + "'");
            const auto parts = split(value, ',');
            if (parts.size() != 2 && parts.size() != 3)
                fail(line, "expected 'n1,n2[,radius]', got '" + value + "'");
            AccessPoint ap;
            ap.center = Cell{static_cast<int>(parse_int(parts[0], line)),
                             static_cast<int>(parse_int(parts[1], line))};
            ap.coverage_radius = parts.size() == 3 ? parse_double(parts[2], line) : 100.0;
            aps[i] = ap;
        } else if (key == "radio.weight") {
            try {
                s.weight.law = weight_law_from_name(value);
            } catch (const std::invalid_argument& e) {
                fail(line, e.what());
            }
        } else if (key == "radio.gamma") s.weight.gamma = parse_double(value, line);
        else if (key == "radio.beta") s.weight.beta = parse_double(value, line);
        else if (key == "post.kernel_size")
            s.post.kernel_size = static_cast<int>(parse_int(value, line));
        else if (key == "post.kernel_radius")
            s.post.kernel_radius = static_cast<int>(parse_int(value, line));
        else if (key == "post.downsample")
            s.post.downsample = static_cast<int>(parse_int(value, line));
        else if (key == "post.tau") s.post.tau = parse_double(value, line);
        else if (key == "plan.alpha") s.planner.alpha = parse_double(value, line);
        else if (key == "plan.algorithm") {
            try {
                s.planner.algorithm = algorithm_from_name(value);
            } catch (const std::invalid_argument& e) {
                fail(line, e.what());
            }
        } else if (key == "plan.start") s.planner.start = parse_cell(value, line);
        else if (key == "plan.stop") s.planner.stop = parse_cell(value, line);
        else if (key == "bench.trials") s.bench.trials = static_cast<int>(parse_int(value, line));
        else if (key == "bench.alphas") {
            s.bench.alphas.clear();
            for (const std::string& p : split(value, ','))
                s.bench.alphas.push_back(parse_double(p, line));
        } else if (key == "bench.algorithms") {
            s.bench.algorithms.clear();
            for (const std::string& p : split(value, ',')) {
                try {
                    s.bench.algorithms.push_back(algorithm_from_name(p));
                } catch (const std::invalid_argument& e) {
                    fail(line, e.what());
                }
            }
        } else if (key == "bench.baseline") {
            try {
                s.bench.baseline = algorithm_from_name(value);
            } catch (const std::invalid_argument& e) {
                fail(line, e.what());
            }
        } else if (key == "bench.weights") {
            s.bench.weights.clear();
            for (const std::string& p : split(value, ',')) {
                try {
                    s.bench.weights.push_back(weight_law_from_name(p));
                } catch (const std::invalid_argument& e) {
                    fail(line, e.what());
                }
            }
        } else if (key == "bench.seed") s.bench.seed = parse_u64(value, line);
        else fail(line, "unknown key '" + key + "'");
    }

    const auto collect = [&](auto& dst, const auto& src, const char* what) {
        int expect = 1;
        for (const auto& [i, v] : src) {
            if (i != expect)
                throw ScenarioError(std::string(what) + " indices must be consecutive from 1; missing " +
                                    std::string(what) + "." + std::to_string(expect));
            dst.push_back(v);
            ++expect;
        }
    };
    collect(s.obstacles, rects, "obstacle");
    collect(s.av_starts, starts, "av.start");
    collect(s.aps, aps, "ap");

    // semantic validation
    try {
        s.geom.validate();
        s.mapping.validate();
        s.sensor.validate();
        s.post.validate();
        s.weight.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        const ObstacleRect& r = s.obstacles[i];
        if (r.r1 > r.r2 || r.c1 > r.c2 || r.r1 < 1 || r.c1 < 1 || r.r2 > s.geom.n ||
            r.c2 > s.geom.n)
            throw ScenarioError("obstacle." + std::to_string(i + 1) + " = " +
                                std::to_string(r.r1) + ":" + std::to_string(r.r2) + "," +
                                std::to_string(r.c1) + ":" + std::to_string(r.c2) +
                                " exceeds the grid bounds or is empty");
    }
    for (std::size_t i = 0; i < s.aps.size(); ++i) {
        try {
            s.aps[i].validate(s.geom);
        } catch (const std::invalid_argument& e) {
            throw ScenarioError("ap." + std::to_string(i + 1) + ": " + e.what());
        }
    }
    if (!s.av_starts.empty() && static_cast<int>(s.av_starts.size()) != s.mapping.n_av)
        throw ScenarioError("av.count is " + std::to_string(s.mapping.n_av) + " but " +
                            std::to_string(s.av_starts.size()) + " av.start entries were given");
    for (std::size_t i = 0; i < s.av_starts.size(); ++i)
        if (!s.geom.contains(s.av_starts[i]))
            throw ScenarioError("av.start." + std::to_string(i + 1) + " outside the grid");
    for (const std::optional<Cell>* ep : {&s.planner.start, &s.planner.stop})
        if (*ep && !s.geom.contains(**ep)) throw ScenarioError("plan endpoint outside the grid");
    if (!(s.planner.alpha >= 0.0)) throw ScenarioError("plan.alpha must be >= 0");
    if (s.bench.trials < 1) throw ScenarioError("bench.trials must be >= 1");
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "grid.n = " << s.geom.n << "\n";
    out << "grid.delta = " << fmt_double(s.geom.delta) << "\n";
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        const ObstacleRect& r = s.obstacles[i];
        out << "obstacle." << i + 1 << " = " << r.r1 << ":" << r.r2 << "," << r.c1 << ":" << r.c2
            << "\n";
    }
    out << "av.count = " << s.mapping.n_av << "\n";
    for (std::size_t i = 0; i < s.av_starts.size(); ++i)
        out << "av.start." << i + 1 << " = " << s.av_starts[i].n1 << "," << s.av_starts[i].n2
            << "\n";
    out << "mapping.sync_period = " << fmt_double(s.mapping.sync_period) << "\n";
    out << "mapping.time_step = " << fmt_double(s.mapping.time_step) << "\n";
    out << "mapping.epsilon = " << fmt_double(s.mapping.epsilon) << "\n";
    out << "mapping.offset_range = " << s.mapping.offset_range << "\n";
    out << "mapping.speed = " << fmt_double(s.mapping.speed) << "\n";
    out << "mapping.seed = " << s.mapping.seed << "\n";
    out << "mapping.max_time = " << fmt_double(s.mapping.max_time) << "\n";
    out << "sensor.rho_max = " << fmt_double(s.sensor.rho_max) << "\n";
    out << "sensor.ray_count = " << s.sensor.ray_count << "\n";
    out << "sensor.range_step = " << fmt_double(s.sensor.range_step) << "\n";
    for (std::size_t i = 0; i < s.aps.size(); ++i)
        out << "ap." << i + 1 << " = " << s.aps[i].center.n1 << "," << s.aps[i].center.n2 << ","
            << fmt_double(s.aps[i].coverage_radius) << "\n";
    out << "radio.weight = " << weight_law_name(s.weight.law) << "\n";
    out << "radio.gamma = " << fmt_double(s.weight.gamma) << "\n";
    out << "radio.beta = " << fmt_double(s.weight.beta) << "\n";
    out << "post.kernel_size = " << s.post.kernel_size << "\n";
    out << "post.kernel_radius = " << s.post.kernel_radius << "\n";
    out << "post.downsample = " << s.post.downsample << "\n";
    out << "post.tau = " << fmt_double(s.post.tau) << "\n";
    out << "plan.alpha = " << fmt_double(s.planner.alpha) << "\n";
    out << "plan.algorithm = " << algorithm_name(s.planner.algorithm) << "\n";
    if (s.planner.start)
        out << "plan.start = " << s.planner.start->n1 << "," << s.planner.start->n2 << "\n";
    if (s.planner.stop)
        out << "plan.stop = " << s.planner.stop->n1 << "," << s.planner.stop->n2 << "\n";
    out << "bench.trials = " << s.bench.trials << "\n";
    out << "bench.alphas = ";
    for (std::size_t i = 0; i < s.bench.alphas.size(); ++i)
        out << (i ? "," : "") << fmt_double(s.bench.alphas[i]);
    out << "\n";
    out << "bench.algorithms = ";
    for (std::size_t i = 0; i < s.bench.algorithms.size(); ++i)
        out << (i ? "," : "") << algorithm_name(s.bench.algorithms[i]);
    out << "\n";
    out << "bench.baseline = " << algorithm_name(s.bench.baseline) << "\n";
    out << "bench.weights = ";
    for (std::size_t i = 0; i < s.bench.weights.size(); ++i)
        out << (i ? "," : "") << weight_law_name(s.bench.weights[i]);
    out << "\n";
    out << "bench.seed = " << s.bench.seed << "\n";
    return out.str();
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

BinaryGrid truth_map(const Scenario& s) {
    BinaryGrid truth(s.geom);
    for (const ObstacleRect& r : s.obstacles)
        for (int i = r.r1; i <= r.r2; ++i)
            for (int j = r.c1; j <= r.c2; ++j) truth.set(Cell{i, j}, 1);
    return truth;
}

std::vector<Cell> resolved_starts(const Scenario& s) {
    if (!s.av_starts.empty()) return s.av_starts;
    const int mid = (s.geom.n + 1) / 2;
    const Cell sides[4] = {{1, mid}, {mid, s.geom.n}, {s.geom.n, mid}, {mid, 1}};
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(s.mapping.n_av));
    for (int i = 0; i < s.mapping.n_av; ++i) {
        Cell c = sides[i % 4];
        // additional vehicles shift along their side so starts stay distinct
        const int shift = (i / 4) * std::max(1, s.geom.n / 8);
        if (c.n1 == 1 || c.n1 == s.geom.n) c.n2 = std::min(s.geom.n, c.n2 + shift);
        else c.n1 = std::min(s.geom.n, c.n1 + shift);
        out.push_back(c);
    }
    return out;
}

} // namespace gridnav
