#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvol/error.hpp"
#include "mvol/geometry.hpp"
#include "mvol/json_io.hpp"
#include "mvol/laurent.hpp"
#include "mvol/mixed_volume.hpp"
#include "mvol/reduction.hpp"

namespace mvol::cli {

enum class Command { volume, mixed_volume, reduce, verify, bkk, initial, bench };
enum class Format { json, plain };

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitEngine = 4;

inline const std::vector<std::pair<std::string, Command>>& command_names() {
    static const std::vector<std::pair<std::string, Command>> names = {
        {"volume", Command::volume}, {"mixed-volume", Command::mixed_volume},
        {"reduce", Command::reduce}, {"verify", Command::verify},
        {"bkk", Command::bkk},       {"initial", Command::initial},
        {"bench", Command::bench}};
    return names;
}

inline std::string command_name(Command c) {
    for (const auto& [name, cmd] : command_names())
        if (cmd == c) return name;
    return "?";
}

struct JobSpec {
    Command command = Command::volume;
    /// Input file; stdin is read when neither this nor inline_json is set.
    std::optional<std::string> input_path;
    std::optional<std::string> inline_json;
    Engine engine = Engine::ie;
    std::uint64_t seed = 0;
    Format format = Format::json;
    /// Largest instance size for `bench`.
    std::size_t bench_max_size = 5;
};

struct RunResult {
    int status = kExitOk;
    std::string output;
    std::string error;
};

namespace detail {

inline std::string read_input(const JobSpec& spec, std::istream& in) {
    if (spec.inline_json) return *spec.inline_json;
    std::ostringstream buf;
    if (spec.input_path) {
        std::ifstream file(*spec.input_path);
        if (!file) throw ParseError("cannot open input file " + *spec.input_path);
        buf << file.rdbuf();
    } else {
        buf << in.rdbuf();
    }
    return buf.str();
}

inline io::Json header(const JobSpec& spec, bool uses_engine) {
    io::Json j;
    j["command"] = command_name(spec.command);
    if (uses_engine) j["engine"] = engine_name(spec.engine);
    j["seed"] = spec.seed;
    return j;
}

inline std::string emit(const io::Json& j) {
    return j.dump(2) + "\n";
}

inline std::string point_text(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
}

inline PointConfiguration distinct_configuration(const io::Json& doc) {
    auto config = io::read_configuration(doc);
    if (config.has_duplicates()) throw PreconditionError("input points must be distinct");
    return config;
}

// Benchmark instance families. All draws are functions of the job seed.

inline PolytopeTuple box_tuple(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> side(1, 3);
    std::vector<ConvexPolytope> boxes;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> lengths(n);
        for (auto& l : lengths) l = side(rng);
        std::vector<Point> corners;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            Point p(n, Rational(0));
            for (std::size_t j = 0; j < n; ++j)
                if (mask >> j & 1) p[j] = lengths[j];
            corners.push_back(std::move(p));
        }
        boxes.push_back(convex_hull(PointConfiguration(n, std::move(corners))));
    }
    return PolytopeTuple(n, std::move(boxes));
}

inline std::vector<Point> distinct_lattice_points(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
    std::uniform_int_distribution<long> coord(-3, 3);
    std::vector<Point> pts;
    while (pts.size() < count) {
        Point p(dim);
        for (auto& x : p) x = coord(rng);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
    }
    return pts;
}

/// Reduction of `size` random points in R^{size-2} (R^1 for size 2).
inline PolytopeTuple simplex_tuple(std::mt19937_64& rng, std::size_t size) {
    const std::size_t n = size > 2 ? size - 2 : 1;
    return build_simplices(PointConfiguration(n, distinct_lattice_points(rng, size, n))).as_tuple();
}

inline std::vector<Segment> random_segments(std::mt19937_64& rng, std::size_t n) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < n; ++i) {
        auto ends = distinct_lattice_points(rng, 2, n);
        segs.push_back({ends[0], ends[1]});
    }
    return segs;
}

template <typename F>
std::string timed_row(const std::string& family, std::size_t size, const std::string& engine, F&& compute) {
    const auto start = std::chrono::steady_clock::now();
    const Rational value = compute();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    std::ostringstream row;
    row << family << ',' << size << ',' << engine << ',' << std::fixed << std::setprecision(3) << elapsed.count() << ','
        << to_string(value) << '\n';
    return row.str();
}

inline std::string bench(const JobSpec& spec) {
    std::string csv = "family,size,engine,wall_time_ms,mixed_volume\n";
    const std::string engine = engine_name(spec.engine);
    std::mt19937_64 rng(spec.seed);
    for (std::size_t n = 2; n <= spec.bench_max_size; ++n) {
        const auto boxes = box_tuple(rng, n);
        csv += timed_row("boxes", n, engine, [&] { return mixed_volume(boxes, spec.engine, spec.seed); });
        const auto simplices = simplex_tuple(rng, n);
        csv += timed_row("simplices", n, engine, [&] { return mixed_volume(simplices, spec.engine, spec.seed); });
        const auto segs = random_segments(rng, n);
        std::vector<ConvexPolytope> polys;
        for (const auto& [a, b] : segs) polys.push_back(convex_hull(PointConfiguration(n, {a, b})));
        const PolytopeTuple seg_tuple(n, std::move(polys));
        csv += timed_row("segments", n, engine, [&] { return mixed_volume(seg_tuple, spec.engine, spec.seed); });
        csv += timed_row("segments", n, "det", [&] { return segment_mixed_volume(segs, n); });
    }
    return csv;
}

inline std::string dispatch(const JobSpec& spec, std::istream& in) {
    if (spec.command == Command::bench) return bench(spec);

    const auto doc = io::parse_document(read_input(spec, in));
    const bool json = spec.format == Format::json;
    switch (spec.command) {
    case Command::volume: {
        const auto v = normalized_volume(distinct_configuration(doc));
        if (!json) return to_string(v) + "\n";
        auto j = header(spec, false);
        j["result"] = to_string(v);
        return emit(j);
    }
    case Command::mixed_volume: {
        const auto v = mixed_volume(io::read_tuple(doc), spec.engine, spec.seed);
        if (!json) return to_string(v) + "\n";
        auto j = header(spec, true);
        j["result"] = to_string(v);
        return emit(j);
    }
    case Command::reduce: {
        const auto r = build_simplices(distinct_configuration(doc));
        if (!json) {
            std::string out;
            for (const auto& s : r.simplices) {
                for (std::size_t i = 0; i < s.vertices.size(); ++i) out += (i ? " " : "") + point_text(s.vertices[i]);
                out += "\n";
            }
            return out;
        }
        auto j = header(spec, false);
        j["n"] = r.source.ambient_dim();
        j["m"] = r.source.size();
        j["hat_points"] = io::to_json(r.hat_points);
        io::Json polys = io::Json::array();
        for (const auto& s : r.simplices) polys.push_back(io::to_json(s.vertices));
        j["polytopes"] = std::move(polys);
        return emit(j);
    }
    case Command::verify: {
        const auto c = verify_main_theorem(distinct_configuration(doc), spec.engine, spec.seed);
        if (!json)
            return "lhs " + to_string(c.lhs) + "\nrhs " + to_string(c.rhs) + "\nequal " + (c.equal ? "true" : "false") +
                   "\n";
        auto j = header(spec, true);
        j["lhs"] = to_string(c.lhs);
        j["rhs"] = to_string(c.rhs);
        j["equal"] = c.equal;
        return emit(j);
    }
    case Command::bkk: {
        const auto system = io::read_system(doc);
        const auto v = bkk_bound(system, spec.engine, spec.seed);
        std::optional<Rational> kushnirenko;
        bool shared = true;
        for (const auto& f : system.polynomials()) shared = shared && f.support() == system[0].support();
        if (shared) kushnirenko = kushnirenko_bound(system);
        if (!json) return to_string(v) + "\n";
        auto j = header(spec, true);
        j["result"] = to_string(v);
        if (kushnirenko) j["kushnirenko"] = to_string(*kushnirenko);
        return emit(j);
    }
    case Command::initial: {
        const auto system = io::read_system(doc);
        const auto dir = io::read_direction(doc);
        const auto init = initial_system(system, dir);
        if (!json) {
            std::string out;
            for (const auto& f : init.polynomials()) out += io::format_polynomial(f) + "\n";
            return out;
        }
        auto j = header(spec, false);
        j["direction"] = io::to_json(dir.alpha);
        j["system"] = io::to_json(init);
        return emit(j);
    }
    case Command::bench:
        break;
    }
    return {};
}

}  // namespace detail

/// Runs one job. Never throws for input or mathematical errors; they become exit statuses.
inline RunResult run(const JobSpec& spec, std::istream& in = std::cin) {
    RunResult r;
    try {
        r.output = detail::dispatch(spec, in);
    } catch (const ParseError& e) {
        r.status = kExitParse;
        r.error = std::string("parse error: ") + e.what();
    } catch (const PreconditionError& e) {
        r.status = kExitPrecondition;
        r.error = std::string("precondition violated: ") + e.what();
    } catch (const NonGenericLiftingError& e) {
        r.status = kExitEngine;
        r.error = std::string("engine failure: ") + e.what() + " (last seed " + std::to_string(e.last_seed()) + ")";
    }
    return r;
}

}  // namespace mvol::cli
