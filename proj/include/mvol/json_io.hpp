#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvol/error.hpp"
#include "mvol/geometry.hpp"
#include "mvol/laurent.hpp"
#include "mvol/mixed_volume.hpp"
#include "mvol/rational.hpp"

namespace mvol::io {

/// Insertion-ordered JSON, so serialized output is stable.
using Json = nlohmann::ordered_json;

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline const Json& member(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(path, "missing key \"" + key + "\"");
    return *it;
}

inline const Json& array_at(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array");
    return j;
}

}  // namespace detail

inline Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON at " + detail::line_column(text, e.byte) + " (byte " + std::to_string(e.byte) +
                         ")");
    }
}

/// Accepts "p/q" strings and JSON integers; floating-point literals are rejected.
inline Rational rational_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            detail::schema_error(path, e.what());
        }
    }
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<std::uint64_t>())))
                                      : Rational(Integer(std::to_string(j.get<std::int64_t>())));
    }
    if (j.is_number_float()) detail::schema_error(path, "floating-point numbers are not accepted; use a string like \"3/2\"");
    detail::schema_error(path, "expected a rational string or an integer");
}

inline std::int64_t integer_from_json(const Json& j, const std::string& path) {
    if (j.is_number_unsigned()) {
        const auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            detail::schema_error(path, "exponent out of range");
        return static_cast<std::int64_t>(v);
    }
    if (j.is_number_integer()) return j.get<std::int64_t>();
    detail::schema_error(path, "expected an integer exponent");
}

inline Point point_from_json(const Json& j, const std::string& path) {
    Point p;
    const auto& arr = detail::array_at(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) p.push_back(rational_from_json(arr[i], path + "/" + std::to_string(i)));
    return p;
}

inline std::vector<Point> points_from_json(const Json& j, const std::string& path) {
    std::vector<Point> pts;
    const auto& arr = detail::array_at(j, path);
    if (arr.empty()) detail::schema_error(path, "expected at least one point");
    for (std::size_t i = 0; i < arr.size(); ++i) pts.push_back(point_from_json(arr[i], path + "/" + std::to_string(i)));
    return pts;
}

/// {"points": [[...], ...]}
inline PointConfiguration read_configuration(const Json& doc) {
    auto pts = points_from_json(detail::member(doc, "points", ""), "/points");
    const std::size_t dim = pts.front().size();
    return PointConfiguration(dim, std::move(pts));
}

/// {"polytopes": [[[...], ...], ...]}; each polytope is the hull of its listed points.
inline PolytopeTuple read_tuple(const Json& doc) {
    const auto& arr = detail::array_at(detail::member(doc, "polytopes", ""), "/polytopes");
    if (arr.empty()) detail::schema_error("/polytopes", "expected at least one polytope");
    std::vector<ConvexPolytope> polys;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        auto pts = points_from_json(arr[i], "/polytopes/" + std::to_string(i));
        if (i == 0) dim = pts.front().size();
        polys.push_back(convex_hull(PointConfiguration(dim, std::move(pts))));
    }
    return PolytopeTuple(dim, std::move(polys));
}

inline LaurentPolynomial polynomial_from_json(const Json& j, const std::string& path) {
    const auto& terms = detail::array_at(detail::member(j, "terms", path), path + "/terms");
    if (terms.empty()) detail::schema_error(path + "/terms", "expected at least one term");
    std::vector<std::pair<Exponent, Rational>> parsed;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = path + "/terms/" + std::to_string(i);
        const auto& exp = detail::array_at(detail::member(terms[i], "exp", tp), tp + "/exp");
        Exponent a;
        for (std::size_t k = 0; k < exp.size(); ++k) a.push_back(integer_from_json(exp[k], tp + "/exp/" + std::to_string(k)));
        parsed.emplace_back(std::move(a), rational_from_json(detail::member(terms[i], "coef", tp), tp + "/coef"));
    }
    LaurentPolynomial f(parsed.front().first.size());
    for (const auto& [a, c] : parsed) f.add_term(a, c);
    return f;
}

/// {"system": [{"terms": [{"exp": [...], "coef": "..."}, ...]}, ...]}
inline LaurentSystem read_system(const Json& doc) {
    const auto& arr = detail::array_at(detail::member(doc, "system", ""), "/system");
    if (arr.empty()) detail::schema_error("/system", "expected at least one polynomial");
    std::vector<LaurentPolynomial> polys;
    for (std::size_t i = 0; i < arr.size(); ++i) polys.push_back(polynomial_from_json(arr[i], "/system/" + std::to_string(i)));
    return LaurentSystem(std::move(polys));
}

/// {"direction": [...]}
inline DirectionVector read_direction(const Json& doc) {
    return {point_from_json(detail::member(doc, "direction", ""), "/direction")};
}

inline Json to_json(const Rational& r) {
    return to_string(r);
}

inline Json to_json(const Point& p) {
    Json arr = Json::array();
    for (const auto& x : p) arr.push_back(to_string(x));
    return arr;
}

inline Json to_json(const std::vector<Point>& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(to_json(p));
    return arr;
}

inline Json to_json(const LaurentPolynomial& f) {
    Json terms = Json::array();
    for (const auto& [a, c] : f.terms()) terms.push_back(Json{{"exp", a}, {"coef", to_string(c)}});
    return Json{{"terms", std::move(terms)}};
}

inline Json to_json(const LaurentSystem& s) {
    Json arr = Json::array();
    for (const auto& f : s.polynomials()) arr.push_back(to_json(f));
    return arr;
}

/// Human-readable form such as "x1^2 - 3/2*x1*x2^-1 + 1"; "0" for the zero polynomial.
inline std::string format_polynomial(const LaurentPolynomial& f) {
    if (f.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [a, c] = *it;
        std::string mono;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(j + 1);
            if (a[j] != 1) mono += "^" + std::to_string(a[j]);
        }
        const Rational mag = abs(c);
        std::string term;
        if (mono.empty()) term = to_string(mag);
        else if (mag == 1) term = mono;
        else term = to_string(mag) + "*" + mono;
        if (first) out = (c < 0 ? "-" : "") + term;
        else out += (c < 0 ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

}  // namespace mvol::io
