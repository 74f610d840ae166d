#pragma once

// Strict JSON config reading: every object is consumed through a Fields view,
// and any key that was never asked for is reported as an error.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hilbertine/hilbertine.hpp"

namespace hilbertine::cli {

using Json = nlohmann::json;

[[noreturn]] inline void config_error(const std::string& where, const std::string& what) {
    fail(ErrorCode::ConfigError, where + ": " + what);
}

class Fields {
public:
    Fields(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) config_error(where_, "expected an object");
    }

    bool has(const std::string& k) const { return j_.contains(k); }

    const Json& at(const std::string& k) {
        seen_.insert(k);
        if (!j_.contains(k)) config_error(where_, "missing field \"" + k + "\"");
        return j_.at(k);
    }

    double number(const std::string& k) {
        const Json& v = at(k);
        if (!v.is_number()) config_error(path(k), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) config_error(path(k), "expected a finite number");
        return x;
    }
    double number(const std::string& k, double dflt) { return has(k) ? number(k) : (seen_.insert(k), dflt); }

    double positive(const std::string& k, double dflt) {
        const double x = number(k, dflt);
        if (!(x > 0)) config_error(path(k), "must be positive");
        return x;
    }

    int integer(const std::string& k) {
        const Json& v = at(k);
        if (!v.is_number_integer()) config_error(path(k), "expected an integer");
        return v.get<int>();
    }
    int integer(const std::string& k, int dflt) { return has(k) ? integer(k) : (seen_.insert(k), dflt); }

    std::string string(const std::string& k) {
        const Json& v = at(k);
        if (!v.is_string()) config_error(path(k), "expected a string");
        return v.get<std::string>();
    }
    std::string string(const std::string& k, const std::string& dflt) { return has(k) ? string(k) : (seen_.insert(k), dflt); }

    const Json& array(const std::string& k) {
        const Json& v = at(k);
        if (!v.is_array()) config_error(path(k), "expected an array");
        return v;
    }

    Fields object(const std::string& k) { return Fields(at(k), path(k)); }

    std::string path(const std::string& k) const { return where_ + "." + k; }
    const std::string& where() const { return where_; }

    // Rejects keys that were never requested.
    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) config_error(where_, "unknown field \"" + k + "\"");
    }

private:
    const Json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error(path, "cannot open config file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        config_error(path, std::string("invalid JSON: ") + e.what());
    }
}

constexpr int kConfigVersion = 1;

inline void check_version(Fields& f) {
    if (f.integer("version") != kConfigVersion)
        config_error(f.path("version"), "unsupported version (expected " + std::to_string(kConfigVersion) + ")");
}

// ---------------------------------------------------------------------------
// Value readers

inline double as_number(const Json& v, const std::string& where) {
    if (!v.is_number()) config_error(where, "expected a number");
    return v.get<double>();
}

inline Vec2 read_vec2(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) config_error(where, "expected [x, y]");
    return {as_number(v[0], where), as_number(v[1], where)};
}

inline Vec3 read_vec3(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) config_error(where, "expected [x, y, z]");
    return {as_number(v[0], where), as_number(v[1], where), as_number(v[2], where)};
}

// [x, y] is the chart point [x : y : 1]; [x, y, z] is homogeneous.
inline Vec3 read_point(const Json& v, const std::string& where) {
    if (v.is_array() && v.size() == 2) {
        const Vec2 p = read_vec2(v, where);
        return {p.x(), p.y(), 1.0};
    }
    return read_vec3(v, where);
}

inline Mat3 read_mat3(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) config_error(where, "expected a 3x3 matrix");
    Mat3 m;
    for (int i = 0; i < 3; ++i) m.row(i) = read_vec3(v[i], where + "[" + std::to_string(i) + "]").transpose();
    return m;
}

inline std::vector<double> read_numbers(const Json& v, const std::string& where) {
    if (!v.is_array()) config_error(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline Convention read_convention(Fields& f) {
    const std::string c = f.string("convention", "log");
    if (c == "log") return Convention::LogCrossRatio;
    if (c == "half-log") return Convention::HalfLogCrossRatio;
    config_error(f.path("convention"), "expected \"log\" or \"half-log\"");
}

// Domain: {"type": "disk" | "simplex" | "log-cusp" | "discriminant-disk"}
//       | {"type": "polygon", "vertices": [...]}
//       | {"type": "conic", "matrix": M}
//       | {"type": "halfplanes", "lines": [...], "interior": p?}
inline ConvexDomain read_domain(Fields f) {
    const std::string type = f.string("type");
    ConvexDomain d = models::unit_disk();
    if (type == "disk") {
    } else if (type == "simplex") {
        d = models::simplex();
    } else if (type == "log-cusp") {
        d = models::log_cusp_domain();
    } else if (type == "discriminant-disk") {
        d = models::discriminant_disk();
    } else if (type == "polygon") {
        const Json& vs = f.array("vertices");
        std::vector<Vec3> pts;
        for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(read_point(vs[i], f.path("vertices")));
        d = ConvexDomain::polygon(pts);
    } else if (type == "conic") {
        d = ConvexDomain::conic(Conic(read_mat3(f.at("matrix"), f.path("matrix"))));
    } else if (type == "halfplanes") {
        const Json& ls = f.array("lines");
        std::vector<Vec3> lines;
        for (std::size_t i = 0; i < ls.size(); ++i) lines.push_back(read_vec3(ls[i], f.path("lines")));
        std::optional<Vec3> interior;
        if (f.has("interior")) interior = read_point(f.at("interior"), f.path("interior"));
        d = ConvexDomain::halfplanes(lines, interior);
    } else {
        config_error(f.path("type"), "unknown domain type \"" + type + "\"");
    }
    f.finish();
    return d;
}

// Element: a 3x3 matrix, or {"boost": t} | {"rotation": theta} | {"parabolic": s}
// (isometries of the unit disk).
inline ProjTransform read_element(const Json& v, const std::string& where) {
    if (v.is_array()) {
        const Mat3 m = read_mat3(v, where);
        require(std::abs(m.determinant()) > 1e-14, ErrorCode::ConfigError, where + ": singular matrix");
        return ProjTransform(m);
    }
    Fields f(v, where);
    Mat3 m = Mat3::Identity();
    int n = 0;
    for (const char* k : {"boost", "rotation", "parabolic"}) {
        if (!f.has(k)) continue;
        ++n;
        const double t = f.number(k);
        m = std::string(k) == "boost" ? models::disk_boost(t)
            : std::string(k) == "rotation" ? models::disk_rotation(t)
                                           : models::disk_parabolic(t);
    }
    if (n != 1) config_error(where, "expected exactly one of boost, rotation, parabolic");
    f.finish();
    return ProjTransform(m);
}

// Group: {"model": "punctured-torus", "trace": t} | {"model": "triangle-237"}
//      | {"generators": [...], "labels": [...]?, "domain": D?}
inline GroupPresentation read_group(Fields f) {
    GroupPresentation g;
    if (f.has("model")) {
        const std::string m = f.string("model");
        if (m == "punctured-torus") {
            g = models::punctured_torus_group(f.number("trace", 3.0));
        } else if (m == "triangle-237") {
            g = models::triangle_group_237();
        } else {
            config_error(f.path("model"), "unknown group model \"" + m + "\"");
        }
    } else {
        const Json& gs = f.array("generators");
        if (gs.empty()) config_error(f.path("generators"), "need at least one generator");
        for (std::size_t i = 0; i < gs.size(); ++i)
            g.generators.push_back(read_element(gs[i], f.path("generators") + "[" + std::to_string(i) + "]"));
        if (f.has("labels")) {
            const Json& ls = f.array("labels");
            for (const auto& l : ls) {
                if (!l.is_string()) config_error(f.path("labels"), "expected strings");
                g.labels.push_back(l.get<std::string>());
            }
        }
        g.domain = f.has("domain") ? read_domain(f.object("domain")) : models::unit_disk();
    }
    f.finish();
    check_presentation(g);
    return g;
}

}  // namespace hilbertine::cli
