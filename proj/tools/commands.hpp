#pragma once

#include <filesystem>
#include <fstream>
#include <random>

#include "config.hpp"
#include "svg.hpp"

namespace hilbertine::cli {

struct Options {
    std::filesystem::path out = ".";
    std::uint64_t seed = 1;
    std::optional<double> tol;
};

// ---------------------------------------------------------------------------
// Output helpers

inline Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }
inline Json vec_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }
inline Json point_json(const ProjPoint& p) { return vec_json(p.coords()); }
inline Json line_json(const ProjLine& l) { return vec_json(l.coords()); }

inline Json mat_json(const Mat3& m) {
    Json j = Json::array();
    for (int i = 0; i < 3; ++i) j.push_back(vec_json(Vec3(m.row(i).transpose())));
    return j;
}

inline Json number_or_inf(const Extended& e) { return e.is_infinite() ? Json("inf") : Json(e.value()); }

inline void write_file(const Options& opt, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(opt.out);
    std::ofstream f(opt.out / name, std::ios::binary);
    require(static_cast<bool>(f), ErrorCode::ConfigError, "cannot write " + (opt.out / name).string());
    f << text;
}

inline void write_json(const Options& opt, const std::string& name, const Json& j) { write_file(opt, name, j.dump(2) + "\n"); }

inline Json domain_json(const ConvexDomain& d) {
    Json j;
    switch (d.kind()) {
    case ConvexDomain::Kind::Polygon: j["type"] = "polygon"; break;
    case ConvexDomain::Kind::Halfplanes: j["type"] = "halfplanes"; break;
    case ConvexDomain::Kind::Conic: j["type"] = "conic"; break;
    }
    if (d.is_polygonal()) {
        j["vertices"] = Json::array();
        j["lines"] = Json::array();
        for (const auto& v : d.vertices()) j["vertices"].push_back(vec_json(v));
        for (const auto& l : d.lines()) j["lines"].push_back(vec_json(l));
    } else {
        j["matrix"] = mat_json(d.conic().matrix());
    }
    return j;
}

inline Json class_json(const DynClass& c) {
    Json j;
    j["family"] = to_string(c.family);
    j["margin"] = c.margin;
    j["near_boundary"] = c.near_boundary;
    j["conjugator"] = mat_json(c.conjugator);
    j["normal_form"] = mat_json(c.normal_form);
    Json d = Json::object();
    switch (c.family) {
    case Family::Hyperbolic: {
        const auto& h = c.as<HyperbolicData>();
        d = {{"lambda_plus", h.lambda_plus}, {"lambda_zero", h.lambda_zero}, {"lambda_minus", h.lambda_minus},
             {"p_plus", point_json(h.p_plus)}, {"p_zero", point_json(h.p_zero)}, {"p_minus", point_json(h.p_minus)},
             {"d_plus_minus", line_json(h.d_plus_minus)}, {"d_plus_zero", line_json(h.d_plus_zero)},
             {"d_minus_zero", line_json(h.d_minus_zero)}};
        break;
    }
    case Family::Planar: {
        const auto& p = c.as<PlanarData>();
        d = {{"alpha", p.alpha}, {"beta", p.beta}, {"p_gamma", point_json(p.p_gamma)}, {"d_gamma", line_json(p.d_gamma)}};
        break;
    }
    case Family::QuasiHyperbolic: {
        const auto& q = c.as<QuasiHyperbolicData>();
        d = {{"alpha", q.alpha}, {"beta", q.beta}, {"p1", point_json(q.p1)}, {"p2", point_json(q.p2)},
             {"d_gamma", line_json(q.d_gamma)}};
        break;
    }
    case Family::Parabolic: {
        const auto& p = c.as<ParabolicData>();
        d = {{"p_gamma", point_json(p.p_gamma)}, {"d_gamma", line_json(p.d_gamma)}};
        break;
    }
    case Family::Elliptic: {
        const auto& e = c.as<EllipticData>();
        d = {{"theta", e.theta}, {"fixed_point", point_json(e.fixed_point)}, {"invariant_line", line_json(e.invariant_line)},
             {"order_two", e.order_two}};
        break;
    }
    case Family::Identity: break;
    }
    j["data"] = d;
    return j;
}

inline Json profile_json(const Region& region, const VolumeProfile& p) {
    Json j;
    j["region"] = Json::array();
    for (const auto& v : region.vertices) j["region"].push_back(vec_json(v));
    j["levels"] = p.epsilons;
    j["partials"] = p.partial;
    j["verdict"] = to_string(p.verdict);
    return j;
}

inline Pic read_pic(Fields f) {
    const Json& vs = f.array("vertices");
    if (vs.size() != 3) config_error(f.path("vertices"), "a pic has three vertices");
    Pic pic;
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < 3; ++i) pts.push_back(read_vec2(vs[i], f.path("vertices")));
    pic.triangle = Region{AffineChart{}, pts};
    pic.apex = f.integer("apex", 0);
    if (pic.apex < 0 || pic.apex > 2) config_error(f.path("apex"), "must be 0, 1 or 2");
    f.finish();
    return pic;
}

inline std::vector<double> read_schedule(Fields& f) {
    if (f.has("schedule")) return read_numbers(f.at("schedule"), f.path("schedule"));
    const int levels = f.integer("levels", 8);
    if (levels < 2 || levels > 15) config_error(f.path("levels"), "must be between 2 and 15");
    return decade_schedule(levels);
}

// Pic outline and its truncation annuli, drawn in the domain chart.
inline std::string profile_svg(const ConvexDomain& dom, const Pic& pic, const VolumeProfile& prof) {
    const AffineChart& ch = dom.chart();
    auto to_dom = [&](const Vec2& p) { return ch.project(pic.triangle.chart.lift(p)); };
    const auto out = outline(dom, ch);
    std::vector<Vec2> tri;
    for (const auto& v : pic.triangle.vertices) tri.push_back(to_dom(v));
    Svg svg = Svg::fitting(tri);
    svg.polygon(out, Layer::Domain);
    svg.polygon(tri, Layer::Region);
    const auto& v = pic.triangle.vertices;
    const int a = pic.apex, b = (a + 1) % 3, c = (a + 2) % 3;
    for (double e : prof.epsilons)
        svg.polyline({to_dom(Vec2(v[a] + e * (v[b] - v[a]))), to_dom(Vec2(v[a] + e * (v[c] - v[a])))}, Layer::Annulus);
    svg.circle(to_dom(v[a]), 4.0, Layer::Point);
    return svg.str();
}

inline double tol_or(const Options& opt, double dflt) {
    const double t = opt.tol.value_or(dflt);
    require(t > 0, ErrorCode::ConfigError, "--tol must be positive");
    return t;
}

// ---------------------------------------------------------------------------
// Subcommands

inline void cmd_distance(Fields f, const Options& opt) {
    check_version(f);
    const ConvexDomain dom = read_domain(f.object("domain"));
    const Json& ps = f.array("points");
    if (ps.size() != 2) config_error(f.path("points"), "expected two points");
    f.finish();
    const ProjPoint x(read_point(ps[0], f.path("points"))), y(read_point(ps[1], f.path("points")));
    Json r;
    r["points"] = {point_json(x), point_json(y)};
    r["distance"] = number_or_inf(hilbert_distance(dom, x, y));
    if (!x.approx_equal(y, 1e-15) && locate(dom, x) != Location::Exterior && locate(dom, y) != Location::Exterior) {
        const Chord c = boundary_chords(dom, x, y);
        r["chord"] = {{"p_minus", point_json(c.p_minus)}, {"p_plus", point_json(c.p_plus)}};
    }
    write_json(opt, "distance.json", r);
}

inline void cmd_classify(Fields f, const Options& opt) {
    check_version(f);
    const ProjTransform g = read_element(f.at("element"), f.path("element"));
    std::optional<ConvexDomain> dom;
    if (f.has("domain")) dom = read_domain(f.object("domain"));
    f.finish();
    const double tol = tol_or(opt, 1e-8);
    Json r = class_json(classify(g, tol));
    r["tol"] = tol;
    if (dom) {
        r["preserves_domain"] = preserves_domain(g, *dom);
        if (r["preserves_domain"].get<bool>()) {
            r["axes"] = Json::array();
            for (const auto& a : axes(g, *dom, tol))
                r["axes"].push_back({{"a", point_json(a.a)}, {"b", point_json(a.b)},
                                     {"kind", a.kind == Axis::Kind::Principal ? "principal" : "secondary"}});
        }
    }
    write_json(opt, "classify.json", r);
}

inline void cmd_volume(Fields f, const Options& opt) {
    check_version(f);
    const ConvexDomain dom = read_domain(f.object("domain"));
    VolumeOptions vo;
    vo.convention = read_convention(f);
    vo.rel_tol = f.positive("rel_tol", 1e-6);
    if (f.has("pic") == f.has("region")) config_error(f.where(), "give exactly one of \"pic\" or \"region\"");
    if (f.has("region")) {
        Fields rf = f.object("region");
        const Json& vs = rf.array("vertices");
        std::vector<Vec2> pts;
        for (const auto& v : vs) pts.push_back(read_vec2(v, rf.path("vertices")));
        rf.finish();
        f.finish();
        const Region region = Region::polygon(pts);
        Json r;
        r["region"] = Json::array();
        for (const auto& v : region.vertices) r["region"].push_back(vec_json(v));
        r["volume"] = region_volume(dom, region, vo);
        write_json(opt, "volume.json", r);
        return;
    }
    const Pic pic = read_pic(f.object("pic"));
    const auto schedule = read_schedule(f);
    f.finish();
    const VolumeProfile p = pic_volume_profile(dom, pic, schedule, vo, tol_or(opt, 1e-3));
    write_json(opt, "volume.json", profile_json(pic.triangle, p));
    write_file(opt, "volume.svg", profile_svg(dom, pic, p));
}

inline void cmd_dual(Fields f, const Options& opt) {
    check_version(f);
    const ConvexDomain dom = read_domain(f.object("domain"));
    f.finish();
    const ConvexDomain dual = dual_domain(dom);
    Json r;
    r["domain"] = domain_json(dom);
    r["dual"] = domain_json(dual);
    r["double_dual_hausdorff"] = hausdorff_distance(dom, dual_domain(dual));
    write_json(opt, "dual.json", r);
    const auto pts = outline(dual, dual.chart());
    Svg svg = Svg::fitting(pts);
    svg.polygon(pts, Layer::Domain);
    write_file(opt, "dual.svg", svg.str());
}

inline void cmd_limit_set(Fields f, const Options& opt) {
    check_version(f);
    const GroupPresentation g = read_group(f.object("group"));
    const int len = f.integer("word_length", 8);
    if (len < 1 || len > 24) config_error(f.path("word_length"), "must be between 1 and 24");
    f.finish();
    require(g.domain.has_value(), ErrorCode::ConfigError, "limit set needs a group with a domain");
    const LimitSetCloud cloud = limit_set_approx(g, len);
    Json r;
    r["word_length"] = len;
    r["points"] = Json::array();
    for (std::size_t i = 0; i < cloud.points.size(); ++i)
        r["points"].push_back({{"point", point_json(cloud.points[i])}, {"word_length", cloud.word_length[i]}});
    r["max_boundary_deviation"] = cloud.max_boundary_deviation;
    r["coverage_resolution"] = coverage_resolution(cloud, *g.domain);
    write_json(opt, "limit_set.json", r);
    const AffineChart& ch = g.domain->chart();
    const auto out = outline(*g.domain, ch);
    Svg svg = Svg::fitting(out);
    svg.polygon(out, Layer::Domain);
    for (const auto& p : cloud.points) svg.circle(ch.project(g.domain->lift(p.coords())), 3.0, Layer::Point);
    write_file(opt, "limit_set.svg", svg.str());
}

struct Tiling {
    Json report;
    std::string svg;
};

// Dirichlet-Lee domain of the given elements, its bisectors and translates.
inline Tiling make_tiling(const ConvexDomain& dom, const std::vector<ProjTransform>& elements,
                          const std::vector<std::string>& names, const Vec3& base, int n_translates,
                          int oracle_samples, std::uint64_t seed) {
    const ConvexCone cone = ConvexCone::from_domain(dom);
    const Vec3 x0 = sigma_lift(cone, ProjPoint(base));
    const auto dl = dirichlet_lee_domain(cone, elements, x0);
    const AffineChart& ch = dom.chart();
    Tiling t;
    Json& r = t.report;
    r["base_point"] = vec_json(x0);
    r["elements"] = Json::array();
    for (std::size_t i = 0; i < elements.size(); ++i)
        r["elements"].push_back({{"word", names[i]}, {"matrix", mat_json(elements[i].matrix())}, {"bisector", vec_json(dl.bisectors[i])}});
    r["domain"] = domain_json(dl.domain);

    // Membership against the orbit-argmin oracle on seeded samples.
    if (oracle_samples > 0) {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const auto out = outline(dom, ch);
        Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
        for (const auto& p : out) lo = lo.cwiseMin(p), hi = hi.cwiseMax(p);
        const PsiForm psi = psi_form(cone, x0);
        int tested = 0, agree = 0;
        while (tested < oracle_samples) {
            const Vec2 p(lo.x() + (hi.x() - lo.x()) * u(gen), lo.y() + (hi.y() - lo.y()) * u(gen));
            const Vec3 v = ch.lift(p);
            if (locate(dom, v) != Location::Interior) continue;
            ++tested;
            const Vec3 lv = cone.lift(v);
            const double own = psi.psi.dot(lv);
            bool oracle = true;
            for (const auto& e : elements) oracle = oracle && own <= psi.psi.dot(e.matrix() * lv);
            agree += oracle == dl.contains(v);
        }
        r["oracle"] = {{"samples", tested}, {"agreement", static_cast<double>(agree) / tested}, {"seed", seed}};
    }

    const auto out = outline(dom, ch);
    Svg svg = Svg::fitting(out);
    svg.polygon(out, Layer::Domain);
    for (int i = 0; i < std::min<int>(n_translates, static_cast<int>(elements.size())); ++i) {
        std::vector<Vec2> poly;
        for (const auto& v : dl.domain.vertices()) poly.push_back(ch.project(Vec3(elements[i].matrix() * v)));
        svg.polygon(poly, Layer::Translate);
    }
    std::vector<Vec2> fund;
    for (const auto& v : dl.domain.vertices()) fund.push_back(ch.project(v));
    svg.polygon(fund, Layer::Region);
    for (const auto& b : dl.bisectors) svg.polyline(line_chord(dom, b, ch), Layer::Bisector);
    svg.circle(ch.project(x0), 4.0, Layer::Point);
    t.svg = svg.str();
    return t;
}

inline void cmd_tile(Fields f, const Options& opt) {
    check_version(f);
    const GroupPresentation g = read_group(f.object("group"));
    const int len = f.integer("word_length", 3);
    if (len < 1 || len > 12) config_error(f.path("word_length"), "must be between 1 and 12");
    const Vec3 base = read_point(f.at("base_point"), f.path("base_point"));
    const int translates = f.integer("translates", 64);
    f.finish();
    require(g.domain.has_value(), ErrorCode::ConfigError, "tiling needs a group with a domain");
    std::vector<ProjTransform> els;
    std::vector<std::string> names;
    for (const auto& w : enumerate_words(g, len)) {
        els.push_back(w.element);
        names.push_back(word_label(g, w));
    }
    const Tiling t = make_tiling(*g.domain, els, names, base, translates, 0, opt.seed);
    write_json(opt, "tile.json", t.report);
    write_file(opt, "tile.svg", t.svg);
}

// ---------------------------------------------------------------------------
// Experiments

inline void exp_ideal_triangle_scan(Fields& f, const Options& opt) {
    std::vector<double> xs{0.25, 0.5, 1.0, 2.0, 4.0};
    if (f.has("xs")) xs = read_numbers(f.at("xs"), f.path("xs"));
    IdealTriangleOptions io;
    io.volume.convention = read_convention(f);
    f.finish();
    for (double x : xs) require(x > 0, ErrorCode::ConfigError, "scan values must be positive");
    const ConvexDomain simplex = models::simplex();
    Json r;
    r["experiment"] = "ideal-triangle-scan";
    r["rows"] = Json::array();
    std::string csv = "x,area,error_estimate\n";
    std::size_t best = 0;
    std::vector<double> areas;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto s = models::simplex_ideal_triangle(xs[i]);
        const IdealTriangleArea a = ideal_triangle_area(simplex, s[0], s[1], s[2], io);
        areas.push_back(a.value);
        if (a.value < areas[best]) best = i;
        r["rows"].push_back({{"x", xs[i]}, {"area", a.value}, {"error_estimate", a.error_estimate}});
        char line[128];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", xs[i], a.value, a.error_estimate);
        csv += line;
    }
    if (!xs.empty()) r["argmin_x"] = xs[best];
    write_json(opt, "ideal_triangle_scan.json", r);
    write_file(opt, "ideal_triangle_scan.csv", csv);
}

inline void exp_cusp_profile(Fields& f, const Options& opt) {
    const ConvexDomain dom = read_domain(f.object("domain"));
    const Pic pic = read_pic(f.object("pic"));
    const auto schedule = read_schedule(f);
    VolumeOptions vo;
    vo.convention = read_convention(f);
    vo.rel_tol = f.positive("rel_tol", 1e-6);
    f.finish();
    const VolumeProfile p = pic_volume_profile(dom, pic, schedule, vo, tol_or(opt, 1e-3));
    Json r = profile_json(pic.triangle, p);
    r["experiment"] = "cusp-profile";
    r["increments"] = p.increments();
    write_json(opt, "cusp_profile.json", r);
    write_file(opt, "cusp_profile.svg", profile_svg(dom, pic, p));
}

inline void exp_dirichlet_tiling(Fields& f, const Options& opt) {
    const ConvexDomain dom = f.has("domain") ? read_domain(f.object("domain")) : models::unit_disk();
    const ProjTransform g = read_element(f.at("element"), f.path("element"));
    const int power = f.integer("power", 10);
    if (power < 1 || power > 50) config_error(f.path("power"), "must be between 1 and 50");
    const Vec3 base = f.has("base_point") ? read_point(f.at("base_point"), f.path("base_point")) : dom.center();
    const int samples = f.integer("oracle_samples", 2000);
    if (samples < 0) config_error(f.path("oracle_samples"), "must be nonnegative");
    f.finish();
    require(preserves_domain(g, dom), ErrorCode::DomainNotPreserved, "element does not preserve the domain");
    std::vector<ProjTransform> els;
    std::vector<std::string> names;
    for (int n = 1; n <= power; ++n) {
        els.push_back(one_param_power(g, n));
        names.push_back("g^" + std::to_string(n));
        els.push_back(one_param_power(g, -n));
        names.push_back("g^-" + std::to_string(n));
    }
    Tiling t = make_tiling(dom, els, names, base, static_cast<int>(els.size()), samples, opt.seed);
    t.report["experiment"] = "dirichlet-tiling";
    t.report["family"] = to_string(classify(g).family);
    write_json(opt, "dirichlet_tiling.json", t.report);
    write_file(opt, "dirichlet_tiling.svg", t.svg);
}

inline void cmd_run(Fields f, const Options& opt) {
    check_version(f);
    const std::string e = f.string("experiment");
    if (e == "ideal-triangle-scan") return exp_ideal_triangle_scan(f, opt);
    if (e == "cusp-profile") return exp_cusp_profile(f, opt);
    if (e == "dirichlet-tiling") return exp_dirichlet_tiling(f, opt);
    config_error(f.path("experiment"), "unknown experiment \"" + e + "\"");
}

}  // namespace hilbertine::cli
