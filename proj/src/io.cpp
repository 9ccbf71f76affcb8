#include "atlas/io.hpp"

#include "atlas/error.hpp"

#include <cmath>
#include <limits>

namespace atlas {

namespace {

// JSON has no infinities; they travel as strings.
Json number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

double read_number(const Json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        if (s == "nan") {
            return std::numeric_limits<double>::quiet_NaN();
        }
        throw InputError("bad number '" + s + "'");
    }
    if (!j.is_number()) {
        throw InputError("number expected");
    }
    return j.get<double>();
}

Json lattice(const LatticePoint& p) {
    return Json(p);
}

Json lattice_list(const std::vector<LatticePoint>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) {
        out.push_back(lattice(p));
    }
    return out;
}

std::vector<LatticePoint> read_lattice_list(const Json& j) {
    std::vector<LatticePoint> out;
    for (const auto& p : j) {
        out.push_back(p.get<LatticePoint>());
    }
    return out;
}

Json real_point(std::span<const double> p) {
    Json out = Json::array();
    for (double v : p) {
        out.push_back(number(v));
    }
    return out;
}

RealPoint read_real_point(const Json& j) {
    RealPoint out;
    for (const auto& v : j) {
        out.push_back(read_number(v));
    }
    return out;
}

Json window(const Window& w) {
    return Json::array({w.x0, w.x1, w.y0, w.y1});
}

Window read_window(const Json& j) {
    if (!j.is_array() || j.size() != 4) {
        throw InputError("window must be [x0, x1, y0, y1]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

const char* status_name(MarginStatus s) {
    switch (s) {
    case MarginStatus::Certified:
        return "certified";
    case MarginStatus::Unbounded:
        return "unbounded";
    case MarginStatus::NotCertified:
        return "not_certified";
    case MarginStatus::NotConverged:
        return "not_converged";
    }
    return "not_converged";
}

MarginStatus read_status(const std::string& s) {
    if (s == "certified") {
        return MarginStatus::Certified;
    }
    if (s == "unbounded") {
        return MarginStatus::Unbounded;
    }
    if (s == "not_certified") {
        return MarginStatus::NotCertified;
    }
    if (s == "not_converged") {
        return MarginStatus::NotConverged;
    }
    throw InputError("unknown margin status '" + s + "'");
}

Verdict read_verdict(const std::string& s) {
    for (auto v : {Verdict::Solid, Verdict::Optimal, Verdict::Neither, Verdict::Indeterminate}) {
        if (verdict_name(v) == s) {
            return v;
        }
    }
    throw InputError("unknown verdict '" + s + "'");
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    return j.at(key).get<T>();
}

} // namespace

Json polynomial_to_json(const LaurentPolynomial& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        terms.push_back({{"exp", t.exponent}, {"re", t.coefficient.real()}, {"im", t.coefficient.imag()}});
    }
    return {{"n", f.dimension()}, {"terms", terms}};
}

LaurentPolynomial polynomial_from_json(const Json& j) {
    try {
        int n = field<int>(j, "n");
        std::vector<Term> terms;
        for (const auto& t : j.at("terms")) {
            double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
            terms.push_back({field<LatticePoint>(t, "exp"), Complex(field<double>(t, "re"), im)});
        }
        return LaurentPolynomial(n, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("polynomial JSON: ") + e.what());
    }
}

Json subdivision_to_json(const RegularSubdivision& s) {
    Json cells = Json::array();
    for (const auto& c : s.cells) {
        cells.push_back({{"vertices", lattice_list(c.vertices)}});
    }
    return {{"cells", cells}};
}

std::vector<std::vector<LatticePoint>> subdivision_cells_from_json(const Json& j) {
    std::vector<std::vector<LatticePoint>> out;
    for (const auto& c : j.at("cells")) {
        out.push_back(read_lattice_list(c.at("vertices")));
    }
    return out;
}

CurveData curve_data(const TropicalCurve& c) {
    CurveData out;
    out.vertices = c.vertices;
    for (const auto& e : c.edges) {
        out.edges.emplace_back(e.from, e.to);
    }
    for (const auto& r : c.rays) {
        out.rays.emplace_back(r.vertex, r.direction);
    }
    return out;
}

Json curve_to_json(const CurveData& c) {
    Json vs = Json::array();
    for (const auto& v : c.vertices) {
        vs.push_back({v[0], v[1]});
    }
    Json es = Json::array();
    for (const auto& [a, b] : c.edges) {
        es.push_back({a, b});
    }
    Json rs = Json::array();
    for (const auto& [v, d] : c.rays) {
        rs.push_back({{"vertex", v}, {"direction", {d[0], d[1]}}});
    }
    return {{"vertices", vs}, {"edges", es}, {"rays", rs}};
}

CurveData curve_from_json(const Json& j) {
    CurveData out;
    for (const auto& v : j.at("vertices")) {
        out.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    for (const auto& e : j.at("edges")) {
        out.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
    for (const auto& r : j.at("rays")) {
        const auto& d = r.at("direction");
        out.rays.emplace_back(r.at("vertex").get<std::size_t>(),
                              std::array<long long, 2>{d.at(0).get<long long>(), d.at(1).get<long long>()});
    }
    return out;
}

Json raster_to_json(const AmoebaRaster& r) {
    Json runs = Json::array();
    std::size_t k = 0;
    while (k < r.occupancy.size()) {
        if (!r.occupancy[k]) {
            ++k;
            continue;
        }
        std::size_t start = k;
        while (k < r.occupancy.size() && r.occupancy[k]) {
            ++k;
        }
        runs.push_back({start, k - start});
    }
    return {{"window", window(r.grid.window)},
            {"resolution", {r.grid.nx, r.grid.ny}},
            {"occupied", r.occupied_count()},
            {"interval_fills", r.interval_fills},
            {"runs", runs}};
}

AmoebaRaster raster_from_json(const Json& j) {
    AmoebaRaster out;
    const auto& res = j.at("resolution");
    out.grid = Grid(read_window(j.at("window")), res.at(0).get<int>(), res.at(1).get<int>());
    out.occupancy.assign(out.grid.size(), 0);
    out.interval_fills = j.value("interval_fills", std::size_t{0});
    for (const auto& run : j.at("runs")) {
        auto start = run.at(0).get<std::size_t>();
        auto len = run.at(1).get<std::size_t>();
        if (start + len > out.occupancy.size()) {
            throw InputError("raster run outside the grid");
        }
        std::fill_n(out.occupancy.begin() + static_cast<std::ptrdiff_t>(start), len, std::uint8_t{1});
    }
    return out;
}

Json cloud_to_json(const PointCloud& c) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        pts.push_back(real_point(c.point(i)));
    }
    return {{"ambient", std::string(ambient_name(c.ambient))}, {"dimension", c.dimension}, {"points", pts}};
}

PointCloud cloud_from_json(const Json& j) {
    PointCloud out;
    auto a = field<std::string>(j, "ambient");
    if (a == "log") {
        out.ambient = Ambient::LogSpace;
    } else if (a == "polytope") {
        out.ambient = Ambient::PolytopeSpace;
    } else {
        throw InputError("unknown ambient '" + a + "'");
    }
    out.dimension = j.value("dimension", 2);
    for (const auto& p : j.at("points")) {
        if (p.size() != static_cast<std::size_t>(out.dimension)) {
            throw InputError("cloud point of wrong dimension");
        }
        auto rp = read_real_point(p);
        out.push(rp);
    }
    return out;
}

Json complex_to_json(const PolyhedralComplex& c) {
    Json cells = Json::array();
    for (const auto& cell : c.cells) {
        Json vs = Json::array();
        for (const auto& v : cell.vertices) {
            vs.push_back(real_point(v));
        }
        cells.push_back({{"vertices", vs}, {"dual_simplex", lattice_list(cell.dual_simplex)}});
    }
    return {{"dimension", c.dimension}, {"cells", cells}};
}

PolyhedralComplex complex_from_json(const Json& j) {
    PolyhedralComplex out;
    out.dimension = j.value("dimension", 2);
    for (const auto& cell : j.at("cells")) {
        ComplexCell c;
        for (const auto& v : cell.at("vertices")) {
            c.vertices.push_back(read_real_point(v));
        }
        if (cell.contains("dual_simplex")) {
            c.dual_simplex = read_lattice_list(cell.at("dual_simplex"));
        }
        out.cells.push_back(std::move(c));
    }
    return out;
}

Json convergence_to_json(const LimitEstimate& e) {
    Json d = Json::array();
    for (double v : e.distances) {
        d.push_back(number(v));
    }
    Json at = e.converged_at ? Json(*e.converged_at) : Json(nullptr);
    return {{"r", e.schedule},   {"distances", d},       {"eps", e.eps},
            {"converged", e.converged}, {"converged_at", at}, {"experimental", e.experimental},
            {"points", e.cloud.size()}};
}

LimitEstimate convergence_from_json(const Json& j) {
    LimitEstimate out;
    out.schedule = j.at("r").get<std::vector<double>>();
    for (const auto& v : j.at("distances")) {
        out.distances.push_back(read_number(v));
    }
    out.eps = field<double>(j, "eps");
    out.converged = field<bool>(j, "converged");
    if (!j.at("converged_at").is_null()) {
        out.converged_at = j.at("converged_at").get<std::size_t>();
    }
    out.experimental = j.value("experimental", false);
    return out;
}

Json classification_to_json(const Classification& c) {
    Json evidence = Json::array();
    for (const auto& e : c.evidence) {
        Json item = {{"order", e.order}, {"realized", e.realized}, {"sources", e.sources}};
        if (e.margin) {
            item["margin"] = {{"value", number(e.margin->margin)},
                              {"point", real_point(e.margin->point)},
                              {"status", status_name(e.margin->status)},
                              {"iterations", e.margin->iterations}};
        }
        evidence.push_back(item);
    }
    Json comps = Json::array();
    for (const auto& k : c.components) {
        comps.push_back({{"representative", real_point(k.representative)},
                         {"order", k.order ? Json(*k.order) : Json(nullptr)},
                         {"bounded", k.bounded},
                         {"clearance", number(k.clearance)},
                         {"cells", k.cells.size()},
                         {"source", k.source}});
    }
    return {{"verdict", verdict_name(c.verdict)},
            {"solid", c.solid},
            {"optimal", c.optimal},
            {"window", window(c.window)},
            {"vertices", lattice_list(c.vertices)},
            {"lattice_points", lattice_list(c.lattice_points)},
            {"realized", lattice_list(c.realized)},
            {"missing", lattice_list(c.missing)},
            {"evidence", evidence},
            {"components", comps},
            {"interval_fills", c.interval_fills},
            {"notes", c.notes}};
}

Classification classification_from_json(const Json& j) {
    Classification c;
    c.verdict = read_verdict(field<std::string>(j, "verdict"));
    c.solid = field<bool>(j, "solid");
    c.optimal = field<bool>(j, "optimal");
    c.window = read_window(j.at("window"));
    c.vertices = read_lattice_list(j.at("vertices"));
    c.lattice_points = read_lattice_list(j.at("lattice_points"));
    c.realized = read_lattice_list(j.at("realized"));
    c.missing = read_lattice_list(j.at("missing"));
    for (const auto& item : j.at("evidence")) {
        OrderEvidence e;
        e.order = item.at("order").get<LatticePoint>();
        e.realized = item.at("realized").get<bool>();
        e.sources = item.at("sources").get<std::vector<std::string>>();
        if (item.contains("margin")) {
            const auto& m = item.at("margin");
            MarginResult r;
            r.margin = read_number(m.at("value"));
            r.point = read_real_point(m.at("point"));
            r.status = read_status(m.at("status").get<std::string>());
            r.iterations = m.at("iterations").get<int>();
            e.margin = r;
        }
        c.evidence.push_back(std::move(e));
    }
    for (const auto& k : j.at("components")) {
        ComplementComponent comp;
        comp.representative = read_real_point(k.at("representative"));
        if (!k.at("order").is_null()) {
            comp.order = k.at("order").get<LatticePoint>();
        }
        comp.bounded = k.at("bounded").get<bool>();
        comp.clearance = read_number(k.at("clearance"));
        comp.cells.resize(k.at("cells").get<std::size_t>());
        comp.source = k.at("source").get<std::string>();
        c.components.push_back(std::move(comp));
    }
    c.interval_fills = j.value("interval_fills", std::size_t{0});
    c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
}

Json hypotheses_to_json(const HypothesisReport& h) {
    return {{"vertex_bound", h.vertex_bound},
            {"concave", h.concave},
            {"concavity_witness", h.concavity_witness ? Json(*h.concavity_witness) : Json(nullptr)},
            {"sparse", h.sparse},
            {"triangulation", h.triangulation},
            {"eligible", h.eligible()}};
}

HypothesisReport hypotheses_from_json(const Json& j) {
    HypothesisReport h;
    h.vertex_bound = field<bool>(j, "vertex_bound");
    h.concave = field<bool>(j, "concave");
    if (!j.at("concavity_witness").is_null()) {
        h.concavity_witness = j.at("concavity_witness").get<LatticePoint>();
    }
    h.sparse = field<bool>(j, "sparse");
    h.triangulation = field<bool>(j, "triangulation");
    return h;
}

Json complement_to_json(const ComplementReport& r) {
    Json comps = Json::array();
    for (const auto& c : r.components) {
        comps.push_back({{"representative", real_point(c.representative)},
                         {"cells", c.cells},
                         {"lattice_points", lattice_list(c.lattice_points)},
                         {"order", c.order ? Json(*c.order) : Json(nullptr)}});
    }
    return {{"window", window(r.grid.window)},
            {"resolution", {r.grid.nx, r.grid.ny}},
            {"components", comps},
            {"on_complex", lattice_list(r.on_complex)},
            {"unassigned", lattice_list(r.unassigned)},
            {"slivers", r.slivers},
            {"flagged", r.flagged()}};
}

Json pi0_to_json(const Pi0Report& r) {
    return {{"method", r.method},
            {"verdict", r.verdict},
            {"match", r.match},
            {"affine_count", r.affine_count},
            {"affine_orders", lattice_list(r.affine_orders)},
            {"polytope_count", r.polytope_count},
            {"polytope_orders", lattice_list(r.polytope_orders)},
            {"notes", r.notes}};
}

Pi0Report pi0_from_json(const Json& j) {
    Pi0Report r;
    r.method = field<std::string>(j, "method");
    r.verdict = field<std::string>(j, "verdict");
    r.match = field<bool>(j, "match");
    r.affine_count = field<std::size_t>(j, "affine_count");
    r.affine_orders = read_lattice_list(j.at("affine_orders"));
    r.polytope_count = field<std::size_t>(j, "polytope_count");
    r.polytope_orders = read_lattice_list(j.at("polytope_orders"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

std::string dump(const Json& j) {
    return j.dump() + "\n";
}

} // namespace atlas
