#include "gromov/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gromov/errors.hpp"

namespace gromov {

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::SchemaError, field + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) schema_error(path + key, "missing");
    return *it;
}

double read_number(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

int read_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<int>();
}

cplx read_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        schema_error(path, "complex numbers are [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

P1Point read_point(const json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "infinity") return P1Point::infinity();
    return P1Point::affine(read_complex(j, path));
}

MapTuple read_tuple(const json& j, const std::string& path, int n, int degree) {
    if (!j.is_array() || j.size() < 2) schema_error(path, "a tuple has at least two entries");
    if (n >= 0 && static_cast<int>(j.size()) != n) schema_error(path, "entry count differs from n");
    std::vector<HomogPoly> polys;
    std::size_t len = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = path + "[" + std::to_string(i) + "]";
        const json& e = j[i];
        if (!e.is_array() || e.empty()) schema_error(at, "an entry is a nonempty coefficient list");
        if (i == 0) len = e.size();
        if (e.size() != len) schema_error(at, "entries must share a common degree");
        std::vector<cplx> cs;
        for (std::size_t k = 0; k < e.size(); ++k) cs.push_back(read_complex(e[k], at + "[" + std::to_string(k) + "]"));
        polys.emplace_back(std::move(cs));
    }
    if (degree >= 0 && static_cast<int>(len) != degree + 1) schema_error(path, "common degree differs from degree");
    return MapTuple(std::move(polys));
}

int optional_int(const json& doc, const char* key, int fallback) {
    auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    const int v = read_int(*it, key);
    if (v < 0) schema_error(key, "must be nonnegative");
    return v;
}

std::string infer_kind(const json& doc) {
    if (auto it = doc.find("kind"); it != doc.end()) {
        if (!it->is_string()) schema_error("kind", "expected a string");
        const auto k = it->get<std::string>();
        if (k != "curve" && k != "family" && k != "tree" && k != "verify-config")
            schema_error("kind", "unknown kind '" + k + "'");
        return k;
    }
    if (doc.contains("tuple")) return "curve";
    if (doc.contains("samples")) return "family";
    if (doc.contains("nodes")) return "tree";
    if (doc.contains("check")) return "verify-config";
    schema_error("kind", "cannot tell the document kind");
}

CurveFamily read_family(const json& doc) {
    const int n = optional_int(doc, "n", -1);
    const int d = optional_int(doc, "degree", -1);
    const json& samples = require(doc, "samples", "");
    if (!samples.is_array() || samples.empty()) schema_error("samples", "expected a nonempty array");
    CurveFamily fam;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::string at = "samples[" + std::to_string(i) + "].";
        const json& s = samples[i];
        if (!s.is_object()) schema_error(at, "expected an object");
        const double k = read_number(require(s, "k", at), at + "k");
        auto t = read_tuple(require(s, "tuple", at), at + "tuple", n, d);
        if (!fam.samples.empty() && (t.n() != fam.n || t.degree() != fam.d))
            schema_error(at + "tuple", "samples must share n and common degree");
        fam.n = t.n();
        fam.d = t.degree();
        fam.samples.push_back({k, std::move(t)});
    }
    if (auto it = doc.find("limit"); it != doc.end() && !it->is_null())
        fam.declared_limit = read_tuple(*it, "limit", fam.n, fam.d);
    fam.validate();
    return fam;
}

DecoratedTree read_tree(const json& doc) {
    const json& nodes = require(doc, "nodes", "");
    if (!nodes.is_array() || nodes.empty()) schema_error("nodes", "expected a nonempty array");
    DecoratedTree t;
    std::set<int> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int id = read_int(nodes[i], "nodes[" + std::to_string(i) + "]");
        if (!ids.insert(id).second) schema_error("nodes", "duplicate id " + std::to_string(id));
        t.tree.order.elements.push_back(id);
    }
    const int root = read_int(require(doc, "root", ""), "root");
    if (!ids.count(root)) schema_error("root", "not a node");
    if (auto it = doc.find("edges"); it != doc.end()) {
        if (!it->is_array()) schema_error("edges", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string at = "edges[" + std::to_string(i) + "].";
            const json& e = (*it)[i];
            const int child = read_int(require(e, "child", at), at + "child");
            const int parent = read_int(require(e, "parent", at), at + "parent");
            if (!ids.count(child) || !ids.count(parent)) schema_error(at, "endpoint is not a node");
            if (child == root) schema_error(at + "child", "the root has no parent");
            if (t.tree.order.preds.count(child)) schema_error(at + "child", "one edge per child");
            t.tree.order.preds[child] = {parent};
            t.tree.attach[child] = read_point(require(e, "z", at), at + "z");
        }
    }
    if (auto it = doc.find("decor"); it != doc.end()) {
        if (!it->is_object()) schema_error("decor", "expected an object keyed by node id");
        for (const auto& [key, val] : it->items()) {
            int id = 0;
            const auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
            if (ec != std::errc() || p != key.data() + key.size() || !ids.count(id))
                schema_error("decor." + key, "not a node id");
            ComponentDecor cd;
            cd.degree = optional_int(val, "degree", 0);
            cd.marked = optional_int(val, "marked", 0);
            t.decor[id] = cd;
        }
    }
    return t;
}

VerifyConfig read_verify(const json& doc) {
    VerifyConfig v;
    const json& c = require(doc, "check", "");
    if (!c.is_string()) schema_error("check", "expected a string");
    v.check = c.get<std::string>();
    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned()) schema_error("seed", "expected a nonnegative integer");
        v.seed = it->get<std::uint64_t>();
    }
    v.samples = optional_int(doc, "samples", v.samples);
    return v;
}

std::vector<double> split_numbers(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t end = std::min(s.find(',', pos), s.size());
        double x = 0.0;
        const auto [p, ec] = std::from_chars(s.data() + pos, s.data() + end, x);
        if (ec != std::errc() || p != s.data() + end) throw Error(ErrorKind::InvalidArgument, what + ": bad number in '" + s + "'");
        out.push_back(x);
        pos = end + 1;
    }
    return out;
}

int read_chart(const std::vector<double>& v, std::size_t i, const std::string& spec) {
    if (v.size() <= i) return 0;
    if (v[i] != 0.0 && v[i] != 1.0) throw Error(ErrorKind::InvalidArgument, "region: chart must be 0 or 1 in '" + spec + "'");
    return static_cast<int>(v[i]);
}

json disk_json(const Disk& d) { return {{"center", complex_json(d.center)}, {"r", d.r}, {"chart", d.chart}}; }

}  // namespace

InputDocument parse_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object()) schema_error("document", "expected a JSON object");
    const json& ver = require(doc, "schema", "");
    if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion) schema_error("schema", "unsupported version");

    const std::string kind = infer_kind(doc);
    if (kind == "curve") {
        const int n = optional_int(doc, "n", -1);
        const int d = optional_int(doc, "degree", -1);
        return {kind, read_tuple(require(doc, "tuple", ""), "tuple", n, d)};
    }
    if (kind == "family") return {kind, read_family(doc)};
    if (kind == "tree") return {kind, read_tree(doc)};
    return {kind, read_verify(doc)};
}

InputDocument load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

Region parse_region(const std::string& spec) {
    if (spec == "full") return FullSphere{};
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "region: unknown spec '" + spec + "'");
    const std::string tag = spec.substr(0, colon);
    const auto v = split_numbers(spec.substr(colon + 1), "region");
    Region r;
    if (tag == "disk" && (v.size() == 3 || v.size() == 4)) {
        r = Disk{{v[0], v[1]}, v[2], read_chart(v, 3, spec)};
    } else if (tag == "annulus" && (v.size() == 4 || v.size() == 5)) {
        r = Annulus{{v[0], v[1]}, v[2], v[3], read_chart(v, 4, spec)};
    } else {
        throw Error(ErrorKind::InvalidArgument, "region: unknown spec '" + spec + "'");
    }
    validate_region(r);
    return r;
}

P1Point parse_point(const std::string& spec) {
    if (spec == "inf" || spec == "infinity") return P1Point::infinity();
    const auto v = split_numbers(spec, "point");
    if (v.size() > 2) throw Error(ErrorKind::InvalidArgument, "point: expected re,im");
    return P1Point::affine({v[0], v.size() == 2 ? v[1] : 0.0});
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json point_json(const P1Point& p) {
    if (p.is_infinity()) return "infinity";
    return complex_json(p.z());
}

json tuple_json(const MapTuple& t) {
    json out = json::array();
    for (const auto& p : t.polys()) {
        json e = json::array();
        for (const cplx c : p.coeffs()) e.push_back(complex_json(c));
        out.push_back(std::move(e));
    }
    return out;
}

json region_json(const Region& r) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return {{"disk", disk_json(x)}};
            } else if constexpr (std::is_same_v<T, Annulus>) {
                return {{"annulus",
                         {{"center", complex_json(x.center)}, {"r_in", x.r_in}, {"r_out", x.r_out}, {"chart", x.chart}}}};
            } else if constexpr (std::is_same_v<T, SphereComplement>) {
                json holes = json::array();
                for (const auto& h : x.holes) holes.push_back(disk_json(h));
                return {{"complement", {{"holes", holes}}}};
            } else {
                return {{"full", json::object()}};
            }
        },
        r);
}

json curve_document(const MapTuple& t) {
    const auto nt = normalize(t);
    return {{"schema", kSchemaVersion}, {"kind", "curve"}, {"n", nt.n()}, {"degree", nt.degree()}, {"tuple", tuple_json(nt)}};
}

json family_document(const CurveFamily& fam) {
    json samples = json::array();
    for (const auto& s : fam.samples) samples.push_back({{"k", s.k}, {"tuple", tuple_json(s.tuple)}});
    json out = {{"schema", kSchemaVersion}, {"kind", "family"}, {"n", fam.n}, {"degree", fam.d}, {"samples", samples}};
    if (fam.declared_limit) out["limit"] = tuple_json(*fam.declared_limit);
    return out;
}

json tree_document(const DecoratedTree& t) {
    json edges = json::array();
    for (const auto& [child, ps] : t.tree.order.preds) {
        for (const int parent : ps) {
            json e = {{"child", child}, {"parent", parent}};
            auto it = t.tree.attach.find(child);
            e["z"] = it == t.tree.attach.end() ? json(nullptr) : point_json(it->second);
            edges.push_back(std::move(e));
        }
    }
    json decor = json::object();
    for (const auto& [id, d] : t.decor) decor[std::to_string(id)] = {{"degree", d.degree}, {"marked", d.marked}};
    int root = t.tree.order.elements.empty() ? 0 : t.tree.order.elements.front();
    for (const int e : t.tree.order.elements) {
        if (!t.tree.order.preds.count(e)) {
            root = e;
            break;
        }
    }
    return {{"schema", kSchemaVersion}, {"kind", "tree"},  {"nodes", t.tree.order.elements},
            {"root", root},             {"edges", edges}, {"decor", decor}};
}

json factorization_json(const Factorization& f) {
    json roots = json::array();
    int total = 0;
    for (const auto& r : f.roots) {
        roots.push_back({{"point", point_json(r.point)}, {"multiplicity", r.multiplicity}});
        total += r.multiplicity;
    }
    return {{"schema", kSchemaVersion},
            {"kind", "factorization"},
            {"roots", roots},
            {"common_degree", total},
            {"residual", curve_document(f.residual)},
            {"discarded_remainder", f.discarded_remainder}};
}

json energy_json(const Region& r, double tol, const EnergyResult& e) {
    return {{"schema", kSchemaVersion}, {"kind", "energy"},          {"region", region_json(r)}, {"tol", tol},
            {"value", e.value},         {"err_estimate", e.err_estimate}, {"cells", e.cells}};
}

json mass_profile_json(const P1Point& z, const MassProfile& m) {
    return {{"schema", kSchemaVersion},
            {"kind", "mass"},
            {"point", point_json(z)},
            {"deltas", m.deltas},
            {"ks", m.ks},
            {"table", m.table},
            {"per_delta", m.per_delta},
            {"estimate", m.estimate},
            {"uncertainty", m.uncertainty}};
}

json fit_report_json(const FitReport& r) {
    json assertions = json::array();
    for (const auto& a : r.assertions)
        assertions.push_back({{"name", a.name}, {"value", a.value}, {"bound", a.bound}, {"pass", a.pass}});
    json fit = nullptr;
    if (r.fit) {
        fit = {{"slope", r.fit->slope},
               {"intercept", r.fit->intercept},
               {"slope_stderr", r.fit->slope_stderr},
               {"slope_interval", {r.slope_low, r.slope_high}}};
    }
    return {{"check", r.check}, {"columns", r.columns}, {"rows", r.rows},      {"fit", fit},
            {"assertions", assertions}, {"notes", r.notes}, {"pass", r.pass()}};
}

json stability_json(const DecoratedTree& t) {
    const auto violations = validate(t.tree);
    json vs = json::array();
    for (const auto& v : violations) vs.push_back({{"axiom", v.axiom}, {"witnesses", v.witnesses}, {"detail", v.detail}});
    json out = {{"schema", kSchemaVersion}, {"kind", "stability"}, {"valid", violations.empty()}, {"violations", vs}};
    if (!violations.empty()) {
        out["pass"] = false;
        return out;
    }
    const auto st = stability_check(t);
    json special = json::object();
    for (const int e : t.tree.order.elements) special[std::to_string(e)] = special_point_count(t, e);
    out["stable"] = st.stable;
    out["offenders"] = st.offenders;
    out["special_points"] = special;
    out["arithmetic_genus"] = arithmetic_genus(nodal_config(t.tree));
    out["pass"] = st.stable;
    return out;
}

json bubble_tree_json(const BubbleTree& t, const BubbleConfig& cfg) {
    DecoratedTree dt{t.tree, {}};
    for (const auto& c : t.components) dt.decor[c.id] = {c.degree, 0};
    json out = tree_document(dt);

    json comps = json::array();
    for (const auto& c : t.components) {
        comps.push_back({{"id", c.id},
                         {"parent", c.parent},
                         {"attach", c.parent < 0 ? json(nullptr) : point_json(c.attach)},
                         {"depth", c.depth},
                         {"degree", c.degree},
                         {"mass", c.mass},
                         {"energy", c.energy},
                         {"curve", curve_document(c.map.tuple())}});
    }
    json gaps = json::array();
    for (const auto& g : t.node_gaps) gaps.push_back({{"child", g.child}, {"gap", g.gap}});
    json masses = json::array();
    for (const auto& m : t.mass_checks) {
        masses.push_back({{"component", m.component},
                          {"point", point_json(m.point)},
                          {"algebraic_mult", m.algebraic_mult},
                          {"estimate", m.estimate},
                          {"uncertainty", m.uncertainty},
                          {"pass", m.pass}});
    }
    const bool ok = t.degree_ok() && t.energy_ok() && t.gaps_ok(cfg.connect_tol) && t.masses_ok() && t.stable_ok();
    out["components"] = comps;
    out["node_gaps"] = gaps;
    out["mass_table"] = masses;
    out["conservation"] = {{"d", t.d},
                           {"degree_sum", t.degree_sum},
                           {"degree_ok", t.degree_ok()},
                           {"energy_sum", t.energy_sum},
                           {"energy_tol", t.energy_tol},
                           {"energy_ok", t.energy_ok()},
                           {"gaps_ok", t.gaps_ok(cfg.connect_tol)},
                           {"masses_ok", t.masses_ok()},
                           {"stable_ok", t.stable_ok()}};
    out["stability"] = {{"stable", t.stability.stable}, {"offenders", t.stability.offenders}};
    out["diagnostics"] = t.diagnostics;
    out["config"] = {{"hbar", cfg.hbar},
                     {"mass_tol", cfg.mass_tol},
                     {"connect_tol", cfg.connect_tol},
                     {"quad_tol", cfg.quad_tol},
                     {"check_masses", cfg.check_masses}};
    out["pass"] = ok;
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace gromov
