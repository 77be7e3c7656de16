#include "gromov/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "gromov/errors.hpp"
#include "gromov/io.hpp"

namespace gromov {

namespace {

template <class T>
T expect(InputDocument doc, const char* kind) {
    if (T* p = std::get_if<T>(&doc.payload)) return std::move(*p);
    throw Error(ErrorKind::SchemaError, std::string("kind: expected a ") + kind + " document, got " + doc.kind);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
    f << text;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string density_csv(const RationalCurve& c, const Region& region, int res) {
    cplx center;
    double r_in = -1.0, r_out = 0.0;
    int chart = 0;
    if (const auto* d = std::get_if<Disk>(&region)) {
        center = d->center;
        r_out = d->r;
        chart = d->chart;
    } else if (const auto* a = std::get_if<Annulus>(&region)) {
        center = a->center;
        r_in = a->r_in;
        r_out = a->r_out;
        chart = a->chart;
    } else {
        throw Error(ErrorKind::InvalidArgument, "density-grid: region must be a disk or an annulus");
    }
    if (res < 2) throw Error(ErrorKind::InvalidArgument, "density-grid: --res must be at least 2");
    std::string csv = "x,y,rho\n";
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            const double x = center.real() - r_out + 2.0 * r_out * j / (res - 1);
            const double y = center.imag() - r_out + 2.0 * r_out * i / (res - 1);
            const cplx z(x, y);
            const double rr = std::abs(z - center);
            if (rr > r_out || rr < r_in) continue;
            csv += fmt(x) + "," + fmt(y) + "," + fmt(energy_density(c, z, chart)) + "\n";
        }
    }
    return csv;
}

const std::map<std::string, std::function<FitReport(std::uint64_t, int)>>& harnesses() {
    static const std::map<std::string, std::function<FitReport(std::uint64_t, int)>> m{
        {"mean-value", verify_mean_value},       {"order-limit", verify_order_limit},
        {"cylinder", verify_cylinder},           {"isoperimetric", verify_isoperimetric},
        {"poincare", verify_poincare},
    };
    return m;
}

json run_verify(const VerifyConfig& cfg) {
    if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "verify: --samples must be positive");
    std::vector<std::string> names;
    if (cfg.check == "all") {
        for (const auto& [name, fn] : harnesses()) names.push_back(name);
    } else if (harnesses().count(cfg.check)) {
        names.push_back(cfg.check);
    } else {
        throw Error(ErrorKind::InvalidArgument, "verify: unknown check '" + cfg.check + "'");
    }
    json reports = json::array();
    bool pass = true;
    for (const auto& name : names) {
        const auto rep = harnesses().at(name)(cfg.seed, cfg.samples);
        pass = pass && rep.pass();
        reports.push_back(fit_report_json(rep));
    }
    return {{"schema", kSchemaVersion}, {"kind", "verify"}, {"seed", cfg.seed}, {"samples", cfg.samples},
            {"reports", reports},       {"pass", pass}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gromov limits of families of rational curves and checks of the analytic estimates"};
    app.require_subcommand(1);
    std::string file, out_path;

    auto* factor = app.add_subcommand("factor", "Common roots of a tuple and the residual curve");
    factor->add_option("file", file, "curve document")->required();

    std::string region_spec = "full";
    double tol = 1e-7;
    auto* energy_cmd = app.add_subcommand("energy", "Energy of a curve over a region");
    energy_cmd->add_option("file", file, "curve document")->required();
    energy_cmd->add_option("--region", region_spec, "full | disk:cx,cy,r[,chart] | annulus:cx,cy,rin,rout[,chart]");
    energy_cmd->add_option("--tol", tol, "absolute quadrature tolerance");

    std::string point_spec = "0";
    std::string deltas_spec = "0.2,0.1,0.05";
    auto* mass = app.add_subcommand("mass", "Energy concentrating at a point along a family");
    mass->add_option("file", file, "family document")->required();
    mass->add_option("--point", point_spec, "re,im or inf");
    mass->add_option("--deltas", deltas_spec, "comma separated radii");
    mass->add_option("--tol", tol, "quadrature tolerance");

    BubbleConfig bcfg;
    bool no_mass_checks = false;
    auto* bubble = app.add_subcommand("bubble-tree", "Bubble tree of the limit of a family");
    bubble->add_option("file", file, "family document")->required();
    bubble->add_option("--hbar", bcfg.hbar, "minimal bubble energy");
    bubble->add_option("--mass-tol", bcfg.mass_tol, "tolerance of quadrature masses");
    bubble->add_option("--connect-tol", bcfg.connect_tol, "largest node gap");
    bubble->add_option("--quad-tol", bcfg.quad_tol, "quadrature tolerance");
    bubble->add_option("--limit-tol", bcfg.limit_tol, "extrapolation tolerance");
    bubble->add_flag("--no-mass-checks", no_mass_checks, "skip the quadrature mass table");

    int res = 64;
    std::string grid_region = "disk:0,0,1";
    auto* grid = app.add_subcommand("density-grid", "Energy density on a grid, as CSV x,y,rho");
    grid->add_option("file", file, "curve document")->required();
    grid->add_option("--res", res, "points per side");
    grid->add_option("--region", grid_region, "disk or annulus spec");

    VerifyConfig vcfg;
    std::string config_file;
    auto* verify = app.add_subcommand("verify", "Corpus checks: mean-value, order-limit, cylinder, isoperimetric, poincare, all");
    verify->add_option("check", vcfg.check, "check name");
    verify->add_option("--seed", vcfg.seed, "corpus seed");
    verify->add_option("--samples", vcfg.samples, "corpus size");
    verify->add_option("--config", config_file, "verify-config document");

    auto* stability = app.add_subcommand("stability", "Validity and stability of a decorated tree");
    stability->add_option("file", file, "tree document")->required();

    for (auto* sub : {factor, energy_cmd, mass, bubble, grid, verify, stability})
        sub->add_option("--out", out_path, "write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*factor) {
            const auto t = expect<MapTuple>(load(file), "curve");
            emit(dump(factorization_json(common_factor(t))), out_path, out);
            return kExitOk;
        }
        if (*energy_cmd) {
            const RationalCurve c(expect<MapTuple>(load(file), "curve"));
            const Region region = parse_region(region_spec);
            emit(dump(energy_json(region, tol, energy(c, region, tol))), out_path, out);
            return kExitOk;
        }
        if (*mass) {
            const auto fam = expect<CurveFamily>(load(file), "family");
            const P1Point z = parse_point(point_spec);
            std::vector<double> deltas;
            std::stringstream ss(deltas_spec);
            for (std::string tok; std::getline(ss, tok, ',');) deltas.push_back(std::stod(tok));
            emit(dump(mass_profile_json(z, mass_profile(fam, z, deltas, tol))), out_path, out);
            return kExitOk;
        }
        if (*bubble) {
            const auto fam = expect<CurveFamily>(load(file), "family");
            bcfg.check_masses = !no_mass_checks;
            const auto tree = build_bubble_tree(fam, bcfg);
            const json j = bubble_tree_json(tree, bcfg);
            emit(dump(j), out_path, out);
            return j.at("pass").get<bool>() ? kExitOk : kExitAssertion;
        }
        if (*grid) {
            const RationalCurve c(expect<MapTuple>(load(file), "curve"));
            emit(density_csv(c, parse_region(grid_region), res), out_path, out);
            return kExitOk;
        }
        if (*verify) {
            if (!config_file.empty()) {
                vcfg = expect<VerifyConfig>(load(config_file), "verify-config");
            } else if (vcfg.check.empty()) {
                throw Error(ErrorKind::InvalidArgument, "verify: a check name or --config is required");
            }
            const json j = run_verify(vcfg);
            emit(dump(j), out_path, out);
            return j.at("pass").get<bool>() ? kExitOk : kExitAssertion;
        }
        const json j = stability_json(expect<DecoratedTree>(load(file), "tree"));
        emit(dump(j), out_path, out);
        return j.at("pass").get<bool>() ? kExitOk : kExitAssertion;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.is_numerical() ? kExitNumerical : kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "InvalidArgument: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "InvalidArgument: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace gromov
