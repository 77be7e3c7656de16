#ifndef GROMOV_IO_HPP
#define GROMOV_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "gromov/bubble.hpp"
#include "gromov/fs_geometry.hpp"
#include "gromov/lab.hpp"
#include "gromov/poly.hpp"
#include "gromov/tree.hpp"

namespace gromov {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct VerifyConfig {
    std::string check;
    std::uint64_t seed = 1;
    int samples = 100;
};

/// A schema-checked input file. Curve documents hold a bare tuple, which may
/// have common roots.
struct InputDocument {
    std::string kind;  // "curve", "family", "tree", "verify-config"
    std::variant<MapTuple, CurveFamily, DecoratedTree, VerifyConfig> payload;
};

/// Throws ParseError (with line and column) or SchemaError (naming the field).
InputDocument parse_document(const std::string& text);
InputDocument load(const std::filesystem::path& path);

/// "full", "disk:cx,cy,r[,chart]", "annulus:cx,cy,rin,rout[,chart]".
Region parse_region(const std::string& spec);
/// "re,im", "re" or "inf".
P1Point parse_point(const std::string& spec);

json complex_json(cplx z);
/// [re, im] for finite points, "infinity" otherwise.
json point_json(const P1Point& p);
json tuple_json(const MapTuple& t);
json region_json(const Region& r);

json curve_document(const MapTuple& t);
json family_document(const CurveFamily& fam);
json tree_document(const DecoratedTree& t);

json factorization_json(const Factorization& f);
json energy_json(const Region& r, double tol, const EnergyResult& e);
json mass_profile_json(const P1Point& z, const MassProfile& m);
json fit_report_json(const FitReport& r);
json stability_json(const DecoratedTree& t);
/// A tree document (so it loads back as one) extended with the component
/// maps, node gaps, mass table and conservation summary.
json bubble_tree_json(const BubbleTree& t, const BubbleConfig& cfg);

/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

}  // namespace gromov

#endif
