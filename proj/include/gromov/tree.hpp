#ifndef GROMOV_TREE_HPP
#define GROMOV_TREE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gromov/poly.hpp"

namespace gromov {

/// A finite strict partial order given by immediate predecessors; the order
/// itself is the transitive closure.
struct RootedOrder {
    std::vector<int> elements;
    std::map<int, std::vector<int>> preds;
};

/// Rooted order plus attachment points: component i != root is glued at its
/// own infinity to the point attach[i] of component p(i).
struct SphereTree {
    RootedOrder order;
    std::map<int, P1Point> attach;
};

struct Violation {
    std::string axiom;  // "RS1", "RS2", "order", "attachment", "injectivity"
    std::vector<int> witnesses;
    std::string detail;
};

/// Empty iff the order is a rooted tree order with injective attachments.
std::vector<Violation> validate(const SphereTree& t);
std::vector<Violation> validate(const RootedOrder& order);

/// The unique immediate predecessor p(i).
int predecessor(const RootedOrder& order, int i);
/// The minimal element; throws InvalidArgument if there is none or several.
int root_of(const RootedOrder& order);
/// Elements whose immediate predecessor is i, ascending.
std::vector<int> children(const RootedOrder& order, int i);
/// True if a precedes b in the transitive closure.
bool precedes(const RootedOrder& order, int a, int b);

/// A point on a component of a nodal curve.
struct Branch {
    int component = 0;
    P1Point point;
};

struct NodalConfig {
    std::vector<int> genera;  // one entry per component
    std::vector<std::pair<Branch, Branch>> identified_pairs;
};

/// Throws InvalidArgument if some point is identified with more than one other point.
void validate_nodal(const NodalConfig& c);
/// (2 - chi(normalization) + |S|) / 2.
int arithmetic_genus(const NodalConfig& c);
NodalConfig nodal_config(const SphereTree& t);

struct ComponentDecor {
    int degree = 0;
    int marked = 0;
};

struct DecoratedTree {
    SphereTree tree;
    std::map<int, ComponentDecor> decor;
};

/// Nodes on the component plus its marked points.
int special_point_count(const DecoratedTree& t, int component);

struct StabilityResult {
    bool stable = true;
    std::vector<int> offenders;
};

StabilityResult stability_check(const DecoratedTree& t);

}  // namespace gromov

#endif
