#include "gromov/tree.hpp"

#include <algorithm>
#include <set>

#include "gromov/errors.hpp"

namespace gromov {

namespace {

bool has_element(const RootedOrder& o, int i) {
    return std::find(o.elements.begin(), o.elements.end(), i) != o.elements.end();
}

const std::vector<int>& preds_of(const RootedOrder& o, int i) {
    static const std::vector<int> none;
    auto it = o.preds.find(i);
    return it == o.preds.end() ? none : it->second;
}

/// Elements strictly below i; stops at cycles.
std::set<int> below(const RootedOrder& o, int i) {
    std::set<int> out;
    std::vector<int> stack(preds_of(o, i));
    while (!stack.empty()) {
        const int h = stack.back();
        stack.pop_back();
        if (!out.insert(h).second) continue;
        for (int g : preds_of(o, h)) stack.push_back(g);
    }
    return out;
}

std::string point_text(const P1Point& p) {
    if (p.is_infinity()) return "inf";
    const cplx z = p.z();
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

bool precedes(const RootedOrder& order, int a, int b) { return below(order, b).count(a) > 0; }

std::vector<Violation> validate(const RootedOrder& o) {
    std::vector<Violation> out;
    std::set<int> elems(o.elements.begin(), o.elements.end());
    if (elems.size() != o.elements.size()) out.push_back({"order", {}, "duplicate element"});
    for (const auto& [i, ps] : o.preds) {
        if (!elems.count(i)) out.push_back({"order", {i}, "predecessor list for an unknown element"});
        for (int h : ps) {
            if (!elems.count(h)) out.push_back({"order", {i, h}, "unknown predecessor"});
        }
    }
    if (!out.empty()) return out;

    std::map<int, std::set<int>> down;
    for (int i : o.elements) {
        down[i] = below(o, i);
        if (down[i].count(i)) out.push_back({"order", {i}, "element precedes itself (cycle)"});
    }
    if (!out.empty()) return out;

    std::vector<int> minimal;
    for (int i : o.elements) {
        if (down[i].empty()) minimal.push_back(i);
    }
    if (minimal.size() != 1) {
        out.push_back({"RS1", minimal,
                       minimal.empty() ? "no minimal element" : "more than one minimal element"});
    } else {
        const int r = minimal.front();
        for (int h : o.elements) {
            if (h != r && !down[h].count(r)) out.push_back({"RS1", {r, h}, "root does not precede element"});
        }
    }
    for (int i : o.elements) {
        const std::vector<int> hs(down[i].begin(), down[i].end());
        for (std::size_t a = 0; a < hs.size(); ++a) {
            for (std::size_t b = a + 1; b < hs.size(); ++b) {
                if (!down[hs[b]].count(hs[a]) && !down[hs[a]].count(hs[b])) {
                    out.push_back({"RS2", {hs[a], hs[b], i}, "incomparable elements below a common element"});
                }
            }
        }
    }
    return out;
}

std::vector<Violation> validate(const SphereTree& t) {
    auto out = validate(t.order);
    if (!out.empty()) return out;
    const int r = root_of(t.order);
    for (int i : t.order.elements) {
        if (i == r) {
            if (t.attach.count(i)) out.push_back({"attachment", {i}, "root carries an attachment point"});
            continue;
        }
        if (!t.attach.count(i)) out.push_back({"attachment", {i}, "missing attachment point"});
    }
    for (const auto& entry : t.attach) {
        const int i = entry.first;
        if (!has_element(t.order, i)) {
            out.push_back({"attachment", {i}, "attachment for an unknown element"});
        } else if (i != r && entry.second.is_infinity() && predecessor(t.order, i) != r) {
            // infinity of a non-root component is its own node
            out.push_back({"attachment", {i, predecessor(t.order, i)}, "attached at the node of its parent"});
        }
    }
    for (std::size_t a = 0; a < t.order.elements.size(); ++a) {
        const int i1 = t.order.elements[a];
        if (i1 == r || !t.attach.count(i1)) continue;
        for (std::size_t b = a + 1; b < t.order.elements.size(); ++b) {
            const int i2 = t.order.elements[b];
            if (i2 == r || !t.attach.count(i2)) continue;
            if (predecessor(t.order, i1) != predecessor(t.order, i2)) continue;
            const P1Point& z1 = t.attach.at(i1);
            if (z1.equals(t.attach.at(i2))) {
                out.push_back({"injectivity", {i1, i2}, "both attached at " + point_text(z1) + " on the same component"});
            }
        }
    }
    return out;
}

int root_of(const RootedOrder& order) {
    int found = 0;
    int count = 0;
    for (int i : order.elements) {
        if (preds_of(order, i).empty()) {
            found = i;
            ++count;
        }
    }
    if (count != 1) throw Error(ErrorKind::InvalidArgument, "order does not have a unique minimal element");
    return found;
}

int predecessor(const RootedOrder& order, int i) {
    if (!has_element(order, i)) throw Error(ErrorKind::InvalidArgument, "unknown element " + std::to_string(i));
    const auto& ps = preds_of(order, i);
    if (ps.empty()) throw Error(ErrorKind::RootHasNoPredecessor, "element " + std::to_string(i) + " is minimal");
    if (ps.size() > 1) {
        // the immediate predecessor is the maximum of the elements below i
        std::vector<int> top;
        for (int h : ps) {
            bool covered = false;
            for (int g : ps) covered = covered || (g != h && precedes(order, h, g));
            if (!covered) top.push_back(h);
        }
        if (top.size() != 1) {
            throw Error(ErrorKind::InvalidArgument, "element " + std::to_string(i) + " has no unique predecessor");
        }
        return top.front();
    }
    return ps.front();
}

std::vector<int> children(const RootedOrder& order, int i) {
    std::vector<int> out;
    for (int j : order.elements) {
        if (!preds_of(order, j).empty() && predecessor(order, j) == i) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void validate_nodal(const NodalConfig& c) {
    const int m = static_cast<int>(c.genera.size());
    std::vector<Branch> seen;
    for (const auto& [x, y] : c.identified_pairs) {
        for (const Branch& b : {x, y}) {
            if (b.component < 0 || b.component >= m) {
                throw Error(ErrorKind::InvalidArgument, "identified point on an unknown component");
            }
            for (const Branch& s : seen) {
                if (s.component == b.component && s.point.equals(b.point)) {
                    throw Error(ErrorKind::InvalidArgument, "a point is identified with more than one other point");
                }
            }
            seen.push_back(b);
        }
        if (x.component == y.component && x.point.equals(y.point)) {
            throw Error(ErrorKind::InvalidArgument, "a point is identified with itself");
        }
    }
    for (int g : c.genera) {
        if (g < 0) throw Error(ErrorKind::InvalidArgument, "negative genus");
    }
}

int arithmetic_genus(const NodalConfig& c) {
    validate_nodal(c);
    int chi = 0;
    for (int g : c.genera) chi += 2 - 2 * g;
    const int s = 2 * static_cast<int>(c.identified_pairs.size());
    return (2 - chi + s) / 2;
}

NodalConfig nodal_config(const SphereTree& t) {
    std::map<int, int> index;
    for (int i : t.order.elements) index.emplace(i, static_cast<int>(index.size()));
    NodalConfig c;
    c.genera.assign(t.order.elements.size(), 0);
    const int r = root_of(t.order);
    for (int i : t.order.elements) {
        if (i == r) continue;
        const int p = predecessor(t.order, i);
        c.identified_pairs.push_back({Branch{index.at(p), t.attach.at(i)}, Branch{index.at(i), P1Point::infinity()}});
    }
    return c;
}

int special_point_count(const DecoratedTree& t, int component) {
    int nodes = static_cast<int>(children(t.tree.order, component).size());
    if (!preds_of(t.tree.order, component).empty()) ++nodes;
    auto it = t.decor.find(component);
    return nodes + (it == t.decor.end() ? 0 : it->second.marked);
}

StabilityResult stability_check(const DecoratedTree& t) {
    StabilityResult out;
    for (int i : t.tree.order.elements) {
        auto it = t.decor.find(i);
        const int degree = it == t.decor.end() ? 0 : it->second.degree;
        if (degree == 0 && special_point_count(t, i) < 3) out.offenders.push_back(i);
    }
    out.stable = out.offenders.empty();
    return out;
}

}  // namespace gromov
