#include "layr/hierarchy.hpp"

namespace layr {

namespace {

LevelEnd classify(const GraphIndex& index, const Node& level, std::string_view id) {
    const Endpoint ep = index.resolve(id);
    LevelEnd end;
    if (!ep) return end;
    if (ep.node == &level) {
        end.port = ep.port;
        return end;
    }
    if (!index.is_descendant(*ep.node, level)) return end;
    const Node* child = ep.node;
    while (index.parent(*child) != &level) child = index.parent(*child);
    end.child = child;
    if (child != ep.node) {
        end.kind = EndKind::ChildBoundary;
    } else if (ep.port) {
        end.kind = EndKind::ChildPort;
        end.port = ep.port;
    } else {
        end.kind = EndKind::Child;
    }
    return end;
}

}  // namespace

std::vector<LevelEdge> level_edges(const GraphIndex& index, const Node& level) {
    std::vector<LevelEdge> out;
    for (const Edge* e : index.all_edges()) {
        const LevelEnd s = classify(index, level, e->source);
        const LevelEnd t = classify(index, level, e->target);
        if (s.kind == EndKind::External && t.kind == EndKind::External) continue;
        if (s.kind != EndKind::External && t.kind != EndKind::External && s.child == t.child &&
            (s.kind == EndKind::ChildBoundary || t.kind == EndKind::ChildBoundary)) {
            continue;  // handled inside that child
        }
        out.push_back({e, s, t});
    }
    return out;
}

}  // namespace layr
