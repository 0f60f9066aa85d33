#include "layr/pipeline.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "layr/box.hpp"
#include "layr/errors.hpp"
#include "layr/layered/crossing.hpp"
#include "layr/layered/cycle_breaking.hpp"
#include "layr/layered/layering.hpp"
#include "layr/layered/placement.hpp"
#include "layr/layered/processors.hpp"
#include "layr/layered/routing.hpp"

namespace layr {

using layered::LGraph;
using layered::NodeKind;

namespace {

// The registry. Pre- and postconditions are the contract each processor
// relies on and establishes.
constexpr std::array<RegistryEntry, 12> kRegistry{{
    {SlotId::BeforeP1, ProcessorId::ComponentSeparator, "one component list entry",
     "one entry per connected component, by lowest model order"},
    {SlotId::BeforeP1, ProcessorId::ExternalPortProcessor, "external-port dummies exist",
     "WEST dummies are sources and EAST dummies are sinks"},
    {SlotId::BeforeP3, ProcessorId::NodePromotion, "layers assigned", "no promotion would remove a dummy"},
    {SlotId::BeforeP3, ProcessorId::PortSideProcessor, "acyclic, layers assigned",
     "every port has a side; free ports face their edges"},
    {SlotId::BeforeP3, ProcessorId::LongEdgeSplitter, "layers assigned", "every edge spans one layer"},
    {SlotId::BeforeP3, ProcessorId::NorthSouthPortPreprocessor, "port sides assigned, proper layering",
     "no edge attaches to a north or south port"},
    {SlotId::BeforeP4, ProcessorId::PortOrderProcessor, "port order final",
     "every port has a position on its node's border"},
    {SlotId::AfterP5, ProcessorId::NorthSouthPortPostprocessor, "edges routed",
     "north/south dummies removed, edges attach to their real ports"},
    {SlotId::AfterP5, ProcessorId::LongEdgeJoiner, "edges routed", "no long-edge dummies remain"},
    {SlotId::AfterP5, ProcessorId::ReversedEdgeRestorer, "edges routed", "no edge is marked reversed"},
    {SlotId::AfterP5, ProcessorId::ExternalPortProcessor, "edges routed",
     "external anchors recorded, external-port dummies removed"},
    {SlotId::AfterP5, ProcessorId::ComponentPacker, "every component routed", "a single packed graph"},
}};

constexpr std::array<std::string_view, 11> kProcessorNames{
    "COMPONENT_SEPARATOR",      "EXTERNAL_PORT_PROCESSOR",        "NODE_PROMOTION",
    "PORT_SIDE_PROCESSOR",      "LONG_EDGE_SPLITTER",             "NORTH_SOUTH_PORT_PREPROCESSOR",
    "PORT_ORDER_PROCESSOR",     "NORTH_SOUTH_PORT_POSTPROCESSOR", "LONG_EDGE_JOINER",
    "REVERSED_EDGE_RESTORER",   "COMPONENT_PACKER",
};

int registry_index(SlotId slot, ProcessorId processor) {
    for (std::size_t i = 0; i < kRegistry.size(); ++i) {
        if (kRegistry[i].slot == slot && kRegistry[i].processor == processor) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

std::string_view to_string(PhaseId phase) {
    switch (phase) {
        case PhaseId::CycleBreaking: return "P1_CYCLE_BREAKING";
        case PhaseId::Layering: return "P2_LAYERING";
        case PhaseId::CrossingMinimization: return "P3_CROSSING_MINIMIZATION";
        case PhaseId::NodePlacement: return "P4_NODE_PLACEMENT";
        case PhaseId::EdgeRouting: return "P5_EDGE_ROUTING";
    }
    return "?";
}

std::string_view to_string(SlotId slot) {
    switch (slot) {
        case SlotId::BeforeP1: return "BEFORE_P1";
        case SlotId::BeforeP2: return "BEFORE_P2";
        case SlotId::BeforeP3: return "BEFORE_P3";
        case SlotId::BeforeP4: return "BEFORE_P4";
        case SlotId::BeforeP5: return "BEFORE_P5";
        case SlotId::AfterP5: return "AFTER_P5";
    }
    return "?";
}

std::string_view to_string(ProcessorId processor) {
    const auto i = static_cast<std::size_t>(processor);
    return i < kProcessorNames.size() ? kProcessorNames[i] : std::string_view("?");
}

ProcessorId processor_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kProcessorNames.size(); ++i) {
        if (kProcessorNames[i] == name) return static_cast<ProcessorId>(i);
    }
    throw std::invalid_argument("unknown processor '" + std::string(name) + "'");
}

std::span<const RegistryEntry> processor_registry() { return kRegistry; }

bool ProcessorPlan::contains(SlotId id, ProcessorId processor) const {
    const auto& list = slot(id);
    return std::find(list.begin(), list.end(), processor) != list.end();
}

ProcessorPlan assemble(std::span<const ProcessingRequest> requests, const PhaseStrategies& strategies) {
    std::vector<bool> wanted(kRegistry.size(), false);
    for (const ProcessingRequest& request : requests) {
        for (const auto& [slot, processor] : request.items) {
            const int index = registry_index(slot, processor);
            if (index < 0) {
                throw std::invalid_argument("unknown processor '" + std::string(to_string(processor)) + "' in slot " +
                                            std::string(to_string(slot)));
            }
            wanted[index] = true;
        }
    }
    ProcessorPlan plan;
    plan.strategies = strategies;
    for (std::size_t i = 0; i < kRegistry.size(); ++i) {
        if (wanted[i]) plan.slots[static_cast<std::size_t>(kRegistry[i].slot)].push_back(kRegistry[i].processor);
    }
    return plan;
}

ProcessingRequest strategy_requests(const PhaseStrategies&) {
    // Every cycle breaker reverses edges; every crossing minimiser needs a
    // proper layering and port sides; every placer needs port positions.
    ProcessingRequest r;
    r.items = {
        {SlotId::AfterP5, ProcessorId::ReversedEdgeRestorer},
        {SlotId::BeforeP3, ProcessorId::PortSideProcessor},
        {SlotId::BeforeP3, ProcessorId::LongEdgeSplitter},
        {SlotId::AfterP5, ProcessorId::LongEdgeJoiner},
        {SlotId::BeforeP4, ProcessorId::PortOrderProcessor},
    };
    return r;
}

ProcessingRequest graph_requests(const LGraph& graph) {
    ProcessingRequest r;
    const bool externals = std::any_of(graph.nodes.begin(), graph.nodes.end(), [](const layered::LNode& n) {
        return n.alive && n.kind == NodeKind::ExternalPortDummy;
    });
    if (externals) {
        r.items.push_back({SlotId::BeforeP1, ProcessorId::ExternalPortProcessor});
        r.items.push_back({SlotId::AfterP5, ProcessorId::ExternalPortProcessor});
    } else if (graph.settings.separate_components) {
        r.items.push_back({SlotId::BeforeP1, ProcessorId::ComponentSeparator});
        r.items.push_back({SlotId::AfterP5, ProcessorId::ComponentPacker});
    }
    if (graph.settings.node_promotion) r.items.push_back({SlotId::BeforeP3, ProcessorId::NodePromotion});
    const bool north_south = std::any_of(graph.ports.begin(), graph.ports.end(), [&](const layered::LPort& p) {
        return graph.nodes[p.node].alive && graph.nodes[p.node].kind == NodeKind::Normal &&
               (p.side == PortSide::North || p.side == PortSide::South) && p.degree() > 0;
    });
    if (north_south) {
        r.items.push_back({SlotId::BeforeP3, ProcessorId::NorthSouthPortPreprocessor});
        r.items.push_back({SlotId::AfterP5, ProcessorId::NorthSouthPortPostprocessor});
    }
    return r;
}

PhaseStrategies strategies_of(const layered::LayeredSettings& s) {
    return {s.cycle_breaking, s.layering, s.crossing_minimization, s.node_placement, s.edge_routing};
}

ProcessorPlan default_plan(const LGraph& graph) {
    const PhaseStrategies strategies = strategies_of(graph.settings);
    const std::array<ProcessingRequest, 2> requests{strategy_requests(strategies), graph_requests(graph)};
    return assemble(requests, strategies);
}

namespace {

struct Step {
    bool is_phase = false;
    PhaseId phase{};
    ProcessorId processor{};
    SlotId slot{};
    std::string name;
};

std::vector<Step> steps_of(const ProcessorPlan& plan) {
    std::vector<Step> steps;
    auto add_slot = [&](SlotId slot) {
        for (ProcessorId p : plan.slot(slot)) steps.push_back({false, {}, p, slot, std::string(to_string(p))});
    };
    const std::array<PhaseId, 5> phases{PhaseId::CycleBreaking, PhaseId::Layering, PhaseId::CrossingMinimization,
                                        PhaseId::NodePlacement, PhaseId::EdgeRouting};
    for (std::size_t i = 0; i < phases.size(); ++i) {
        add_slot(static_cast<SlotId>(i));
        steps.push_back({true, phases[i], {}, {}, std::string(to_string(phases[i]))});
    }
    add_slot(SlotId::AfterP5);
    return steps;
}

[[noreturn]] void violated(const std::string& step, const std::string& what) {
    throw LayoutError(step + " precondition violated: " + what, step);
}

std::string edge_name(const LGraph& g, int e) {
    const int origin = g.edges[e].origin;
    if (origin >= 0 && origin < static_cast<int>(g.edge_origins.size()) && g.edge_origins[origin]) {
        return "'" + g.edge_origins[origin]->id + "'";
    }
    return "#" + std::to_string(e);
}

void require_layers(const LGraph& g, const std::string& step) {
    for (const layered::LNode& v : g.nodes) {
        if (v.alive && v.layer < 0) violated(step, "node without a layer");
    }
}

void check_preconditions(const Step& step, const LGraph& g) {
    if (!step.is_phase) {
        switch (step.processor) {
            case ProcessorId::NodePromotion:
            case ProcessorId::PortSideProcessor:
            case ProcessorId::LongEdgeSplitter:
            case ProcessorId::NorthSouthPortPreprocessor:
            case ProcessorId::PortOrderProcessor: require_layers(g, step.name); break;
            case ProcessorId::NorthSouthPortPostprocessor:
            case ProcessorId::LongEdgeJoiner:
            case ProcessorId::ReversedEdgeRestorer:
                if (!g.routed && g.alive_nodes() > 0) violated(step.name, "edges are not routed");
                break;
            default: break;
        }
        return;
    }
    switch (step.phase) {
        case PhaseId::CycleBreaking: break;
        case PhaseId::Layering:
            if (!layered::is_acyclic(g)) violated(step.name, "graph contains a cycle");
            break;
        case PhaseId::CrossingMinimization:
            require_layers(g, step.name);
            for (const layered::LEdge& e : g.edges) {
                if (!e.alive || g.is_self_loop(e.id)) continue;
                if (g.nodes[g.target_node(e.id)].layer <= g.nodes[g.source_node(e.id)].layer) {
                    violated(step.name, "edge " + edge_name(g, e.id) + " does not point to a later layer");
                }
            }
            break;
        case PhaseId::NodePlacement:
            require_layers(g, step.name);
            for (const layered::LEdge& e : g.edges) {
                if (!e.alive || g.is_self_loop(e.id)) continue;
                const int span = g.nodes[g.target_node(e.id)].layer - g.nodes[g.source_node(e.id)].layer;
                if (span != 1) {
                    violated(step.name, "edge " + edge_name(g, e.id) + " spans " + std::to_string(span) +
                                            " layers; a proper layering is required");
                }
            }
            break;
        case PhaseId::EdgeRouting:
            if (!g.placed && g.alive_nodes() > 0) violated(step.name, "nodes are not placed");
            break;
    }
}

void run_phase(PhaseId phase, LGraph& g) {
    switch (phase) {
        case PhaseId::CycleBreaking: layered::break_cycles(g, g.settings.cycle_breaking); break;
        case PhaseId::Layering: layered::assign_layers(g); break;
        case PhaseId::CrossingMinimization: layered::minimize_crossings(g); break;
        case PhaseId::NodePlacement: layered::place_nodes(g); break;
        case PhaseId::EdgeRouting: layered::route_edges(g); break;
    }
}

void run_processor(ProcessorId processor, SlotId slot, LGraph& g) {
    switch (processor) {
        case ProcessorId::ExternalPortProcessor:
            if (slot == SlotId::BeforeP1) {
                layered::orient_external_edges(g);
            } else {
                layered::remove_external_dummies(g);
            }
            break;
        case ProcessorId::NodePromotion: layered::promote_layers(g); break;
        case ProcessorId::PortSideProcessor: layered::assign_port_sides(g); break;
        case ProcessorId::LongEdgeSplitter: layered::split_long_edges(g); break;
        case ProcessorId::NorthSouthPortPreprocessor: layered::split_north_south_ports(g); break;
        case ProcessorId::PortOrderProcessor: layered::place_ports(g); break;
        case ProcessorId::NorthSouthPortPostprocessor: layered::join_north_south_ports(g); break;
        case ProcessorId::LongEdgeJoiner: layered::join_long_edges(g); break;
        case ProcessorId::ReversedEdgeRestorer: layered::restore_reversed_edges(g); break;
        case ProcessorId::ComponentSeparator:
        case ProcessorId::ComponentPacker: break;  // handled on the component list
    }
}

// Bounding box of a component in its own frame: nodes, ports and bends.
Rect component_bounds(const LGraph& g) {
    BoundingBox box;
    for (const layered::LNode& v : g.nodes) {
        if (!v.alive) continue;
        box.add(v.bounds());
        for (int p : v.ports) {
            const layered::LPort& port = g.ports[p];
            box.add(Rect{v.x + port.pos.x, v.y + port.pos.y, port.width, port.height});
        }
    }
    for (const layered::LEdge& e : g.edges) {
        if (!e.alive) continue;
        for (Point b : e.bends) box.add(b);
    }
    return box.empty() ? Rect{} : box.rect();
}

LGraph pack(std::vector<LGraph>&& parts) {
    if (parts.size() == 1) return std::move(parts.front());
    const layered::LayeredSettings& s = parts.front().settings;
    const bool vertical = s.direction == Direction::Down || s.direction == Direction::Up;
    std::vector<BoxItem> items;
    std::vector<Rect> bounds;
    for (const LGraph& part : parts) {
        bounds.push_back(component_bounds(part));
        // The internal frame is transposed for vertical directions.
        items.push_back({bounds.back().width, bounds.back().height});
    }
    const double ratio = vertical ? 1.0 / s.aspect_ratio : s.aspect_ratio;
    const BoxPacking packing = pack_boxes(items, ratio, s.node_node, Padding{0, 0, 0, 0});
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Point shift = packing.positions[i] - Point{bounds[i].x, bounds[i].y};
        for (layered::LNode& v : parts[i].nodes) {
            v.x += shift.x;
            v.y += shift.y;
        }
        for (layered::LEdge& e : parts[i].edges) {
            for (Point& b : e.bends) b = b + shift;
        }
        parts[i].layer_x.clear();
        parts[i].layer_width.clear();
    }
    return layered::merge_components(std::move(parts));
}

}  // namespace

std::vector<std::string> step_names(const ProcessorPlan& plan) {
    std::vector<std::string> names;
    for (const Step& s : steps_of(plan)) names.push_back(s.name);
    return names;
}

std::string format_trace(const TraceEntry& entry) {
    std::ostringstream out;
    out << "STEP " << entry.ordinal << ' ' << entry.name << " nodes=" << entry.nodes << " edges=" << entry.edges
        << " dummies=" << entry.dummies;
    return out.str();
}

void execute(const ProcessorPlan& plan, LGraph& graph, const StepObserver& observer) {
    std::vector<LGraph> parts{graph};
    int ordinal = 0;
    for (const Step& step : steps_of(plan)) {
        try {
            if (!step.is_phase && step.processor == ProcessorId::ComponentSeparator) {
                if (parts.size() == 1 && parts.front().alive_nodes() > 0) {
                    parts = layered::split_components(parts.front());
                }
            } else if (!step.is_phase && step.processor == ProcessorId::ComponentPacker) {
                LGraph packed = pack(std::move(parts));
                parts.clear();
                parts.push_back(std::move(packed));
            } else {
                for (LGraph& part : parts) {
                    check_preconditions(step, part);
                    if (step.is_phase) {
                        run_phase(step.phase, part);
                    } else {
                        run_processor(step.processor, step.slot, part);
                    }
                }
            }
        } catch (const LayoutError& e) {
            if (!e.step().empty()) throw;
            throw LayoutError(step.name + ": " + e.what(), step.name);
        } catch (const std::exception& e) {
            throw LayoutError(step.name + ": " + e.what(), step.name);
        }
        if (observer) {
            TraceEntry entry;
            entry.ordinal = ++ordinal;
            entry.name = step.name;
            for (const LGraph& part : parts) {
                entry.nodes += part.alive_nodes();
                entry.edges += part.alive_edges();
                entry.dummies += part.dummy_count();
            }
            observer(entry, parts);
        }
    }
    if (parts.empty()) {
        graph = LGraph{};
    } else if (parts.size() == 1) {
        graph = std::move(parts.front());
    } else {
        graph = layered::merge_components(std::move(parts));
    }
}

std::vector<TraceEntry> trace_log(const ProcessorPlan& plan, LGraph& graph) {
    std::vector<TraceEntry> log;
    execute(plan, graph, [&](const TraceEntry& entry, std::span<const LGraph>) { log.push_back(entry); });
    return log;
}

}  // namespace layr
