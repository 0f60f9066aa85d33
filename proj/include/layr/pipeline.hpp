#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "layr/layered/lgraph.hpp"
#include "layr/options.hpp"

namespace layr {

enum class PhaseId { CycleBreaking, Layering, CrossingMinimization, NodePlacement, EdgeRouting };
enum class SlotId { BeforeP1, BeforeP2, BeforeP3, BeforeP4, BeforeP5, AfterP5 };
enum class ProcessorId {
    ComponentSeparator,
    ExternalPortProcessor,
    NodePromotion,
    PortSideProcessor,
    LongEdgeSplitter,
    NorthSouthPortPreprocessor,
    PortOrderProcessor,
    NorthSouthPortPostprocessor,
    LongEdgeJoiner,
    ReversedEdgeRestorer,
    ComponentPacker,
};

inline constexpr std::size_t kSlotCount = 6;

std::string_view to_string(PhaseId phase);
std::string_view to_string(SlotId slot);
std::string_view to_string(ProcessorId processor);

/// Parses a processor name such as "LONG_EDGE_SPLITTER". Throws
/// std::invalid_argument naming unknown ids.
ProcessorId processor_from_string(std::string_view name);

/// One registered (slot, processor) pair with its documented contract.
struct RegistryEntry {
    SlotId slot;
    ProcessorId processor;
    std::string_view pre;
    std::string_view post;
};

/// Every registered pair. Within a slot the listed order is the execution
/// order; it never changes.
std::span<const RegistryEntry> processor_registry();

struct ProcessingRequest {
    std::vector<std::pair<SlotId, ProcessorId>> items;
};

struct PhaseStrategies {
    CycleBreakingStrategy cycle_breaking = CycleBreakingStrategy::Greedy;
    LayeringStrategy layering = LayeringStrategy::NetworkSimplex;
    CrossingMinimizationStrategy crossing_minimization = CrossingMinimizationStrategy::LayerSweep;
    NodePlacementStrategy node_placement = NodePlacementStrategy::BrandesKoepf;
    EdgeRouting edge_routing = EdgeRouting::Orthogonal;

    friend bool operator==(const PhaseStrategies&, const PhaseStrategies&) = default;
};

struct ProcessorPlan {
    std::array<std::vector<ProcessorId>, kSlotCount> slots;
    PhaseStrategies strategies;

    const std::vector<ProcessorId>& slot(SlotId id) const { return slots[static_cast<std::size_t>(id)]; }
    bool contains(SlotId id, ProcessorId processor) const;

    friend bool operator==(const ProcessorPlan&, const ProcessorPlan&) = default;
};

/// Union of the requests, deduplicated and ordered by the registry.
/// Throws std::invalid_argument for a pair that is not registered.
ProcessorPlan assemble(std::span<const ProcessingRequest> requests, const PhaseStrategies& strategies);

/// Processors the chosen phase strategies depend on.
ProcessingRequest strategy_requests(const PhaseStrategies& strategies);
/// Processors required by properties of the graph and its settings.
ProcessingRequest graph_requests(const layered::LGraph& graph);
PhaseStrategies strategies_of(const layered::LayeredSettings& settings);
/// assemble() over both request sources.
ProcessorPlan default_plan(const layered::LGraph& graph);

/// Step names in execution order: processors by name, phases as
/// P1_CYCLE_BREAKING ... P5_EDGE_ROUTING.
std::vector<std::string> step_names(const ProcessorPlan& plan);

struct TraceEntry {
    int ordinal = 0;  // 1-based
    std::string name;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t dummies = 0;
};

/// "STEP <ordinal> <name> nodes=<n> edges=<m> dummies=<d>"
std::string format_trace(const TraceEntry& entry);

/// Called after every step with the summary and the current components.
using StepObserver = std::function<void(const TraceEntry&, std::span<const layered::LGraph>)>;

/// Runs the plan. A violated precondition throws LayoutError whose step()
/// names the offending step.
void execute(const ProcessorPlan& plan, layered::LGraph& graph, const StepObserver& observer = {});

/// Executes the plan and returns one entry per step.
std::vector<TraceEntry> trace_log(const ProcessorPlan& plan, layered::LGraph& graph);

}  // namespace layr
