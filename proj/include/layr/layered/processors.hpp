#pragma once

#include "layr/layered/lgraph.hpp"

namespace layr::layered {

// Intermediate processors. Each one is a small graph transformation that runs
// between two phases.

/// Orients edges at external-port dummies so that WEST dummies are sources
/// and EAST dummies are sinks.
void orient_external_edges(LGraph& graph);

/// Records the final anchor of every external-port dummy and removes the
/// dummies, leaving their edges attached.
void remove_external_dummies(LGraph& graph);

/// Moves nodes towards their successors where that saves long-edge dummies.
void promote_layers(LGraph& graph);

/// Chooses EAST/WEST sides for the ports of nodes with free port sides.
void assign_port_sides(LGraph& graph);

/// Replaces every edge spanning several layers by a chain of dummies so each
/// edge connects adjacent layers.
void split_long_edges(LGraph& graph);

/// Reverses split_long_edges; dummy positions become bend points.
void join_long_edges(LGraph& graph);

/// Flips edges reversed during cycle breaking back, with their bend points.
void restore_reversed_edges(LGraph& graph);

/// Replaces ports on the north and south side of normal nodes by dummies in
/// the same layer, above or below the node.
void split_north_south_ports(LGraph& graph);

/// Reconnects edges from north/south dummies to the real ports.
void join_north_south_ports(LGraph& graph);

/// Computes port positions along each side from the current port order,
/// enlarging nodes whose explicit ports need more room.
void place_ports(LGraph& graph);

}  // namespace layr::layered
