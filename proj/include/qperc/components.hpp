#pragma once
// Component census of a percolated hypercube and the measurements that live
// on top of it (giant component fraction, second component, how the rest of
// the graph hangs off a nested giant, local density near the giant).

#include <cstdint>
#include <map>
#include <vector>

#include "qperc/graph.hpp"
#include "qperc/hypercube.hpp"

namespace qperc {

struct ComponentCensus {
  // Component indices are assigned by (size desc, smallest-vertex asc), so
  // index 0 is always "the" giant and sizes[] is non-increasing.
  std::vector<int32_t> label;   // vertex -> component index
  std::vector<uint64_t> sizes;  // non-increasing
  std::vector<uint32_t> rep;    // smallest vertex id per component
  int32_t giant_id = 0;

  std::vector<uint32_t> component_vertices(int32_t id) const;
};

ComponentCensus census(const HypercubeSubgraph& g);

// |largest component| / 2^d; 2^-d for the empty graph.
double giant_fraction(const ComponentCensus& c, uint32_t d);

// Order of the second-largest component; 0 when there is only one component.
uint64_t second_largest_order(const ComponentCensus& c);

struct AttachmentReport {
  bool giant_nested = false;   // giant(g1) ⊆ giant(g2)?
  uint64_t max_attachment = 0; // max over v in giant(g1) of |C_v|
  std::map<uint64_t, uint64_t> histogram;  // |C_v| -> count
};

// For nested graphs g1 ⊆ g2: for each vertex v of L1' = giant(g1), C_v is the
// union of the components of L1 - L1' (L1 = giant(g2), induced in g2) that v
// touches through g2 edges. Reports max |C_v| and its histogram. If the two
// giants are not nested the report is returned with giant_nested = false and
// no measurements (callers treat that as a skipped trial).
AttachmentReport attachment_report(const HypercubeSubgraph& g1,
                                   const HypercubeSubgraph& g2);

// min over ALL hypercube vertices v of the number of giant vertices within
// hypercube distance <= 2 of v (distance in Q^d, not in the subgraph).
uint64_t two_hop_density(const HypercubeSubgraph& g, const ComponentCensus& c);

// |N^5(S) ∩ restrict| in g: vertices outside S reachable from S by a path of
// length <= 5 in g that lie in `restrict`.
uint64_t five_hop_boundary(const HypercubeSubgraph& g,
                           const std::vector<uint32_t>& S,
                           const std::vector<uint32_t>& restrict_to);

}  // namespace qperc
