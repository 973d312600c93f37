#include "sairs/io/reference_values.hpp"

#include "sairs/types.hpp"

namespace sairs {

const std::array<TopologyReference, 4>& topology_references() {
    static const std::array<TopologyReference, 4> refs = {{
        {TopologyKind::CycleTree,
         "cycle_tree",
         3.2877,
         4.37,
         {{{0.0, 6.07, 0.3011},
           {0.006, 6.07, 0.3080},
           {0.006, 6.07, 0.3291},
           {0.1, 6.75, 0.3220},
           {0.006, 6.07, 0.3268},
           {0.65, 7.64, 0.2826},
           {0.65, 7.64, 0.2826},
           {0.17, 7.10, 0.2839},
           {0.006, 6.07, 0.3077}}},
         {{{0.0, 4.72, 0.2773},
           {0.0, 4.72, 0.2884},
           {0.005, 4.93, 0.3222},
           {0.12, 5.33, 0.3098},
           {0.005, 4.93, 0.3188},
           {0.4, 6.24, 0.2582},
           {0.4, 6.24, 0.2582},
           {0.2, 5.54, 0.2602},
           {0.0, 4.72, 0.2878}}}},
        {TopologyKind::Star,
         "star",
         3.8284,
         4.91,
         {{{0.0, 4.63, 0.3581},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915},
           {0.08, 5.64, 0.2915}}},
         {{{0.0, 3.48, 0.3759},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727},
           {0.0, 4.24, 0.2727}}}},
        {TopologyKind::Ring,
         "ring",
         3.0,
         4.07,
         {{{0.0, 6.13, 0.2981},
           {0.01, 6.33, 0.3015},
           {0.4, 6.73, 0.3041},
           {0.5, 7.13, 0.3074},
           {1.7, 7.52, 0.3117},
           {1.7, 7.52, 0.3117},
           {0.5, 7.13, 0.3074},
           {0.4, 6.73, 0.3041},
           {0.01, 6.33, 0.3015}}},
         {{{0.0, 4.76, 0.2718},
           {0.0, 4.95, 0.2771},
           {0.15, 5.34, 0.2822},
           {0.27, 5.72, 0.2882},
           {1.23, 6.13, 0.2985},
           {1.23, 6.13, 0.2985},
           {0.27, 5.72, 0.2882},
           {0.15, 5.34, 0.2822},
           {0.0, 4.95, 0.2771}}}},
        {TopologyKind::Line,
         "line",
         2.9021,
         3.97,
         {{{0.0, 6.81, 0.2629},
           {0.02, 6.61, 0.2941},
           {0.2, 6.81, 0.3015},
           {0.81, 7.19, 0.3029},
           {1.73, 7.79, 0.3031},
           {1.88, 8.39, 0.3023},
           {1.91, 8.99, 0.3011},
           {2.03, 9.59, 0.2975},
           {4.19, 10.41, 0.2728}}},
         {{{0.0, 5.40, 0.2263},
           {0.0, 5.26, 0.2650},
           {0.08, 5.54, 0.2771},
           {0.53, 5.96, 0.2811},
           {1.26, 6.42, 0.2814},
           {1.42, 6.99, 0.2807},
           {1.57, 7.58, 0.2791},
           {1.73, 8.39, 0.2751},
           {3.64, 8.99, 0.2450}}}},
    }};
    return refs;
}

const TopologyReference& reference_for(TopologyKind kind) {
    for (const TopologyReference& ref : topology_references()) {
        if (ref.kind == kind) return ref;
    }
    throw SairsError(Errc::InvalidArgument, "no reference data for this topology kind");
}

}  // namespace sairs
