#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minorkit/generators.hpp"
#include "minorkit/graph.hpp"
#include "minorkit/minor_oracle.hpp"

namespace minorkit {

// A minor model together with a human-readable audit trail of the routing
// steps that produced it.  Every model returned by this module has been
// checked with validate_model before being handed back.
struct RoutedModel {
    MinorModel model;
    std::vector<std::string> step_log;
};

// A collection of minor models sharing one host in which every host vertex
// is used by at most two of the copies.
struct PackingCertificate {
    std::vector<MinorModel> copies;
    std::map<int, int> multiplicity;  // host vertex -> number of copies using it

    int max_multiplicity() const;
};

// One entry of a symbolic conversion plan: the operation name and the order
// factor (9 for a swap, 18 for a crosscap/handle conversion) it costs.
struct PlanStep {
    std::string operation;
    int factor = 1;
};

// Symbolic order bookkeeping for converting a mixed surface grid into a
// normal form: no host is materialized, only the factors are tracked.
struct OrderBudget {
    int genus = 0;                 // Euler genus 2h + c of the grid type
    int target_order = 0;          // requested order k of the final grid
    std::string required_order;    // decimal value of 162^(2*genus) * k
    std::vector<PlanStep> step_plan;

    // Product of the plan factors (saturating); always <= 162^(2*genus).
    unsigned long long plan_factor_product() const;
};

// Swap a (crosscap, handle) or (handle, crosscap) pair sitting at positions
// `position`, `position + 1` of a mixed surface grid.  The host has order
// 9k and the produced model realizes the order-k grid with the two
// transactions exchanged.  Only k = 1 is materialized.
RoutedModel swap_adjacent(int host_order,
                          const std::vector<TransactionKind>& kinds,
                          int position);

// Convert three consecutive crosscaps at `position`..`position + 2` of an
// order-18k mixed surface grid into one handle followed by one crosscap on
// the order-k grid.  Only k = 1 is materialized.
RoutedModel crosscaps_to_handle(int host_order,
                                const std::vector<TransactionKind>& kinds,
                                int position);

// Convert a handle at `position` followed by a crosscap at `position + 1`
// of an order-18k mixed surface grid into three crosscaps on the order-k
// grid.  Only k = 1 is materialized.
RoutedModel handle_to_crosscaps(int host_order,
                                const std::vector<TransactionKind>& kinds,
                                int position);

// Symbolic plan for converting the (h, c) mixed grid type into its normal
// form, with the order factors required by each step.
OrderBudget plan_to_dyck(int handles, int crosscaps, int order);

// Mutual embeddings of the annulus-free grid and the full grid:
//  - first:  the annulus-free grid of order k as a minor of the full grid
//            of order k;
//  - second: the full grid of order k as a minor of the annulus-free grid
//            of order 2k.
std::pair<RoutedModel, RoutedModel> annulus_embed(int handles, int crosscaps,
                                                  int order);

// x half-integrally packed copies of the order-y annulus-free grid inside
// the order-x*y annulus-free grid of the same type.
PackingCertificate half_integral_packing(int handles, int crosscaps,
                                         int copies, int order);

}  // namespace minorkit
