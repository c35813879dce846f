#pragma once

#include <vector>

#include "tfr/model.hpp"

namespace tfr {

// Worker movement between tours: `from`/`to` index the selected columns,
// -1 stands for the depot on either side.
struct WorkerFlow {
  int level = 0;  // 0-based skill level
  int from = -1;
  int to = -1;
  int count = 0;
};

struct FeasCheckResult {
  bool feasible = false;
  int slack_total = 0;  // additional workers required, 0 iff feasible
  std::vector<WorkerFlow> flows;
};

// The disaggregated feasibility test: a min-slack integer flow that regroups
// workers between the selected tours (predecessor = returns no later than the
// successor leaves). Aggregated columns demand their profile's cumulative
// requirements; disaggregated columns demand their composition exactly.
FeasCheckResult feasibility_check(const std::vector<Column>& selected,
                                  const Instance& inst);

// Greedy constructive certificate for integer disaggregated solutions; all
// selected columns must carry compositions. The returned flows satisfy the
// feasibility check with zero slack.
std::vector<WorkerFlow> construct_dmp_certificate(
    const std::vector<Column>& selected, const Instance& inst);

// Validates flows against the feasibility-check constraints (coverage, flow
// conservation, depot balance, non-negativity); used by tests and as a
// cross-check after construction.
bool flows_satisfy_check(const std::vector<Column>& selected,
                         const Instance& inst,
                         const std::vector<WorkerFlow>& flows);

}  // namespace tfr
