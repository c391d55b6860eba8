#include "mipsched/heuristics.hpp"

namespace mipsched {

Locks compute_locks(const MipModel& model) {
  Locks locks;
  locks.down.assign(model.num_vars(), 0);
  locks.up.assign(model.num_vars(), 0);
  for (int i = 0; i < model.num_rows(); ++i) {
    const RowSense sense = model.row_senses[i];
    for (const auto& e : model.rows[i]) {
      const bool pos = e.value > 0;
      if (sense != RowSense::GreaterEqual) ++(pos ? locks.up : locks.down)[e.col];
      if (sense != RowSense::LessEqual) ++(pos ? locks.down : locks.up)[e.col];
    }
  }
  return locks;
}

}  // namespace mipsched
