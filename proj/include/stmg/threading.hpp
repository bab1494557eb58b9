#pragma once

namespace stmg {

/// Worker threads used by the OpenMP-parallel kernels.
void set_num_threads(int n);
int max_threads();

}  // namespace stmg
