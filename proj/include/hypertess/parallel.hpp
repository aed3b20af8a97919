#pragma once

#include <cstddef>

namespace hypertess {

enum class Execution { serial, parallel };

// worker count for parallel regions; 0 leaves the OpenMP default
void set_jobs(int jobs);
int jobs();

}  // namespace hypertess
