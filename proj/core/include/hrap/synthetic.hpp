#pragma once

#include <cstdint>

#include "hrap/domain.hpp"

namespace hrap {

// Seeded synthetic instance: 1..3 skills per employee from a pool of
// n_skills, efficiency U[0.1,1], performance U{1..5}, task duration
// U[1,40] hours, complexity U{1..3}. Deterministic per seed.
ProblemInstance generate_synthetic(int n_employees, int n_tasks, int n_skills,
                                   std::uint64_t seed);

}  // namespace hrap
