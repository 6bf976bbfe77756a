#include "hrap/synthetic.hpp"

#include <algorithm>
#include <random>

#include "hrap/errors.hpp"

namespace hrap {

namespace {

std::string padded_id(const char* prefix, int value, int width) {
  std::string digits = std::to_string(value);
  std::string out(prefix);
  out.append(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0');
  out += digits;
  return out;
}

int id_width(int count) {
  int w = 1;
  for (int v = count; v >= 10; v /= 10) ++w;
  return std::max(w, 2);
}

}  // namespace

ProblemInstance generate_synthetic(int n_employees, int n_tasks, int n_skills,
                                   std::uint64_t seed) {
  if (n_employees < 1 || n_tasks < 1 || n_skills < 1) {
    throw ValidationError("synthetic counts must be >= 1");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto uniform_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  std::vector<SkillId> pool;
  const int sw = id_width(n_skills);
  for (int s = 1; s <= n_skills; ++s) pool.push_back(padded_id("skill", s, sw));

  ProblemInstance instance;
  const int ew = id_width(n_employees);
  std::vector<int> indices(static_cast<std::size_t>(n_skills));
  for (int e = 1; e <= n_employees; ++e) {
    Employee emp;
    emp.id = padded_id("emp", e, ew);
    const int k = uniform_int(1, std::min(3, n_skills));
    // Partial Fisher-Yates draw of k distinct skills.
    for (int i = 0; i < n_skills; ++i) indices[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
      std::swap(indices[static_cast<std::size_t>(i)],
                indices[static_cast<std::size_t>(uniform_int(i, n_skills - 1))]);
      const SkillId& skill = pool[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])];
      emp.skills.insert(skill);
      emp.efficiency[skill] = 0.1 + 0.9 * uniform();
    }
    emp.performance = uniform_int(1, 5);
    instance.employees.push_back(std::move(emp));
  }

  const int tw = id_width(n_tasks);
  for (int t = 1; t <= n_tasks; ++t) {
    Task task;
    task.id = padded_id("task", t, tw);
    task.required_skill = pool[static_cast<std::size_t>(uniform_int(0, n_skills - 1))];
    task.duration_hours = 1.0 + 39.0 * uniform();
    task.complexity = uniform_int(1, 3);
    instance.tasks.push_back(std::move(task));
  }
  return instance;
}

}  // namespace hrap
