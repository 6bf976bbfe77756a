#include "hrap/csv_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hrap/errors.hpp"

namespace hrap {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool has_outer_whitespace(const std::string& s) {
  return !s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) ||
                        std::isspace(static_cast<unsigned char>(s.back())));
}

void check_token(const std::string& s, const char* what, std::size_t line_no) {
  if (s.empty()) {
    throw ParseError(std::string("line ") + std::to_string(line_no) + ": empty " + what);
  }
  if (has_outer_whitespace(s)) {
    throw ParseError(std::string("line ") + std::to_string(line_no) + ": " + what +
                     " '" + s + "' has leading/trailing whitespace");
  }
}

double parse_double(const std::string& s, const char* what, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("line ") + std::to_string(line_no) + ": bad " + what +
                     " '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s, const char* what, std::size_t line_no) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("line ") + std::to_string(line_no) + ": bad " + what +
                     " '" + s + "'");
  }
  return v;
}

class CsvReader {
 public:
  CsvReader(const std::string& path, const std::string& expected_header)
      : in_(path), path_(path) {
    if (!in_) throw ParseError("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in_, header)) throw ParseError("'" + path + "' is empty");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != expected_header) {
      throw ParseError("'" + path + "': header must be exactly '" + expected_header +
                       "', got '" + header + "'");
    }
    line_no_ = 1;
  }

  // Returns false at EOF; skips blank lines.
  bool next(std::vector<std::string>& fields, std::size_t expected_count) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty() || line == "\r") continue;
      fields = split_fields(line);
      if (fields.size() != expected_count) {
        throw ParseError("line " + std::to_string(line_no_) + ": expected " +
                         std::to_string(expected_count) + " fields, got " +
                         std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::ifstream in_;
  std::string path_;
  std::size_t line_no_ = 0;
};

}  // namespace

std::vector<Employee> load_employees(const std::string& csv_path) {
  CsvReader reader(csv_path, "employee_id,skill,efficiency,performance_rating");
  std::vector<Employee> employees;
  std::map<EmployeeId, std::size_t> index;
  std::vector<std::string> f;
  while (reader.next(f, 4)) {
    const std::size_t ln = reader.line_no();
    check_token(f[0], "employee_id", ln);
    check_token(f[1], "skill", ln);
    const double eff = parse_double(f[2], "efficiency", ln);
    const int perf = parse_int(f[3], "performance_rating", ln);
    if (eff < 0.1 || eff > 1.0) {
      throw ValidationError("line " + std::to_string(ln) + ": efficiency " + f[2] +
                            " outside [0.1,1]");
    }
    if (perf < 1 || perf > 5) {
      throw ValidationError("line " + std::to_string(ln) + ": performance_rating " + f[3] +
                            " outside [1,5]");
    }
    auto [it, inserted] = index.try_emplace(f[0], employees.size());
    if (inserted) {
      employees.push_back(Employee{f[0], {}, {}, perf});
    }
    Employee& emp = employees[it->second];
    if (!inserted && emp.performance != perf) {
      throw ValidationError("line " + std::to_string(ln) + ": employee '" + f[0] +
                            "' has conflicting performance ratings");
    }
    if (!emp.skills.insert(f[1]).second) {
      throw ValidationError("line " + std::to_string(ln) + ": duplicate skill '" + f[1] +
                            "' for employee '" + f[0] + "'");
    }
    emp.efficiency[f[1]] = eff;
  }
  return employees;
}

std::vector<Task> load_tasks(const std::string& csv_path, int complexity_max) {
  CsvReader reader(csv_path, "task_id,required_skill,duration_hours,complexity");
  std::vector<Task> tasks;
  std::map<TaskId, std::size_t> seen;
  std::vector<std::string> f;
  while (reader.next(f, 4)) {
    const std::size_t ln = reader.line_no();
    check_token(f[0], "task_id", ln);
    check_token(f[1], "required_skill", ln);
    const double dur = parse_double(f[2], "duration_hours", ln);
    const int cx = parse_int(f[3], "complexity", ln);
    if (!(dur > 0.0)) {
      throw ValidationError("line " + std::to_string(ln) + ": nonpositive duration for task '" +
                            f[0] + "'");
    }
    if (cx < 1 || cx > complexity_max) {
      throw ValidationError("line " + std::to_string(ln) + ": complexity " + f[3] +
                            " outside [1," + std::to_string(complexity_max) + "]");
    }
    if (!seen.try_emplace(f[0], tasks.size()).second) {
      throw ValidationError("line " + std::to_string(ln) + ": duplicate task id '" + f[0] + "'");
    }
    tasks.push_back(Task{f[0], f[1], dur, cx});
  }
  return tasks;
}

void save_employees(const std::vector<Employee>& employees, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw ParseError("cannot write '" + csv_path + "'");
  out << "employee_id,skill,efficiency,performance_rating\n";
  for (const auto& e : employees) {
    for (const auto& s : e.skills) {
      out << e.id << ',' << s << ',' << format_double(e.efficiency.at(s)) << ','
          << e.performance << '\n';
    }
  }
}

void save_tasks(const std::vector<Task>& tasks, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw ParseError("cannot write '" + csv_path + "'");
  out << "task_id,required_skill,duration_hours,complexity\n";
  for (const auto& t : tasks) {
    out << t.id << ',' << t.required_skill << ',' << format_double(t.duration_hours) << ','
        << t.complexity << '\n';
  }
}

std::map<ObservationKey, double> load_observations(const std::string& csv_path) {
  CsvReader reader(csv_path, "iteration,employee_id,task_id,actual_time_hours");
  std::map<ObservationKey, double> obs;
  std::vector<std::string> f;
  while (reader.next(f, 4)) {
    const std::size_t ln = reader.line_no();
    const int iter = parse_int(f[0], "iteration", ln);
    check_token(f[1], "employee_id", ln);
    check_token(f[2], "task_id", ln);
    const double t = parse_double(f[3], "actual_time_hours", ln);
    if (!(t > 0.0)) {
      throw ValidationError("line " + std::to_string(ln) + ": nonpositive actual_time_hours");
    }
    if (!obs.try_emplace({iter, f[1], f[2]}, t).second) {
      throw ValidationError("line " + std::to_string(ln) + ": duplicate observation for (" +
                            f[0] + "," + f[1] + "," + f[2] + ")");
    }
  }
  return obs;
}

EfficiencyTable load_efficiency_table(const std::string& csv_path) {
  CsvReader reader(csv_path, "employee_id,skill,efficiency");
  EfficiencyTable table;
  std::vector<std::string> f;
  while (reader.next(f, 3)) {
    const std::size_t ln = reader.line_no();
    check_token(f[0], "employee_id", ln);
    check_token(f[1], "skill", ln);
    const double eff = parse_double(f[2], "efficiency", ln);
    if (!(eff > 0.0) || eff > 1.0) {
      throw ValidationError("line " + std::to_string(ln) + ": efficiency outside (0,1]");
    }
    table[f[0]][f[1]] = eff;
  }
  return table;
}

void save_efficiency_table(const EfficiencyTable& table, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw ParseError("cannot write '" + csv_path + "'");
  out << "employee_id,skill,efficiency\n";
  for (const auto& [emp, skills] : table) {
    for (const auto& [skill, eff] : skills) {
      out << emp << ',' << skill << ',' << format_double(eff) << '\n';
    }
  }
}

std::vector<std::pair<TaskId, EmployeeId>> load_assignment_csv(const std::string& csv_path) {
  CsvReader reader(csv_path, "task_id,employee_id");
  std::vector<std::pair<TaskId, EmployeeId>> pairs;
  std::vector<std::string> f;
  while (reader.next(f, 2)) {
    const std::size_t ln = reader.line_no();
    check_token(f[0], "task_id", ln);
    check_token(f[1], "employee_id", ln);
    pairs.emplace_back(f[0], f[1]);
  }
  return pairs;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace hrap
