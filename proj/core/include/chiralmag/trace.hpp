#pragma once

#include <fstream>
#include <string>

#include "chiralmag/stepper.hpp"

namespace chiralmag {

/// Header line of the run trace. Column names carry the units; dimensionless
/// columns are the rescaled energy and the topological charge.
std::string trace_header();

/// One CSV row, no trailing newline. Doubles are printed with 17 significant
/// digits so rows are bitwise-reproducible and round-trip exactly.
std::string trace_row(const TraceRecord& rec);

class TraceWriter {
 public:
  explicit TraceWriter(const std::string& path);
  void write(const TraceRecord& rec);
  long long last_step() const { return last_step_; }

 private:
  std::ofstream out_;
  long long last_step_ = -1;
};

}  // namespace chiralmag
