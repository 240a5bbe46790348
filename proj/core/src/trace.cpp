#include "chiralmag/trace.hpp"

#include <cstdio>
#include <stdexcept>

namespace chiralmag {

std::string trace_header() {
  return "step,time_ps,energy,energy_J,m1_avg,m2_avg,m3_avg,q";
}

std::string trace_row(const TraceRecord& rec) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", rec.step,
                rec.time_ps, rec.energy, rec.energy_J, rec.avg.x, rec.avg.y,
                rec.avg.z, rec.q);
  return buf;
}

TraceWriter::TraceWriter(const std::string& path)
    : out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("trace: cannot open " + path);
  out_ << trace_header() << '\n';
}

void TraceWriter::write(const TraceRecord& rec) {
  out_ << trace_row(rec) << '\n';
  out_.flush();
  last_step_ = rec.step;
}

}  // namespace chiralmag
