#include "lrdkit/trace.hpp"

#include <cmath>
#include <format>

#include "lrdkit/errors.hpp"

namespace lrdkit {

void validate_trace(const ChannelTrace& trace) {
  validate_link(trace.link);
  if (trace.samples.size() == 0) throw ArgumentError("trace has no samples");
  if (!(trace.sample_rate_hz > 0.0))
    throw ArgumentError("sample rate must be positive");
  if (trace.missing.size() != 0 && trace.missing.size() != trace.samples.size())
    throw ArgumentError("missing mask length does not match the samples");
  for (Eigen::Index i = 0; i < trace.samples.size(); ++i) {
    const bool is_missing = trace.missing.size() != 0 && trace.missing[i];
    if (!is_missing && !std::isfinite(trace.samples[i]))
      throw ArgumentError(std::format("non-finite sample at index {}", i));
  }
}

}  // namespace lrdkit
