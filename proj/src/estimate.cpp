#include "hardy/estimate.hpp"

#include "hardy/errors.hpp"

namespace hardy {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::exact: return "exact";
    case Mode::quadrature: return "quadrature";
    case Mode::mc: return "mc";
  }
  return "unknown";
}

void SamplerConfig::validate() const {
  if (samples < 1) throw DomainError("sampler: samples must be at least 1");
  if (exact_cutoff > 24) throw DomainError("sampler: exact_cutoff must not exceed 24");
  if (sign_samples < 1) throw DomainError("sampler: sign_samples must be at least 1");
  if (threads < 1) throw DomainError("sampler: threads must be at least 1");
}

}  // namespace hardy
