#include "hermiquad/errors.hpp"

namespace hermiquad {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::index_too_large: return "IndexTooLarge";
    case errc::overflow: return "Overflow";
    case errc::gamma_pole: return "GammaPole";
    case errc::non_positive_decay: return "NonPositiveDecay";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::divergent: return "Divergent";
    case errc::not_converged: return "NotConverged";
  }
  return "Unknown";
}

}  // namespace hermiquad
