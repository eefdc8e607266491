#include "vst/error.hpp"

namespace vst {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::structural: return "structural";
    case Errc::capacity: return "capacity";
    case Errc::validation: return "validation";
    case Errc::ill_defined_edges: return "ill-defined edges";
    case Errc::not_connected: return "not connected";
    case Errc::unsupported_input: return "unsupported input";
    case Errc::scope: return "scope";
    case Errc::input: return "input";
    case Errc::parse: return "parse";
    case Errc::domain: return "domain";
    case Errc::contract: return "contract";
    case Errc::budget: return "budget";
    case Errc::infeasible: return "infeasible";
    case Errc::internal: return "internal";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace vst
