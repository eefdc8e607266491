#pragma once

#include <stdexcept>
#include <string>

namespace vst {

// Error categories raised by the core. The C layer maps each to a vst_status.
enum class Errc {
  structural = 1,     // mismatched degree/modulus, index out of range
  capacity,           // enumeration cap exceeded
  validation,         // invalid subgroup, irregular digraph, bad word set
  ill_defined_edges,  // Delta*H != H*Delta
  not_connected,
  unsupported_input,
  scope,              // operation outside its stated domain (e.g. diameter != 2)
  input,              // malformed or inconsistent user input
  parse,
  domain,             // numeric domain error (e.g. gamma <= 1)
  contract,           // precondition of an internal stage violated
  budget,             // search budget exhausted
  infeasible,         // no schedule within the requested bound
  internal,
  io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vst
