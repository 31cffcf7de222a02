#pragma once

#include <stdexcept>
#include <string>

namespace lfp {

// Error taxonomy shared by the C++ core and the C API (see lfp.h for the
// numeric codes these map to).
enum class ErrorKind {
  Domain,     // bad argument / precondition violated
  Precision,  // series arithmetic could not resolve a value at working precision
  Invariant,  // an internal consistency check failed
  NotFound,   // a bounded search came up empty
  Usage,      // malformed input (CLI / JSON)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error domain_error(const std::string& what) { return Error(ErrorKind::Domain, what); }
inline Error precision_error(const std::string& what) { return Error(ErrorKind::Precision, what); }
inline Error invariant_error(const std::string& what) { return Error(ErrorKind::Invariant, what); }
inline Error not_found_error(const std::string& what) { return Error(ErrorKind::NotFound, what); }
inline Error usage_error(const std::string& what) { return Error(ErrorKind::Usage, what); }

}  // namespace lfp
