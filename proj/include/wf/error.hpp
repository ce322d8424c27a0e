// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace wf {

// Error categories mirror the failure modes of the public operations so
// callers (and tests) can dispatch on kind instead of parsing messages.
enum class ErrorKind {
  invalid_argument,       // bad parameter value (order, size, domain)
  geometry,               // cone containment / degenerate cone geometry
  synthesis,              // catalog entry outside the grid extent
  boundary,               // window overruns the grid at a center
  schedule,               // radius schedule invalid for the lattice
  data,                   // non-finite samples
  io,                     // file format, size mismatch, unreadable path
  unsupported_dimension,  // dim outside {1,2}
  oracle_unavailable,     // no analytic oracle for (entry, backend)
  config,                 // bad run configuration
  degenerate_input,       // coincident points and similar degeneracies
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace wf
