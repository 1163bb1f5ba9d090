#pragma once

#include <stdexcept>
#include <string>

namespace fvslab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An enumeration-based routine was asked to go beyond its configured size cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// Input violates a documented precondition (bad vertex id, not a pseudoforest, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// A self-check failed; always indicates a bug or a genuine counterexample.
class VerificationError : public Error {
public:
  using Error::Error;
};

/// Enumeration caps shared by every exponential routine.
struct Caps {
  int density_vertices = 18;      // weak/strong density enumeration
  int cycle_vertices = 12;        // enumerate_cycles
  long long max_cycles = 5'000'000;
  int brute_force_vertices = 20;  // FVS / PFDS subset search
  int mc2pt_brute_vertices = 12;
  int supermodularity_vertices = 12;
  int tight_set_vertices = 10;
  int cutting_plane_iterations = 10000;

  /// Defaults overridden by FVS_LAB_CAPS, e.g. `density=14,cycles=10`.
  static Caps from_env();
  /// Parses the `key=value,...` override syntax on top of `base`.
  static Caps parse(const std::string& spec, Caps base);
  static Caps parse(const std::string& spec);
};

}  // namespace fvslab
