#pragma once

#include <stdexcept>
#include <string>

namespace edgecast {

/// Base class for all recoverable edgecast errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied an argument outside its documented domain.
class invalid_input_error : public error {
 public:
  using error::error;
};

/// A topology lookup failed (unknown ApId, empty AP set, ...).
class invalid_topology_error : public error {
 public:
  using error::error;
};

/// A file could not be parsed; message names the offending line/field.
class parse_error : public error {
 public:
  using error::error;
};

/// An operation required compute capacity where none exists.
class no_capacity_error : public error {
 public:
  using error::error;
};

/// Analytic queueing requested for an unstable regime (lambda >= c*mu).
class unstable_regime_error : public error {
 public:
  using error::error;
};

/// A metric is undefined for the given inputs (e.g. zero arrivals).
class undefined_metric_error : public error {
 public:
  using error::error;
};

/// An exact-oracle instance exceeds the supported desk scale.
class instance_too_large_error : public error {
 public:
  using error::error;
};

}  // namespace edgecast
