#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swe {

/// Iterative solver did not converge; carries the last iterate.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double last_iterate)
      : std::runtime_error(what), last_iterate_(last_iterate) {}
  double last_iterate() const { return last_iterate_; }

 private:
  double last_iterate_;
};

/// A cell depth dropped below the round-off clamp during an update.
class NegativeDepthError : public std::runtime_error {
 public:
  NegativeDepthError(std::size_t cell, double time, double depth)
      : std::runtime_error("negative depth " + std::to_string(depth) + " in cell " + std::to_string(cell) +
                           " at t=" + std::to_string(time)),
        cell_(cell),
        time_(time) {}
  std::size_t cell() const { return cell_; }
  double time() const { return time_; }

 private:
  std::size_t cell_;
  double time_;
};

}  // namespace swe
