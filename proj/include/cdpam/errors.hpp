#pragma once

#include <stdexcept>
#include <string>

namespace cdpam {

/// Precondition violation on a user-supplied value.
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An attachment weight came out nonpositive. Carries the offending node;
/// usually means theta >= beta or an exotic seed graph.
struct degenerate_weights : std::runtime_error {
  int node;
  double weight;
  degenerate_weights(int node_, double weight_)
      : std::runtime_error("nonpositive attachment weight " +
                           std::to_string(weight_) + " at node " +
                           std::to_string(node_)),
        node(node_),
        weight(weight_) {}
};

/// Assortativity has a zero denominator (degree-regular graph).
struct undefined_assortativity : std::runtime_error {
  undefined_assortativity()
      : std::runtime_error("assortativity undefined: graph is degree-regular") {}
};

/// Iterative eigensolver ran out of its iteration budget. Carries the best
/// bracket reached so far.
struct no_convergence : std::runtime_error {
  double estimate;
  double residual;
  no_convergence(const std::string& what_, double estimate_, double residual_)
      : std::runtime_error(what_ + " (best estimate " +
                           std::to_string(estimate_) + ", residual bound " +
                           std::to_string(residual_) + ")"),
        estimate(estimate_),
        residual(residual_) {}
};

/// Sample is too small or too degenerate for a power-law fit.
struct unfittable_data : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A closed-form expression left its domain (e.g. K*H_n <= 1).
struct degenerate_parameters : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number.
struct parse_error : std::runtime_error {
  long line;
  parse_error(long line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

}  // namespace cdpam
