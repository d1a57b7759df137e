#ifndef QRES_ERRORS_HPP
#define QRES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qres {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke a documented precondition (shape mismatch, bad argument,
// non-Hermitian input where Hermitian is required, ...).
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(what) {}
};

// An iterative algorithm failed to converge within its sweep cap.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// Kraus extraction was asked for on a map whose dynamical matrix has a
// negative eigenvalue beyond tolerance.  Carries the witness.
class NotCompletelyPositive : public Error {
 public:
  NotCompletelyPositive(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// A normalized channel state was requested for a map that does not
// preserve trace.  Carries the trace actually found.
class NotTracePreserving : public Error {
 public:
  NotTracePreserving(const std::string& what, double trace)
      : Error(what), trace_(trace) {}
  double trace() const { return trace_; }

 private:
  double trace_;
};

// Malformed input file or channel description.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace qres

#endif  // QRES_ERRORS_HPP
