#ifndef VEMCURVE_EXCEPTIONS_HPP
#define VEMCURVE_EXCEPTIONS_HPP

#include <stdexcept>
#include <string>

namespace vemcurve {

struct NoIntersection : std::runtime_error {
  explicit NoIntersection(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateCell : std::runtime_error {
  explicit DegenerateCell(const std::string& what) : std::runtime_error(what) {}
};

struct MeshInvalid : std::runtime_error {
  explicit MeshInvalid(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

struct SingularG : std::runtime_error {
  explicit SingularG(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMass : std::runtime_error {
  explicit SingularMass(const std::string& what) : std::runtime_error(what) {}
};

struct SolveFailure : std::runtime_error {
  explicit SolveFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vemcurve

#endif
