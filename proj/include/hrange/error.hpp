#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace hrange {

using cplx = std::complex<double>;

/// Raised for violated preconditions and failed analyses. Carries a witness
/// point when the failure is tied to a location in the plane.
class AnalysisError : public std::runtime_error {
 public:
  explicit AnalysisError(const std::string& what,
                         std::optional<cplx> witness = std::nullopt)
      : std::runtime_error(what), witness_(witness) {}

  const std::optional<cplx>& witness() const { return witness_; }

 private:
  std::optional<cplx> witness_;
};

class ParseError : public AnalysisError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : AnalysisError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hrange
