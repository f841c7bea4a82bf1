#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rjcf {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: shape mismatch, parse failure, invalid structure.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Iterative method hit its iteration cap.
///
/// For the Schur engine `window_begin`/`window_end` delimit the active
/// (undeflated) submatrix when the engine gave up. For the singular value
/// iteration `partial` holds the column norms reached so far.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::size_t window_begin, std::size_t window_end,
                   std::size_t iterations, std::vector<double> partial = {})
      : NumericalError(what),
        window_begin_(window_begin),
        window_end_(window_end),
        iterations_(iterations),
        partial_(std::move(partial)) {}

  std::size_t window_begin() const noexcept { return window_begin_; }
  std::size_t window_end() const noexcept { return window_end_; }
  std::size_t iterations() const noexcept { return iterations_; }
  const std::vector<double>& partial() const noexcept { return partial_; }

 private:
  std::size_t window_begin_;
  std::size_t window_end_;
  std::size_t iterations_;
  std::vector<double> partial_;
};

/// Numerical rank could not be separated from noise by a clear singular value gap.
class RankError : public NumericalError {
 public:
  RankError(const std::string& what, double accepted, double rejected)
      : NumericalError(what), accepted_(accepted), rejected_(rejected) {}

  double smallest_accepted() const noexcept { return accepted_; }
  double largest_rejected() const noexcept { return rejected_; }

 private:
  double accepted_;
  double rejected_;
};

}  // namespace rjcf
