#ifndef QRABI_ERRORS_HPP
#define QRABI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qrabi {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (bad argument values).
class precondition_error : public error {
public:
  using error::error;
};

class invalid_dimension : public precondition_error {
public:
  using precondition_error::precondition_error;
};

/// The Fock cutoff is too small for the requested state or operator.
class truncation_too_small : public precondition_error {
public:
  using precondition_error::precondition_error;
};

/// r is at or below the coherent-limit threshold; the caller must use the
/// coherent amplitude instead of the squeezed closed form.
class coherent_limit : public precondition_error {
public:
  using precondition_error::precondition_error;
};

class undefined_ratio : public precondition_error {
public:
  using precondition_error::precondition_error;
};

class divergence_error : public precondition_error {
public:
  using precondition_error::precondition_error;
};

class range_error : public precondition_error {
public:
  using precondition_error::precondition_error;
};

/// Argument outside the domain where a closed form is real-valued.
class domain_error : public error {
public:
  using error::error;
};

class no_solution : public error {
public:
  using error::error;
};

/// A computation did not reach its accuracy contract.
class numerical_failure : public error {
public:
  using error::error;
};

}  // namespace qrabi

#endif
