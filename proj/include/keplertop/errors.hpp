#ifndef KEPLERTOP_ERRORS_HPP
#define KEPLERTOP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace keplertop {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// One or more model parameters violate their positivity invariant.
class ValidationError : public Error {
  public:
    explicit ValidationError(std::vector<std::string> fields)
        : Error("non-positive parameter(s): " + join(fields)), fields_(std::move(fields))
    {
    }

    const std::vector<std::string>& fields() const { return fields_; }

  private:
    static std::string join(const std::vector<std::string>& fields)
    {
        std::string s;
        for (const auto& f : fields) {
            if (!s.empty()) s += ", ";
            s += f;
        }
        return s;
    }

    std::vector<std::string> fields_;
};

/// Argument outside the open domain of a manifold-dependent function.
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Denominator Pochhammer symbol vanishes within the requested terms.
class PochhammerPole : public Error {
  public:
    PochhammerPole(double c, int term_index)
        : Error("pochhammer pole: c = " + std::to_string(c) + " vanishes at term " +
                std::to_string(term_index)),
          c_(c), term_index_(term_index)
    {
    }

    double c() const { return c_; }
    int term_index() const { return term_index_; }

  private:
    double c_;
    int term_index_;
};

class GridTooSmall : public Error {
  public:
    explicit GridTooSmall(const std::string& msg) : Error(msg) {}
};

class BadGridSpec : public Error {
  public:
    explicit BadGridSpec(const std::string& msg) : Error(msg) {}
};

class CountOutOfRange : public Error {
  public:
    explicit CountOutOfRange(const std::string& msg) : Error(msg) {}
};

class LengthMismatch : public Error {
  public:
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

/// Inverse iteration failed to reach its residual target.
class NoConvergence : public Error {
  public:
    explicit NoConvergence(int iterations)
        : Error("no convergence after " + std::to_string(iterations) + " iterations"),
          iterations_(iterations)
    {
    }

    int iterations() const { return iterations_; }

  private:
    int iterations_;
};

} // namespace keplertop

#endif
