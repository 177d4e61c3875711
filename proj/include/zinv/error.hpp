#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zinv {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the root finder when the iteration budget runs out.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::vector<std::complex<double>> best_iterate,
                 double residual)
      : Error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}

  const std::vector<std::complex<double>>& best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<std::complex<double>> best_iterate_;
  double residual_;
};

/// Syntax or semantic error in an expression, located at a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::vector<std::string> expected = {})
      : Error(format(message, line, column, expected)),
        message_(message),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& message, int line, int column,
                            const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
      }
      out += ")";
    }
    return out;
  }

  std::string message_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace zinv
