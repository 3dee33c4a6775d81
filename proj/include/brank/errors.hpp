#pragma once

// Error taxonomy shared by library and CLI. Every error carries a stable
// machine-readable code; the CLI maps ResourceBudget to exit 2 and every other
// domain error to exit 1.

#include <stdexcept>
#include <string>

namespace brank {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w) : Error("dimension_mismatch", w) {}
};
struct DegenerateForm : Error {
  explicit DegenerateForm(const std::string& w) : Error("degenerate_form", w) {}
};
struct ResourceBudget : Error {
  explicit ResourceBudget(const std::string& w) : Error("resource_budget", w) {}
};
struct NotOneGeneric : Error {
  explicit NotOneGeneric(const std::string& w) : Error("not_one_generic", w) {}
};
struct ZeroTensor : Error {
  explicit ZeroTensor(const std::string& w) : Error("zero_tensor", w) {}
};
struct TemplateMismatch : Error {
  explicit TemplateMismatch(const std::string& w) : Error("template_mismatch", w) {}
};
struct UnsupportedDegree : Error {
  explicit UnsupportedDegree(const std::string& w) : Error("unsupported_degree", w) {}
};
struct NotConvergent : Error {
  explicit NotConvergent(const std::string& w) : Error("not_convergent", w) {}
};
struct MissingDegree : Error {
  explicit MissingDegree(const std::string& w) : Error("missing_degree", w) {}
};
struct DimensionTooSmall : Error {
  explicit DimensionTooSmall(const std::string& w) : Error("dimension_too_small", w) {}
};
struct BadInput : Error {
  explicit BadInput(const std::string& w) : Error("bad_input", w) {}
};

}  // namespace brank
