#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ivp {

class VarContext;
using VarCtx = std::shared_ptr<const VarContext>;

/// Immutable, interned ordered list of variable names. Polynomials over the
/// same name list share one context object, so context equality is a pointer
/// compare on the hot paths.
class VarContext {
public:
  static VarCtx make(std::vector<std::string> names);

  /// Union context: keeps `a`'s order, appends variables only present in `b`
  /// in their `b` order. Returns `a` itself when `b` adds nothing.
  static VarCtx unite(const VarCtx& a, const VarCtx& b);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// For each variable position in `from`, its position in `this`.
  /// Precondition: every `from` variable exists here.
  std::vector<std::size_t> embedding(const VarContext& from) const;

private:
  explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

}  // namespace ivp
