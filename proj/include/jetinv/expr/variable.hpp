#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jetinv {

class Polynomial;

using VarId = std::uint32_t;

enum class VarKind { base, jet, parameter, radical, symbol };

/// Jet coordinate u_sigma: fiber function name plus derivative counts along (x, y, p).
struct JetIndex {
  char fiber = 'f';
  std::array<std::uint8_t, 3> counts{0, 0, 0};

  int order() const { return counts[0] + counts[1] + counts[2]; }
  JetIndex raised(int base_axis) const;
  std::string name() const;
  friend bool operator==(const JetIndex&, const JetIndex&) = default;
};

/// t = |B|^(1/n) (absolute) or B^(1/n) (strict, B > 0 assumed).
/// Absolute radicals satisfy t^(2n) = B^2, strict ones t^n = B.
struct RadicalInfo {
  std::shared_ptr<const Polynomial> base;
  std::uint32_t root = 2;
  bool absolute = true;

  std::uint32_t period() const { return absolute ? 2 * root : root; }
};

struct VariableInfo {
  std::string name;
  VarKind kind = VarKind::symbol;
  int base_axis = -1;  // 0,1,2 for x,y,p
  std::optional<JetIndex> jet;
  std::optional<RadicalInfo> radical;
};

/// Process-wide intern table. Reads are lock-free after publication; inserts are serialized.
class VariableTable {
 public:
  static VariableTable& instance();

  VarId intern(std::string_view name);
  std::optional<VarId> find(std::string_view name) const;
  VarId intern_radical(const Polynomial& base, std::uint32_t root, bool absolute);

  const VariableInfo& info(VarId id) const;
  std::size_t size() const;

 private:
  VariableTable();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline const VariableInfo& var_info(VarId id) { return VariableTable::instance().info(id); }
inline VarId var(std::string_view name) { return VariableTable::instance().intern(name); }

/// Parses "f", "g_xp", "f_yx" (normalized to f_xy) into a jet index.
std::optional<JetIndex> parse_jet_name(std::string_view name);

VarId jet_var(const JetIndex& idx);
VarId base_var(int axis);  // 0 -> x, 1 -> y, 2 -> p

inline constexpr std::array<std::string_view, 3> kBaseNames{"x", "y", "p"};
inline constexpr std::array<std::string_view, 8> kSl3ParameterNames{"a0",  "b0",  "a11", "a12",
                                                                  "a21", "a22", "c1",  "c2"};

/// Ordered list of declared variable names with their roles.
class VariableSpace {
 public:
  VariableSpace() = default;
  explicit VariableSpace(std::vector<std::string> names);

  void declare(std::string_view name);
  bool contains(VarId id) const;
  bool contains(std::string_view name) const;
  const std::vector<VarId>& ids() const { return ids_; }

  /// Base coordinates x, y, p plus every jet coordinate of the fibers up to `order`.
  static VariableSpace jets(std::string_view fibers, int order);

 private:
  std::vector<VarId> ids_;
};

}  // namespace jetinv
