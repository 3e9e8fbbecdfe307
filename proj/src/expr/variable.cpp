#include "jetinv/expr/variable.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "jetinv/expr/polynomial.hpp"

namespace jetinv {

JetIndex JetIndex::raised(int base_axis) const {
  JetIndex r = *this;
  ++r.counts.at(base_axis);
  return r;
}

std::string JetIndex::name() const {
  std::string n(1, fiber);
  if (order() == 0) return n;
  n += "_";
  for (int axis = 0; axis < 3; ++axis) n.append(counts[axis], kBaseNames[axis][0]);
  return n;
}

std::optional<JetIndex> parse_jet_name(std::string_view name) {
  if (name.empty() || (name[0] != 'f' && name[0] != 'g')) return std::nullopt;
  JetIndex idx;
  idx.fiber = name[0];
  if (name.size() == 1) return idx;
  if (name.size() < 3 || name[1] != '_') return std::nullopt;
  for (char c : name.substr(2)) {
    switch (c) {
      case 'x': ++idx.counts[0]; break;
      case 'y': ++idx.counts[1]; break;
      case 'p': ++idx.counts[2]; break;
      default: return std::nullopt;
    }
  }
  return idx;
}

namespace {

constexpr std::size_t kBlockSize = 1024;
constexpr std::size_t kMaxBlocks = 4096;

using Block = std::array<VariableInfo, kBlockSize>;

VariableInfo classify(std::string_view name) {
  VariableInfo info;
  info.name = std::string(name);
  for (int axis = 0; axis < 3; ++axis) {
    if (name == kBaseNames[axis]) {
      info.kind = VarKind::base;
      info.base_axis = axis;
      return info;
    }
  }
  if (auto jet = parse_jet_name(name)) {
    info.kind = VarKind::jet;
    info.jet = jet;
    info.name = jet->name();
    return info;
  }
  if (std::find(kSl3ParameterNames.begin(), kSl3ParameterNames.end(), name) !=
      kSl3ParameterNames.end()) {
    info.kind = VarKind::parameter;
  }
  return info;
}

}  // namespace

// Infos live in fixed-size blocks that are never moved, so `info()` can read
// without locking once an id has been handed out.
struct VariableTable::Impl {
  std::array<std::atomic<Block*>, kMaxBlocks> blocks{};
  std::atomic<std::size_t> count{0};
  mutable std::shared_mutex mutex;
  std::unordered_map<std::string, VarId> by_name;

  ~Impl() {
    for (auto& b : blocks) delete b.load();
  }

  VarId push(VariableInfo info) {
    std::size_t id = count.load();
    std::size_t block = id / kBlockSize;
    if (block >= kMaxBlocks) throw std::length_error("variable table exhausted");
    if (!blocks[block].load()) blocks[block].store(new Block());
    (*blocks[block].load())[id % kBlockSize] = std::move(info);
    count.store(id + 1);
    return static_cast<VarId>(id);
  }
};

VariableTable::VariableTable() : impl_(std::make_unique<Impl>()) {
  for (auto n : kBaseNames) intern(n);
  for (auto n : kSl3ParameterNames) intern(n);
}

VariableTable& VariableTable::instance() {
  static VariableTable table;
  return table;
}

VarId VariableTable::intern(std::string_view name) {
  std::string key(name);
  if (auto jet = parse_jet_name(name)) key = jet->name();
  {
    std::shared_lock lock(impl_->mutex);
    auto it = impl_->by_name.find(key);
    if (it != impl_->by_name.end()) return it->second;
  }
  std::unique_lock lock(impl_->mutex);
  auto it = impl_->by_name.find(key);
  if (it != impl_->by_name.end()) return it->second;
  VarId id = impl_->push(classify(key));
  impl_->by_name.emplace(key, id);
  return id;
}

std::optional<VarId> VariableTable::find(std::string_view name) const {
  std::string key(name);
  if (auto jet = parse_jet_name(name)) key = jet->name();
  std::shared_lock lock(impl_->mutex);
  auto it = impl_->by_name.find(key);
  if (it == impl_->by_name.end()) return std::nullopt;
  return it->second;
}

VarId VariableTable::intern_radical(const Polynomial& base, std::uint32_t root, bool absolute) {
  std::string key = std::string(absolute ? "abs" : "pow") + "[" + base.to_string() + "]^(1/" +
                    std::to_string(root) + ")";
  {
    std::shared_lock lock(impl_->mutex);
    auto it = impl_->by_name.find(key);
    if (it != impl_->by_name.end()) return it->second;
  }
  std::unique_lock lock(impl_->mutex);
  auto it = impl_->by_name.find(key);
  if (it != impl_->by_name.end()) return it->second;
  VariableInfo info;
  info.name = key;
  info.kind = VarKind::radical;
  info.radical = RadicalInfo{std::make_shared<const Polynomial>(base), root, absolute};
  VarId id = impl_->push(std::move(info));
  impl_->by_name.emplace(key, id);
  return id;
}

const VariableInfo& VariableTable::info(VarId id) const {
  if (id >= impl_->count.load()) throw std::out_of_range("unknown variable id");
  return (*impl_->blocks[id / kBlockSize].load())[id % kBlockSize];
}

std::size_t VariableTable::size() const { return impl_->count.load(); }

VarId jet_var(const JetIndex& idx) { return var(idx.name()); }

VarId base_var(int axis) { return var(kBaseNames.at(axis)); }

VariableSpace::VariableSpace(std::vector<std::string> names) {
  for (const auto& n : names) declare(n);
}

void VariableSpace::declare(std::string_view name) {
  VarId id = var(name);
  if (!contains(id)) ids_.push_back(id);
}

bool VariableSpace::contains(VarId id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

bool VariableSpace::contains(std::string_view name) const {
  auto id = VariableTable::instance().find(name);
  return id && contains(*id);
}

VariableSpace VariableSpace::jets(std::string_view fibers, int order) {
  VariableSpace space;
  for (auto n : kBaseNames) space.declare(n);
  for (char fiber : fibers) {
    for (int k = 0; k <= order; ++k) {
      for (int i = 0; i <= k; ++i) {
        for (int j = 0; i + j <= k; ++j) {
          JetIndex idx{fiber, {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                               static_cast<std::uint8_t>(k - i - j)}};
          space.declare(idx.name());
        }
      }
    }
  }
  return space;
}

}  // namespace jetinv
