#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace groomsim {

using UserId = std::uint32_t;

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
}  // namespace detail

// Interning table mapping user tokens to dense indices. Everything downstream
// keys on UserId; names only matter at the CSV boundary.
class IdTable {
 public:
  UserId intern(std::string_view name) {
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    const auto id = static_cast<UserId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::optional<UserId> find(std::string_view name) const {
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    return std::nullopt;
  }

  const std::string& name(UserId id) const {
    if (id >= names_.size()) throw std::out_of_range("IdTable: unknown id");
    return names_[id];
  }

  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, UserId, detail::StringHash, std::equal_to<>>
      index_;
};

}  // namespace groomsim
