// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "portsim/errors.hpp"

namespace portsim {

struct Subsystem {
  std::string label;
  int dim = 2;
};

/// Ordered list of labeled subsystems with local dimensions.
///
/// Label order is authoritative: the amplitude index of a product basis state
/// is the mixed-radix number whose FIRST subsystem digit is most significant.
class SystemLayout {
public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  /// Convenience: n subsystems "<prefix>0".."<prefix>{n-1}", all of dimension d.
  static SystemLayout uniform(const std::string& prefix, int n, int d);

  int count() const { return static_cast<int>(subs_.size()); }
  const Subsystem& at(int i) const { return subs_[static_cast<size_t>(i)]; }
  std::int64_t total_dim() const { return total_; }
  std::int64_t stride(int i) const { return strides_[static_cast<size_t>(i)]; }

  bool has(const std::string& label) const { return pos_.count(label) != 0; }
  int position(const std::string& label) const;
  int dim_of(const std::string& label) const { return subs_[static_cast<size_t>(position(label))].dim; }

  std::vector<std::string> labels() const;

  /// Sub-layout of `keep`, ordered as in this layout.
  SystemLayout sub(const std::vector<std::string>& keep) const;

  void decode(std::int64_t index, int* digits) const;
  std::int64_t encode(const int* digits) const;

  bool operator==(const SystemLayout& other) const;
  bool operator!=(const SystemLayout& other) const { return !(*this == other); }

private:
  std::vector<Subsystem> subs_;
  std::vector<std::int64_t> strides_;
  std::unordered_map<std::string, int> pos_;
  std::int64_t total_ = 1;
};

}  // namespace portsim
