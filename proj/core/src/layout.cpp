// SPDX-License-Identifier: Apache-2.0
#include "portsim/layout.hpp"

#include <algorithm>

namespace portsim {

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems) : subs_(std::move(subsystems)) {
  strides_.resize(subs_.size());
  total_ = 1;
  for (size_t i = 0; i < subs_.size(); ++i) {
    if (subs_[i].dim < 2) {
      throw DimensionError("subsystem '" + subs_[i].label + "' has dim " +
                           std::to_string(subs_[i].dim) + " < 2");
    }
    if (!pos_.emplace(subs_[i].label, static_cast<int>(i)).second) {
      throw LayoutError("duplicate subsystem label '" + subs_[i].label + "'");
    }
  }
  for (size_t i = subs_.size(); i-- > 0;) {
    strides_[i] = total_;
    total_ *= subs_[i].dim;
  }
}

SystemLayout SystemLayout::uniform(const std::string& prefix, int n, int d) {
  std::vector<Subsystem> subs;
  subs.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) subs.push_back({prefix + std::to_string(i), d});
  return SystemLayout(std::move(subs));
}

int SystemLayout::position(const std::string& label) const {
  auto it = pos_.find(label);
  if (it == pos_.end()) throw LayoutError("unknown subsystem label '" + label + "'");
  return it->second;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(subs_.size());
  for (const auto& s : subs_) out.push_back(s.label);
  return out;
}

SystemLayout SystemLayout::sub(const std::vector<std::string>& keep) const {
  std::vector<Subsystem> subs;
  for (const auto& s : subs_) {
    if (std::find(keep.begin(), keep.end(), s.label) != keep.end()) subs.push_back(s);
  }
  if (subs.size() != keep.size()) {
    for (const auto& k : keep) position(k);  // raises on the offending label
  }
  return SystemLayout(std::move(subs));
}

void SystemLayout::decode(std::int64_t index, int* digits) const {
  for (size_t i = 0; i < subs_.size(); ++i) {
    digits[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
}

std::int64_t SystemLayout::encode(const int* digits) const {
  std::int64_t idx = 0;
  for (size_t i = 0; i < subs_.size(); ++i) idx += digits[i] * strides_[i];
  return idx;
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (subs_.size() != other.subs_.size()) return false;
  for (size_t i = 0; i < subs_.size(); ++i) {
    if (subs_[i].label != other.subs_[i].label || subs_[i].dim != other.subs_[i].dim) return false;
  }
  return true;
}

}  // namespace portsim
