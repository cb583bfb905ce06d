#include "mlsspf/report.hpp"

#include <algorithm>

namespace mlsspf {

void Report::add(std::string_view check, bool ok, std::string detail) {
  auto it = std::find_if(items_.begin(), items_.end(), [&](const Item& i) { return i.check == check; });
  if (it == items_.end()) {
    items_.push_back({std::string(check), ok, ok ? std::string{} : std::move(detail)});
    return;
  }
  if (!ok && it->ok) {
    it->ok = false;
    it->detail = std::move(detail);
  }
}

void Report::merge(const Report& other, std::string_view prefix) {
  for (const auto& i : other.items_) add(std::string(prefix) + i.check, i.ok, i.detail);
}

bool Report::ok() const {
  return std::all_of(items_.begin(), items_.end(), [](const Item& i) { return i.ok; });
}

const Report::Item* Report::find(std::string_view check) const {
  for (const auto& i : items_)
    if (i.check == check) return &i;
  return nullptr;
}

bool Report::ok(std::string_view check) const {
  const Item* i = find(check);
  return i && i->ok;
}

bool Report::has(std::string_view check) const { return find(check) != nullptr; }

std::string Report::first_failure() const {
  for (const auto& i : items_)
    if (!i.ok) return i.check + ": " + i.detail;
  return {};
}

}  // namespace mlsspf
