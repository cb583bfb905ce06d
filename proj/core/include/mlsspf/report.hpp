#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mlsspf {

// Itemized pass/fail record. Repeated checks with the same name fold into one
// item that keeps the first failing detail.
class Report {
 public:
  struct Item {
    std::string check;
    bool ok = true;
    std::string detail;
    bool operator==(const Item&) const = default;
  };

  void add(std::string_view check, bool ok, std::string detail = {});
  void fail(std::string_view check, std::string detail) { add(check, false, std::move(detail)); }
  void pass(std::string_view check) { add(check, true); }
  // Copies items of `other` with `prefix` prepended to each check name.
  void merge(const Report& other, std::string_view prefix = {});

  bool ok() const;
  bool ok(std::string_view check) const;
  bool has(std::string_view check) const;
  const std::vector<Item>& items() const& { return items_; }
  const std::vector<Item>& items() const&& = delete;
  const Item* find(std::string_view check) const;

  // First failing item's "check: detail", or empty.
  std::string first_failure() const;

  bool operator==(const Report&) const = default;

 private:
  std::vector<Item> items_;
};

}  // namespace mlsspf
