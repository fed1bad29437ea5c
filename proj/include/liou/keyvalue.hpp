// Copyright 2026 The liou Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIOU_KEYVALUE_HPP
#define LIOU_KEYVALUE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace liou {

// Line-oriented `key=value` document. Blank lines and lines starting with '#'
// are ignored; whitespace around keys and values is trimmed. Duplicate keys
// are a ValidationError.
class KeyValueDoc {
 public:
  static KeyValueDoc parse(std::string_view text);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::string& require(const std::string& key) const;
  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }

  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::string serialize() const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace liou

#endif  // LIOU_KEYVALUE_HPP
