/*
 * Copyright (C) 2026 The Situ Talker Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SITU_TEMPLATES_H_
#define SITU_TEMPLATES_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace situ::dialogue {

struct DisplayPattern {
  std::string title;
  std::vector<std::string> items;
};

// Spoken text plus an optional display, both with {gap} slots. A template
// without a display leaves the current screen as it is.
struct ResponseTemplate {
  std::string name;
  std::string spoken;
  std::optional<DisplayPattern> display;
};

class TemplateSet {
 public:
  void Add(ResponseTemplate tmpl) { by_name_[tmpl.name] = std::move(tmpl); }
  const ResponseTemplate* Find(std::string_view name) const;
  size_t size() const { return by_name_.size(); }
  // Templates of `overrides` replace same-named ones here.
  TemplateSet MergedWith(const TemplateSet& overrides) const;

 private:
  std::map<std::string, ResponseTemplate, std::less<>> by_name_;
};

// One template per line:
//   name: spoken "text {gap}" display "title" ["item", "{list.gap}"]
// The display part is optional. '#' lines are comments. Throws LoadError.
TemplateSet ParseTemplates(std::string_view set_name, std::string_view text);

}  // namespace situ::dialogue

#endif  // SITU_TEMPLATES_H_
