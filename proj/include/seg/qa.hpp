// Copyright 2026 The SEG Authors
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

#ifndef SEG_QA_HPP_
#define SEG_QA_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace seg {

enum class QaCategory { kOrdering, kInteraction, kDuration, kCausal };

inline constexpr QaCategory kAllCategories[] = {
    QaCategory::kOrdering, QaCategory::kInteraction, QaCategory::kDuration,
    QaCategory::kCausal};

// "ordering" | "interaction" | "duration" | "causal".
const char* QaCategoryName(QaCategory c);
QaCategory ParseQaCategory(std::string_view name);

struct QaItem {
  std::string question;
  std::string answer;
  QaCategory category = QaCategory::kInteraction;

  bool operator==(const QaItem&) const = default;
};

// [{"question", "answer", "category"}].
std::vector<QaItem> ParseQaSet(std::string_view json);
std::string RenderQaSet(const std::vector<QaItem>& items);

}  // namespace seg

#endif  // SEG_QA_HPP_
