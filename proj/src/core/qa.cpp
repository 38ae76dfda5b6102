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

#include "seg/qa.hpp"

#include "json.hpp"
#include "seg/error.hpp"

namespace seg {

const char* QaCategoryName(QaCategory c) {
  switch (c) {
    case QaCategory::kOrdering:
      return "ordering";
    case QaCategory::kInteraction:
      return "interaction";
    case QaCategory::kDuration:
      return "duration";
    case QaCategory::kCausal:
      return "causal";
  }
  return "interaction";
}

QaCategory ParseQaCategory(std::string_view name) {
  for (QaCategory c : kAllCategories) {
    if (name == QaCategoryName(c)) return c;
  }
  throw DataError("unknown QA category '" + std::string(name) + "'");
}

std::vector<QaItem> ParseQaSet(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("QA set is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw DataError("$: QA set must be a JSON array");
  std::vector<QaItem> items;
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& r = doc[i];
    const std::string path = "[" + std::to_string(i) + "]";
    for (const char* key : {"question", "answer", "category"}) {
      if (!r.is_object() || !r.contains(key) || !r[key].is_string()) {
        throw DataError(path + "." + key + ": expected a string");
      }
    }
    QaItem item{r["question"].get<std::string>(), r["answer"].get<std::string>(),
                ParseQaCategory(r["category"].get<std::string>())};
    if (item.question.empty()) throw DataError(path + ".question: empty");
    items.push_back(std::move(item));
  }
  return items;
}

std::string RenderQaSet(const std::vector<QaItem>& items) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const QaItem& q : items) {
    doc.push_back({{"question", q.question},
                   {"answer", q.answer},
                   {"category", QaCategoryName(q.category)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace seg
