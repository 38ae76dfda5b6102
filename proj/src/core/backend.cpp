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

#include "seg/backend.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "seg/error.hpp"
#include "seg/narrative.hpp"

namespace seg {
namespace {

using nlohmann::json;

struct ParsedLine {
  double timestamp = 0;
  std::string subject;
  std::string object;
  bool start = false;
};

bool Consume(std::string_view& s, std::string_view lit) {
  if (s.substr(0, lit.size()) != lit) return false;
  s.remove_prefix(lit.size());
  return true;
}

std::optional<ParsedLine> ParseNarrativeLine(std::string_view s) {
  ParsedLine out;
  if (!Consume(s, "[t=")) return std::nullopt;
  const size_t ts_end = s.find("s, frame ");
  if (ts_end == std::string_view::npos) return std::nullopt;
  try {
    out.timestamp = std::stod(std::string(s.substr(0, ts_end)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  s.remove_prefix(ts_end);
  const size_t close = s.find("] ");
  if (close == std::string_view::npos) return std::nullopt;
  s.remove_prefix(close + 2);
  const size_t sp = s.find(' ');
  if (sp == std::string_view::npos) return std::nullopt;
  out.subject = std::string(s.substr(0, sp));
  s.remove_prefix(sp);
  if (Consume(s, " STARTED interacting with ")) {
    out.start = true;
  } else if (!Consume(s, " ENDED interacting with ")) {
    return std::nullopt;
  }
  if (s.empty() || s.back() != '.') return std::nullopt;
  out.object = std::string(s.substr(0, s.size() - 1));
  return out;
}

std::vector<ParsedLine> ParseNarrative(std::string_view text) {
  std::vector<ParsedLine> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    if (auto line = ParseNarrativeLine(text.substr(pos, end - pos))) {
      lines.push_back(std::move(*line));
    }
    pos = end + 1;
  }
  return lines;
}

// Matches "<prefix>S<middle>O" where S and O are single tokens.
std::optional<std::pair<std::string, std::string>> MatchTemplate(
    std::string_view q, std::string_view prefix, std::string_view middle) {
  if (!Consume(q, prefix)) return std::nullopt;
  const size_t mid = q.find(middle);
  if (mid == std::string_view::npos) return std::nullopt;
  std::string_view s = q.substr(0, mid);
  std::string_view o = q.substr(mid + middle.size());
  auto single = [](std::string_view t) {
    return !t.empty() && t.find(' ') == std::string_view::npos;
  };
  if (!single(s) || !single(o)) return std::nullopt;
  return std::pair{std::string(s), std::string(o)};
}

bool IsPair(const ParsedLine& l, const std::string& s, const std::string& o) {
  return l.subject == s && l.object == o;
}

std::string AnswerFromLines(const std::vector<ParsedLine>& lines,
                            std::string_view question) {
  std::string q = NormalizeAnswer(question);
  while (!q.empty() && (q.back() == '?' || q.back() == ' ')) q.pop_back();
  const std::string not_present(kNotPresentAnswer);

  if (auto m = MatchTemplate(q, "when did ", " first start interacting with ")) {
    for (const ParsedLine& l : lines) {
      if (l.start && IsPair(l, m->first, m->second)) {
        return FormatInstantAnswer(l.timestamp);
      }
    }
    return not_present;
  }
  if (auto m = MatchTemplate(q, "when did ", " last stop interacting with ")) {
    for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
      if (!it->start && IsPair(*it, m->first, m->second)) {
        return FormatInstantAnswer(it->timestamp);
      }
    }
    return not_present;
  }
  if (q.size() > 9 && q.ends_with(" in total")) {
    std::string_view core(q);
    core.remove_suffix(9);
    if (auto m = MatchTemplate(core, "how long did ", " interact with ")) {
      double total = 0;
      bool any = false;
      std::optional<double> open_start;
      for (const ParsedLine& l : lines) {
        if (!IsPair(l, m->first, m->second)) continue;
        if (l.start) {
          open_start = l.timestamp;
        } else if (open_start) {
          total += l.timestamp - *open_start;
          open_start.reset();
          any = true;
        }
      }
      if (open_start) {
        total += lines.back().timestamp - *open_start;
        any = true;
      }
      return any ? FormatDurationAnswer(total) : not_present;
    }
  }
  if (auto m = MatchTemplate(
          q, "what did ",
          " start interacting with next after first stopping interacting with ")) {
    auto end = std::find_if(lines.begin(), lines.end(), [&](const ParsedLine& l) {
      return !l.start && IsPair(l, m->first, m->second);
    });
    if (end == lines.end()) return not_present;
    for (auto it = std::next(end); it != lines.end(); ++it) {
      if (!it->start) continue;
      if (it->subject == m->first) return it->object;
      if (it->object == m->first) return it->subject;
    }
    return "nothing";
  }
  return not_present;
}

// Splits "http://host:port/prefix" into the client origin and path prefix.
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const size_t scheme = url.find("://");
  const size_t path_start =
      url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

json PostJson(const HttpConfig& cfg, const std::string& endpoint,
              const json& body) {
  if (cfg.base_url.empty()) throw ArgumentError("HTTP backend needs a URL");
  auto [origin, prefix] = SplitUrl(cfg.base_url);
  const std::string path = prefix + endpoint;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (cfg.api_key && !cfg.api_key->empty()) {
    headers.emplace("authorization", "Bearer " + *cfg.api_key);
  }
  double backoff = cfg.initial_backoff_seconds;
  std::string last_error;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff = std::min(backoff * 2, cfg.max_backoff_seconds);
    }
    httplib::Client client(origin);
    if (!client.is_valid()) throw ArgumentError("unsupported backend URL " + origin);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(cfg.timeout_seconds));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "request to " + origin + path +
                   " failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw BackendError("authorization rejected by " + origin + path +
                         (cfg.api_key ? "" : " (SEG_API_KEY is not set)"));
    }
    if (res->status >= 500) {
      last_error = "backend " + origin + path + " returned HTTP " +
                   std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw BackendError("backend " + origin + path + " returned HTTP " +
                         std::to_string(res->status));
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error&) {
      throw BackendError("malformed backend response from " + origin + path +
                         ": not JSON");
    }
  }
  throw BackendError(last_error + " (after " +
                     std::to_string(cfg.max_retries + 1) + " attempts)");
}

}  // namespace

AnswerResponse MockAnswerer::Answer(const AnswerRequest& req) const {
  return {AnswerFromLines(ParseNarrative(req.context), req.question),
          std::nullopt, std::nullopt};
}

std::string NormalizeAnswer(std::string_view text) {
  std::string out;
  bool space = false;
  for (char raw : text) {
    auto c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

Verdict ExactJudge::Evaluate(std::string_view predicted,
                             std::string_view gold) const {
  return {NormalizeAnswer(predicted) == NormalizeAnswer(gold), std::nullopt};
}

Verdict SubstringJudge::Evaluate(std::string_view predicted,
                                 std::string_view gold) const {
  const std::string g = NormalizeAnswer(gold);
  const bool hit = !g.empty() && NormalizeAnswer(predicted).find(g) != std::string::npos;
  return {hit, std::nullopt};
}

HttpConfig HttpConfig::FromEnvironment(std::string base_url) {
  HttpConfig cfg;
  cfg.base_url = std::move(base_url);
  if (const char* key = std::getenv("SEG_API_KEY"); key != nullptr && *key) {
    cfg.api_key = key;
  }
  return cfg;
}

HttpAnswerer::HttpAnswerer(HttpConfig cfg) : cfg_(std::move(cfg)) {}

AnswerResponse HttpAnswerer::Answer(const AnswerRequest& req) const {
  if (req.question.empty()) throw ArgumentError("empty question");
  const auto t0 = std::chrono::steady_clock::now();
  json res = PostJson(cfg_, "/v1/answer",
                      {{"context", req.context}, {"question", req.question}});
  AnswerResponse out;
  if (!res.is_object() || !res.contains("answer") || !res["answer"].is_string()) {
    throw BackendError("malformed backend response: missing string 'answer'");
  }
  out.answer = res["answer"].get<std::string>();
  if (res.contains("input_tokens") && !res["input_tokens"].is_null()) {
    if (!res["input_tokens"].is_number_unsigned()) {
      throw BackendError("malformed backend response: bad 'input_tokens'");
    }
    out.reported_input_tokens = res["input_tokens"].get<size_t>();
  }
  out.latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

HttpJudge::HttpJudge(HttpConfig cfg) : cfg_(std::move(cfg)) {}

Verdict HttpJudge::Evaluate(std::string_view predicted,
                            std::string_view gold) const {
  json res = PostJson(cfg_, "/v1/judge",
                      {{"predicted", std::string(predicted)}, {"gold", std::string(gold)}});
  if (!res.is_object() || !res.contains("correct") || !res["correct"].is_boolean()) {
    throw BackendError("malformed judge response: missing boolean 'correct'");
  }
  Verdict v;
  v.correct = res["correct"].get<bool>();
  if (res.contains("rationale") && res["rationale"].is_string()) {
    v.rationale = res["rationale"].get<std::string>();
  }
  return v;
}

std::unique_ptr<Answerer> MakeAnswerer(std::string_view kind,
                                       const HttpConfig& http) {
  if (kind == "mock") return std::make_unique<MockAnswerer>();
  if (kind == "http") return std::make_unique<HttpAnswerer>(http);
  throw ArgumentError("unknown backend '" + std::string(kind) + "'");
}

std::unique_ptr<Judge> MakeJudge(std::string_view kind, const HttpConfig& http) {
  if (kind == "exact") return std::make_unique<ExactJudge>();
  if (kind == "substring") return std::make_unique<SubstringJudge>();
  if (kind == "http") return std::make_unique<HttpJudge>(http);
  throw ArgumentError("unknown judge '" + std::string(kind) + "'");
}

}  // namespace seg
