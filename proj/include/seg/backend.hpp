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

// Answering and judging backends.
//
// HTTP backends speak a small JSON protocol:
//   POST <url>/v1/answer  {"context", "question"}  -> {"answer", "input_tokens"?}
//   POST <url>/v1/judge   {"predicted", "gold"}    -> {"correct", "rationale"?}
// with `authorization: Bearer $SEG_API_KEY` when that variable is set.

#ifndef SEG_BACKEND_HPP_
#define SEG_BACKEND_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace seg {

struct AnswerRequest {
  std::string context;
  std::string question;
};

struct AnswerResponse {
  std::string answer;
  std::optional<size_t> reported_input_tokens;
  std::optional<double> latency;  // seconds
};

struct Verdict {
  bool correct = false;
  std::optional<std::string> rationale;
};

// Implementations must be safe for concurrent calls.
class Answerer {
 public:
  virtual ~Answerer() = default;
  virtual AnswerResponse Answer(const AnswerRequest& req) const = 0;
  virtual std::string Name() const = 0;
};

class Judge {
 public:
  virtual ~Judge() = default;
  virtual Verdict Evaluate(std::string_view predicted,
                           std::string_view gold) const = 0;
  virtual std::string Name() const = 0;
};

inline constexpr std::string_view kNotPresentAnswer = "not present in clip";

// Deterministic offline answerer that reads the narrative directly. It
// understands four question forms over entity ids S and O:
//   when did S first start interacting with O?
//   when did S last stop interacting with O?
//   how long did S interact with O in total?
//   what did S start interacting with next after first stopping interacting with O?
// Anything it cannot ground in the context is answered "not present in clip".
class MockAnswerer final : public Answerer {
 public:
  AnswerResponse Answer(const AnswerRequest& req) const override;
  std::string Name() const override { return "mock"; }
};

// Lowercase, trim and collapse internal whitespace.
std::string NormalizeAnswer(std::string_view text);

class ExactJudge final : public Judge {
 public:
  Verdict Evaluate(std::string_view predicted,
                   std::string_view gold) const override;
  std::string Name() const override { return "exact"; }
};

// Correct when the normalized gold answer occurs inside the prediction.
class SubstringJudge final : public Judge {
 public:
  Verdict Evaluate(std::string_view predicted,
                   std::string_view gold) const override;
  std::string Name() const override { return "substring"; }
};

struct HttpConfig {
  std::string base_url;         // e.g. http://127.0.0.1:8080
  double timeout_seconds = 60;  // connect, read and write
  int max_retries = 3;          // after the first attempt
  double initial_backoff_seconds = 0.25;
  double max_backoff_seconds = 8;
  std::optional<std::string> api_key;  // defaults to $SEG_API_KEY

  static HttpConfig FromEnvironment(std::string base_url);
};

class HttpAnswerer final : public Answerer {
 public:
  explicit HttpAnswerer(HttpConfig cfg);
  AnswerResponse Answer(const AnswerRequest& req) const override;
  std::string Name() const override { return "http"; }

 private:
  HttpConfig cfg_;
};

class HttpJudge final : public Judge {
 public:
  explicit HttpJudge(HttpConfig cfg);
  Verdict Evaluate(std::string_view predicted,
                   std::string_view gold) const override;
  std::string Name() const override { return "http"; }

 private:
  HttpConfig cfg_;
};

// "mock" | "http".
std::unique_ptr<Answerer> MakeAnswerer(std::string_view kind,
                                       const HttpConfig& http);
// "exact" | "substring" | "http".
std::unique_ptr<Judge> MakeJudge(std::string_view kind, const HttpConfig& http);

}  // namespace seg

#endif  // SEG_BACKEND_HPP_
