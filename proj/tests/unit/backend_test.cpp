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

#include <atomic>
#include <functional>
#include <thread>

#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "seg/error.hpp"
#include "seg/narrative.hpp"
#include "support/oracles.hpp"

namespace seg {
namespace {

using testing::Ev;

constexpr auto S = EventKind::kStart;
constexpr auto E = EventKind::kEnd;

std::string Context() {
  return Verbalize({Ev(S, "person-1", "cup-3", 10, 1.0, 0), Ev(E, "person-1", "cup-3", 20, 2.5, 1),
                    Ev(S, "person-1", "bowl-5", 25, 3.0, 2), Ev(S, "person-1", "cup-3", 30, 4.0, 3),
                    Ev(E, "person-1", "cup-3", 40, 5.25, 4), Ev(E, "person-1", "bowl-5", 41, 6.0, 5)})
      .Text();
}

std::string Ask(const std::string& question, const std::string& context = Context()) {
  return MockAnswerer().Answer({context, question}).answer;
}

TEST(MockAnswerer, Templates) {
  EXPECT_EQ(Ask("When did person-1 first start interacting with cup-3?"), "t=1s");
  EXPECT_EQ(Ask("When did person-1 last stop interacting with cup-3?"), "t=5.25s");
  EXPECT_EQ(Ask("How long did person-1 interact with cup-3 in total?"), "2.75s");
  EXPECT_EQ(Ask("What did person-1 start interacting with next after first stopping "
                "interacting with cup-3?"),
            "bowl-5");
  EXPECT_EQ(Ask("What did person-1 start interacting with next after first stopping "
                "interacting with bowl-5?"),
            "nothing");
}

TEST(MockAnswerer, NotPresent) {
  EXPECT_EQ(Ask("When did person-9 first start interacting with cup-3?"), kNotPresentAnswer);
  EXPECT_EQ(Ask("How long did person-1 interact with knife-2 in total?"), kNotPresentAnswer);
  EXPECT_EQ(Ask("Why is the sky blue?"), kNotPresentAnswer);
  EXPECT_EQ(Ask("When did person-1 first start interacting with cup-3?", ""), kNotPresentAnswer);
  EXPECT_EQ(Ask("When did person-1 first start interacting with cup-3?",
                Verbalize({}).Text()),
            kNotPresentAnswer);
}

TEST(MockAnswerer, OpenIntervalRunsToLastEvent) {
  const std::string ctx = Verbalize({Ev(S, "person-1", "cup-3", 10, 1.0, 0),
                                     Ev(S, "person-2", "bowl-1", 20, 3.5, 1)})
                              .Text();
  EXPECT_EQ(Ask("How long did person-1 interact with cup-3 in total?", ctx), "2.50s");
}

TEST(Judges, ExactAndSubstring) {
  ExactJudge exact;
  SubstringJudge sub;
  EXPECT_TRUE(exact.Evaluate("  T=12.3S ", "t=12.3s").correct);
  EXPECT_FALSE(exact.Evaluate("at t=12.3s", "t=12.3s").correct);
  EXPECT_TRUE(sub.Evaluate("It happened at t=12.3s.", "t=12.3s").correct);
  EXPECT_FALSE(sub.Evaluate("t=12.4s", "t=12.3s").correct);
  EXPECT_FALSE(sub.Evaluate("anything", "").correct);
  EXPECT_EQ(NormalizeAnswer("  Cup-3\t\n Now "), "cup-3 now");
}

TEST(Factories, KnownAndUnknownKinds) {
  HttpConfig http;
  EXPECT_EQ(MakeAnswerer("mock", http)->Name(), "mock");
  EXPECT_EQ(MakeAnswerer("http", http)->Name(), "http");
  EXPECT_EQ(MakeJudge("exact", http)->Name(), "exact");
  EXPECT_EQ(MakeJudge("substring", http)->Name(), "substring");
  EXPECT_EQ(MakeJudge("http", http)->Name(), "http");
  EXPECT_THROW(MakeAnswerer("gpt", http), Error);
  EXPECT_THROW(MakeJudge("vibes", http), Error);
}

class FakeServer {
 public:
  FakeServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

HttpConfig Fast(const std::string& url) {
  HttpConfig cfg;
  cfg.base_url = url;
  cfg.timeout_seconds = 5;
  cfg.max_retries = 2;
  cfg.initial_backoff_seconds = 0.01;
  cfg.max_backoff_seconds = 0.02;
  cfg.api_key = "secret";
  return cfg;
}

TEST(Http, AnswerRoundTrip) {
  FakeServer fake;
  std::string seen_auth;
  nlohmann::json seen_body;
  fake.server().Post("/v1/answer", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    seen_body = nlohmann::json::parse(req.body);
    res.set_content(R"({"answer": "t=1s", "input_tokens": 42})", "application/json");
  });
  const auto r = HttpAnswerer(Fast(fake.url())).Answer({"ctx", "q?"});
  EXPECT_EQ(r.answer, "t=1s");
  EXPECT_EQ(r.reported_input_tokens, 42u);
  EXPECT_TRUE(r.latency.has_value());
  EXPECT_EQ(seen_auth, "Bearer secret");
  EXPECT_EQ(seen_body["context"], "ctx");
  EXPECT_EQ(seen_body["question"], "q?");
}

TEST(Http, JudgeRoundTripWithPathPrefix) {
  FakeServer fake;
  fake.server().Post("/api/v1/judge", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    const bool ok = body["predicted"] == body["gold"];
    res.set_content(nlohmann::json{{"correct", ok}, {"rationale", "cmp"}}.dump(),
                    "application/json");
  });
  HttpJudge judge(Fast(fake.url() + "/api/"));
  EXPECT_TRUE(judge.Evaluate("a", "a").correct);
  const auto v = judge.Evaluate("a", "b");
  EXPECT_FALSE(v.correct);
  EXPECT_EQ(v.rationale, "cmp");
}

ErrorKind Catch(const std::function<void()>& fn, std::string* what = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInternal;
}

TEST(Http, NonJsonIsMalformed) {
  FakeServer fake;
  fake.server().Post("/v1/answer", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("<html>oops</html>", "text/html");
  });
  std::string what;
  EXPECT_EQ(Catch([&] { HttpAnswerer(Fast(fake.url())).Answer({"c", "q"}); }, &what),
            ErrorKind::kBackend);
  EXPECT_NE(what.find("malformed"), std::string::npos);
}

TEST(Http, MissingAnswerFieldIsMalformed) {
  FakeServer fake;
  fake.server().Post("/v1/answer", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"text": "hi"})", "application/json");
  });
  EXPECT_EQ(Catch([&] { HttpAnswerer(Fast(fake.url())).Answer({"c", "q"}); }),
            ErrorKind::kBackend);
}

TEST(Http, UnauthorizedIsNotRetried) {
  FakeServer fake;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/answer", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 401;
  });
  std::string what;
  EXPECT_EQ(Catch([&] { HttpAnswerer(Fast(fake.url())).Answer({"c", "q"}); }, &what),
            ErrorKind::kBackend);
  EXPECT_NE(what.find("authorization"), std::string::npos);
  EXPECT_EQ(calls.load(), 1);
}

TEST(Http, ServerErrorsAreRetried) {
  FakeServer fake;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/answer", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"answer": "ok"})", "application/json");
  });
  EXPECT_EQ(HttpAnswerer(Fast(fake.url())).Answer({"c", "q"}).answer, "ok");
  EXPECT_EQ(calls.load(), 3);
}

TEST(Http, RetriesExhausted) {
  FakeServer fake;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/answer", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 500;
  });
  std::string what;
  EXPECT_EQ(Catch([&] { HttpAnswerer(Fast(fake.url())).Answer({"c", "q"}); }, &what),
            ErrorKind::kBackend);
  EXPECT_EQ(calls.load(), 3);
  EXPECT_NE(what.find("3 attempts"), std::string::npos);
}

TEST(Http, RefusedConnection) {
  // Nothing listens on the discard port in the test environment.
  auto cfg = Fast("http://127.0.0.1:9");
  cfg.max_retries = 1;
  EXPECT_EQ(Catch([&] { HttpAnswerer(cfg).Answer({"c", "q"}); }), ErrorKind::kBackend);
}

TEST(Http, MissingUrl) {
  EXPECT_EQ(Catch([] { HttpAnswerer(HttpConfig{}).Answer({"c", "q"}); }),
            ErrorKind::kInvalidArgument);
}

}  // namespace
}  // namespace seg
