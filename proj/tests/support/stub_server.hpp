#pragma once

// Deterministic chat-completions stand-in for remote selector tests. Each
// request is answered by a user-supplied policy that sees the prompt and the
// 0-based request number.

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <functional>
#include <json.hpp>
#include <string>
#include <thread>

namespace testgen {

struct StubReply {
  int status = 200;
  std::string content;                  // placed in choices[0].message.content
  std::string raw_body;                 // when non-empty, sent verbatim instead
  std::chrono::milliseconds delay{0};   // sleep before answering
};

class StubServer {
 public:
  using Policy = std::function<StubReply(const std::string& prompt, int request_index)>;

  explicit StubServer(Policy policy) : policy_(std::move(policy)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int index = requests_++;
      auto body = nlohmann::json::parse(req.body, nullptr, false);
      std::string prompt;
      if (!body.is_discarded() && body.contains("messages") && !body["messages"].empty()) {
        prompt = body["messages"][0].value("content", "");
        last_temperature_ = body.value("temperature", -1.0);
        last_model_ = body.value("model", "");
      }
      StubReply reply = policy_(prompt, index);
      if (reply.delay.count() > 0) std::this_thread::sleep_for(reply.delay);
      res.status = reply.status;
      if (!reply.raw_body.empty()) {
        res.set_content(reply.raw_body, "application/json");
        return;
      }
      nlohmann::json out = {
          {"id", "stub-" + std::to_string(index)},
          {"object", "chat.completion"},
          {"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", reply.content}}},
                        {"finish_reason", "stop"}}}}};
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  int requests() const { return requests_; }
  double last_temperature() const { return last_temperature_; }
  std::string last_model() const { return last_model_; }

 private:
  Policy policy_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<double> last_temperature_{-1.0};
  std::string last_model_;
};

// Pulls the pipe-delimited table out of a prompt rendered with the built-in
// template and returns its body rows (header excluded), split into cells.
inline std::vector<std::vector<std::string>> prompt_rows(const std::string& prompt) {
  const std::string open = "Table:\n";
  const std::string close = "\n\nSubtable:";
  const auto a = prompt.find(open);
  const auto b = prompt.rfind(close);
  std::vector<std::vector<std::string>> rows;
  if (a == std::string::npos || b == std::string::npos || b < a) return rows;
  const std::string table = prompt.substr(a + open.size(), b - a - open.size());
  std::size_t start = 0;
  bool header = true;
  while (start <= table.size()) {
    std::size_t end = table.find('\n', start);
    if (end == std::string::npos) end = table.size();
    std::string line = table.substr(start, end - start);
    start = end + 1;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::size_t s = 0;
    while (true) {
      std::size_t e = line.find(" | ", s);
      cells.push_back(line.substr(s, e == std::string::npos ? std::string::npos : e - s));
      if (e == std::string::npos) break;
      s = e + 3;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

// Coordinate grid selecting every cell whose text contains `needle`.
inline std::string grid_selecting(const std::vector<std::vector<std::string>>& rows,
                                  const std::string& needle) {
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0) out += '\n';
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0) out += ' ';
      out += rows[r][c].find(needle) != std::string::npos
                 ? "<" + std::to_string(r) + "," + std::to_string(c) + ">"
                 : "<empty,empty>";
    }
  }
  return out;
}

}  // namespace testgen
