#include <httplib.h>

#include <algorithm>
#include <json.hpp>
#include <regex>
#include <thread>

#include "tabsel/errors.hpp"
#include "tabsel/log.hpp"
#include "tabsel/selector.hpp"

namespace tabsel {
namespace {

using nlohmann::json;

class SemaphoreGuard {
 public:
  explicit SemaphoreGuard(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
  ~SemaphoreGuard() { sem_.release(); }
  SemaphoreGuard(const SemaphoreGuard&) = delete;
  SemaphoreGuard& operator=(const SemaphoreGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

}  // namespace

void RemoteSelectorConfig::validate() const {
  static const std::regex url(R"(^https?://[^/\s]+(/\S*)?$)");
  if (!std::regex_match(endpoint, url)) {
    throw InvalidArgument("selector endpoint must be an http(s) URL, got '" + endpoint + "'");
  }
  if (model.empty()) throw InvalidArgument("selector model must be set");
  if (temperature != 0.0) throw InvalidArgument("selector temperature must be 0");
  if (max_tokens <= 0) throw InvalidArgument("max_tokens must be positive");
  if (retries < 0) throw InvalidArgument("retries must be non-negative");
  if (timeout.count() <= 0) throw InvalidArgument("timeout must be positive");
  if (max_in_flight < 1 || max_in_flight > 1024) {
    throw InvalidArgument("max_in_flight must be in [1, 1024]");
  }
}

RemoteSelector::RemoteSelector(RemoteSelectorConfig cfg, PromptTemplate tpl)
    : cfg_(std::move(cfg)), tpl_(std::move(tpl)), in_flight_(std::clamp(cfg_.max_in_flight, 1, 1024)) {
  cfg_.validate();

  static const std::regex parts(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  std::regex_match(cfg_.endpoint, m, parts);
  scheme_host_port_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme_host_port_.starts_with("https")) {
    throw InvalidArgument("this build has no TLS support; use an http:// endpoint");
  }
#endif
}

RemoteSelector::~RemoteSelector() = default;

std::string RemoteSelector::request_body(const std::string& prompt) const {
  json body = {
      {"model", cfg_.model},
      {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", cfg_.temperature},
      {"max_tokens", cfg_.max_tokens},
  };
  return body.dump();
}

std::string RemoteSelector::complete(const std::string& prompt) const {
  const std::string body = request_body(prompt);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  const int attempts = cfg_.retries + 1;
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) std::this_thread::sleep_for(cfg_.retry_backoff * (attempt - 1));

    httplib::Client client(scheme_host_port_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    auto res = [&] {
      SemaphoreGuard guard(in_flight_);
      return client.Post(path_, headers, body, "application/json");
    }();
    if (!res) {
      last_error = httplib::to_string(res.error());
    } else if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
      if (reply.is_discarded()) {
        log(LogLevel::kWarning, "selector response is not JSON");
        return {};
      }
      const json* content = nullptr;
      if (reply.contains("choices") && reply["choices"].is_array() && !reply["choices"].empty()) {
        const json& choice = reply["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content") &&
            choice["message"]["content"].is_string()) {
          content = &choice["message"]["content"];
        }
      }
      if (content == nullptr) {
        log(LogLevel::kWarning, "selector response has no choices[0].message.content");
        return {};
      }
      return content->get<std::string>();
    }
    log(LogLevel::kWarning, "selector request attempt " + std::to_string(attempt) + "/" +
                                std::to_string(attempts) + " failed: " + last_error);
  }
  throw SelectorUnavailable("selector endpoint " + cfg_.endpoint + " failed after " +
                            std::to_string(attempts) + " attempts: " + last_error);
}

SelectorOutput RemoteSelector::select(const Window& window, const Question& question,
                                      const Annotation* /*annotation*/) const {
  const std::string content = complete(render_prompt(window, question.text(), tpl_));
  DecodeResult decoded = decode_coordinate(content, window);
  if (decoded.warnings > 0) {
    log(LogLevel::kWarning, "selector output for window at (" + std::to_string(window.origin_row()) +
                                "," + std::to_string(window.origin_col()) + ") had " +
                                std::to_string(decoded.warnings) + " parse warning(s)");
  }
  return {std::move(decoded.selection), decoded.warnings};
}

}  // namespace tabsel
