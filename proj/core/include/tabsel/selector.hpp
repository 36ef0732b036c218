#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>

#include "tabsel/condition.hpp"
#include "tabsel/representation.hpp"
#include "tabsel/table.hpp"

namespace tabsel {

struct SelectorOutput {
  CellSelection selection;
  std::size_t parse_warnings = 0;
};

// Maps one window plus the question to a subwindow. Implementations must be
// safe to call from several threads at once and must be deterministic.
// `annotation` is only consulted by selectors that need ground truth.
class Selector {
 public:
  virtual ~Selector() = default;

  virtual SelectorOutput select(const Window& window, const Question& question,
                                const Annotation* annotation) const = 0;

  virtual bool needs_annotation() const { return false; }
};

// Window-local target rule: keep the condition and answer columns inside the
// window, restricted to rows satisfying every condition whose column is in
// the window. No in-window condition means every row qualifies; no qualifying
// row gives a headers-only selection; no relevant column gives an empty
// (zero-column) selection.
CellSelection oracle_select(const Window& window, const Annotation& annotation);

class OracleSelector final : public Selector {
 public:
  // Throws InvalidArgument when annotation is null.
  SelectorOutput select(const Window& window, const Question& question,
                        const Annotation* annotation) const override;

  bool needs_annotation() const override { return true; }
};

struct RemoteSelectorConfig {
  // Full URL of a chat-completions endpoint, e.g.
  // http://localhost:8000/v1/chat/completions
  std::string endpoint;
  std::string model;
  std::string api_key;
  // Pinned: the selection loop needs a deterministic selector.
  double temperature = 0.0;
  int max_tokens = 512;
  int retries = 2;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds retry_backoff{200};
  int max_in_flight = 4;

  // Throws InvalidArgument on an unusable configuration, including a
  // non-zero temperature.
  void validate() const;
};

// Sends the rendered prompt to an OpenAI-compatible chat-completions endpoint
// and decodes the first choice's message content as a coordinate grid.
// Transport failures and non-2xx replies are retried `retries` times before
// SelectorUnavailable is thrown. Unparseable content is never fatal.
class RemoteSelector final : public Selector {
 public:
  explicit RemoteSelector(RemoteSelectorConfig cfg,
                          PromptTemplate tpl = PromptTemplate::builtin());
  ~RemoteSelector() override;

  SelectorOutput select(const Window& window, const Question& question,
                        const Annotation* annotation) const override;

  const RemoteSelectorConfig& config() const noexcept { return cfg_; }

  // The JSON request body sent for `prompt`.
  std::string request_body(const std::string& prompt) const;

 private:
  // Returns the message content of the response, or throws
  // SelectorUnavailable.
  std::string complete(const std::string& prompt) const;

  RemoteSelectorConfig cfg_;
  PromptTemplate tpl_;
  std::string scheme_host_port_;
  std::string path_;
  mutable std::counting_semaphore<1024> in_flight_;
};

}  // namespace tabsel
