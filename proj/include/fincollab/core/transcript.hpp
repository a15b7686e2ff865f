#pragma once

#include "fincollab/core/message.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fincollab {

enum class TranscriptStatus { Running, Terminated, TurnCapExceeded };

std::string_view to_string(TranscriptStatus status) noexcept;

/// Ordered, append-only message log for one conversation.
///
/// A Transcript is a value: append_message() and finish() return a new
/// version and never touch the argument's observable state, so a snapshot
/// can be handed to other threads without synchronisation. Pass by value
/// and move to avoid copies on the hot path:
///
///   t = append_message(std::move(t), msg);
class Transcript {
 public:
  Transcript() = default;
  explicit Transcript(std::vector<AgentSpec> group);

  [[nodiscard]] const std::vector<Message> &messages() const { return messages_; }
  [[nodiscard]] const std::vector<AgentSpec> &group() const { return group_; }
  [[nodiscard]] TranscriptStatus status() const { return status_; }
  [[nodiscard]] bool running() const { return status_ == TranscriptStatus::Running; }
  [[nodiscard]] std::size_t size() const { return messages_.size(); }
  [[nodiscard]] bool empty() const { return messages_.empty(); }

  /// Sequence number the next appended message must carry.
  [[nodiscard]] std::uint64_t next_seq() const;
  [[nodiscard]] bool has_agent(std::string_view name) const;
  [[nodiscard]] const AgentSpec *find_agent(std::string_view name) const;

  friend Transcript append_message(Transcript transcript, Message msg);
  friend Transcript finish(Transcript transcript, TranscriptStatus status);

 private:
  std::vector<Message> messages_;
  std::vector<AgentSpec> group_;
  TranscriptStatus status_ = TranscriptStatus::Running;
};

/// Throws AppendAfterTermination, SeqGap, InvalidMessage or UnknownAgent.
Transcript append_message(Transcript transcript, Message msg);

/// Moves a running transcript to a final status. Throws
/// AppendAfterTermination if it already finished, InvalidArgument if
/// status is Running.
Transcript finish(Transcript transcript, TranscriptStatus status);

/// Messages visible to `viewer`, in seq order. Main-scope messages are visible
/// to everyone; nested messages only to that exchange's leader and
/// subordinate. Throws UnknownViewer.
std::vector<Message> render_context(const Transcript &transcript, std::string_view viewer);

/// Messages belonging to one nested exchange, in seq order.
std::vector<Message> nested_messages(const Transcript &transcript, std::uint64_t nesting_id);

/// One JSON record per line, newline-terminated.
std::string to_jsonl(const Transcript &transcript);
/// Replays the records through append_message, so every invariant is
/// re-checked on load.
Transcript transcript_from_jsonl(std::string_view text, std::vector<AgentSpec> group,
                                 TranscriptStatus status = TranscriptStatus::Terminated);

void write_transcript(const std::filesystem::path &path, const Transcript &transcript);
Transcript read_transcript(const std::filesystem::path &path, std::vector<AgentSpec> group,
                           TranscriptStatus status = TranscriptStatus::Terminated);

}  // namespace fincollab
