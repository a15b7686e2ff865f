#include "fincollab/core/transcript.hpp"

#include "fincollab/core/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fincollab {

std::string_view to_string(TranscriptStatus status) noexcept {
  switch (status) {
    case TranscriptStatus::Running: return "running";
    case TranscriptStatus::Terminated: return "terminated";
    case TranscriptStatus::TurnCapExceeded: return "turn_cap_exceeded";
  }
  return "running";
}

Transcript::Transcript(std::vector<AgentSpec> group) : group_(std::move(group)) {}

std::uint64_t Transcript::next_seq() const { return messages_.empty() ? 0 : messages_.back().seq + 1; }

bool Transcript::has_agent(std::string_view name) const { return find_agent(name) != nullptr; }

const AgentSpec *Transcript::find_agent(std::string_view name) const {
  for (const auto &agent : group_) {
    if (agent.name == name) {
      return &agent;
    }
  }
  return nullptr;
}

Transcript append_message(Transcript transcript, Message msg) {
  if (!transcript.running()) {
    throw Error(ErrorCode::AppendAfterTermination,
                "transcript is " + std::string(to_string(transcript.status_)));
  }
  if (msg.seq != transcript.next_seq()) {
    throw Error(ErrorCode::SeqGap, "expected seq " + std::to_string(transcript.next_seq()) + ", got " +
                                       std::to_string(msg.seq));
  }
  if (!msg.tool_results.empty() && !msg.from_tool()) {
    throw Error(ErrorCode::InvalidMessage, "only tool messages may carry tool results (sender '" + msg.sender + "')");
  }
  if (msg.from_agent() && !transcript.has_agent(msg.sender)) {
    throw Error(ErrorCode::UnknownAgent, "sender '" + msg.sender + "' is not in the group");
  }
  if (msg.scope.is_nested()) {
    if (!transcript.has_agent(msg.scope.leader) || !transcript.has_agent(msg.scope.subordinate)) {
      throw Error(ErrorCode::UnknownAgent, "nested scope " + msg.scope.to_string() + " names an agent outside the group");
    }
    for (const auto &prior : transcript.messages_) {
      if (prior.scope.is_nested() && prior.scope.nesting_id == msg.scope.nesting_id &&
          (prior.scope.leader != msg.scope.leader || prior.scope.subordinate != msg.scope.subordinate)) {
        throw Error(ErrorCode::InvalidMessage,
                    "nesting id " + std::to_string(msg.scope.nesting_id) + " reused for a different pair");
      }
    }
  }
  transcript.messages_.push_back(std::move(msg));
  return transcript;
}

Transcript finish(Transcript transcript, TranscriptStatus status) {
  if (status == TranscriptStatus::Running) {
    throw Error(ErrorCode::InvalidArgument, "cannot finish a transcript as running");
  }
  if (!transcript.running()) {
    throw Error(ErrorCode::AppendAfterTermination, "transcript already finished");
  }
  transcript.status_ = status;
  return transcript;
}

std::vector<Message> render_context(const Transcript &transcript, std::string_view viewer) {
  if (viewer != kUserSender && !transcript.has_agent(viewer)) {
    throw Error(ErrorCode::UnknownViewer, std::string(viewer));
  }
  std::vector<Message> visible;
  for (const auto &msg : transcript.messages()) {
    if (msg.scope.is_main() || msg.scope.leader == viewer || msg.scope.subordinate == viewer) {
      visible.push_back(msg);
    }
  }
  return visible;
}

std::vector<Message> nested_messages(const Transcript &transcript, std::uint64_t nesting_id) {
  std::vector<Message> out;
  for (const auto &msg : transcript.messages()) {
    if (msg.scope.is_nested() && msg.scope.nesting_id == nesting_id) {
      out.push_back(msg);
    }
  }
  return out;
}

std::string to_jsonl(const Transcript &transcript) {
  std::string out;
  for (const auto &msg : transcript.messages()) {
    out += to_json(msg).dump();
    out += '\n';
  }
  return out;
}

Transcript transcript_from_jsonl(std::string_view text, std::vector<AgentSpec> group, TranscriptStatus status) {
  Transcript transcript(std::move(group));
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw Error(ErrorCode::ParseError, "transcript line " + std::to_string(line_no) + ": " + e.what());
    }
    transcript = append_message(std::move(transcript), message_from_json(record));
  }
  if (status != TranscriptStatus::Running) {
    transcript = finish(std::move(transcript), status);
  }
  return transcript;
}

void write_transcript(const std::filesystem::path &path, const Transcript &transcript) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << to_jsonl(transcript);
}

Transcript read_transcript(const std::filesystem::path &path, std::vector<AgentSpec> group,
                           TranscriptStatus status) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return transcript_from_jsonl(buffer.str(), std::move(group), status);
}

}  // namespace fincollab
