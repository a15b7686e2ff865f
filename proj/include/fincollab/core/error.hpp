#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fincollab {

enum class ErrorCode {
  // core_model
  AppendAfterTermination,
  SeqGap,
  InvalidMessage,
  UnknownViewer,
  UnknownAgent,
  // orchestrator
  InvalidStructure,
  NotRoundRobin,
  MissingName,
  NestedTurnCapExceeded,
  TurnCapExceeded,
  // backend
  BackendFailure,
  UnknownToolRequested,
  InvalidRequest,
  DecodeError,
  ScriptError,
  // toolkit
  UnknownTool,
  DuplicateTool,
  ArgValidation,
  LeakageViolation,
  ProviderError,
  UnknownTask,
  // rag
  EmptyDocument,
  EmbedderFailure,
  EmptyIndex,
  // tasks_eval
  UnparsableJudgeOutput,
  NonPositiveActual,
  EmptyRecordSet,
  IncompleteTable,
  MissingDecisionBlock,
  MalformedDecisionBlock,
  MissingReport,
  // shared
  InvalidArgument,
  ParseError,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. Callers that need
/// to branch on the failure kind inspect code() instead of the dynamic type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fincollab
