#include "fincollab/core/error.hpp"

namespace fincollab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AppendAfterTermination: return "AppendAfterTermination";
    case ErrorCode::SeqGap: return "SeqGap";
    case ErrorCode::InvalidMessage: return "InvalidMessage";
    case ErrorCode::UnknownViewer: return "UnknownViewer";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::NotRoundRobin: return "NotRoundRobin";
    case ErrorCode::MissingName: return "MissingName";
    case ErrorCode::NestedTurnCapExceeded: return "NestedTurnCapExceeded";
    case ErrorCode::TurnCapExceeded: return "TurnCapExceeded";
    case ErrorCode::BackendFailure: return "BackendFailure";
    case ErrorCode::UnknownToolRequested: return "UnknownToolRequested";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::ScriptError: return "ScriptError";
    case ErrorCode::UnknownTool: return "UnknownTool";
    case ErrorCode::DuplicateTool: return "DuplicateTool";
    case ErrorCode::ArgValidation: return "ArgValidation";
    case ErrorCode::LeakageViolation: return "LeakageViolation";
    case ErrorCode::ProviderError: return "ProviderError";
    case ErrorCode::UnknownTask: return "UnknownTask";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::EmbedderFailure: return "EmbedderFailure";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::UnparsableJudgeOutput: return "UnparsableJudgeOutput";
    case ErrorCode::NonPositiveActual: return "NonPositiveActual";
    case ErrorCode::EmptyRecordSet: return "EmptyRecordSet";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::MissingDecisionBlock: return "MissingDecisionBlock";
    case ErrorCode::MalformedDecisionBlock: return "MalformedDecisionBlock";
    case ErrorCode::MissingReport: return "MissingReport";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace fincollab
