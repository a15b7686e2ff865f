#pragma once

#include "fincollab/backend/backend.hpp"

namespace fincollab::backend {

// Chat-completions wire format.
//
// Request messages map as follows:
//   system prompt              -> {"role":"system","name":<agent>}
//   sender "user"              -> {"role":"user"}
//   own turns or any tool-call -> {"role":"assistant","name":<sender>}
//   other agents               -> {"role":"user","name":<sender>}
//   one tool message           -> one {"role":"tool"} entry per result;
//                                 failed results carry "ERROR: <reason>"
// Consecutive "tool" entries decode back into a single tool message.
// Sequence numbers and scopes are not part of the wire format; decoding
// renumbers from 0 in Main scope.

Json encode_request(const ChatRequest &request);
/// Throws Error{DecodeError} naming the offending field path.
ChatRequest decode_request(const Json &payload);

/// Completion body with a single choice.
Json encode_response(const ChatResponse &response);
/// Throws Error{DecodeError} naming the offending field path, e.g.
/// "choices[0].message.tool_calls[1].function.arguments".
ChatResponse decode_response(const Json &payload);

}  // namespace fincollab::backend
