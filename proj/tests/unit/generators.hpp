#pragma once

#include "fincollab/backend/backend.hpp"

#include <random>

namespace fincollab::testing {

/// Random but well-formed ChatRequest: unique tool names, seq-ordered
/// context, no two tool messages in a row, every tool message carries at
/// least one result.
backend::ChatRequest random_chat_request(std::mt19937 &rng);

std::string random_word(std::mt19937 &rng, std::size_t min_len = 1, std::size_t max_len = 10);

}  // namespace fincollab::testing
