#pragma once

#include <array>
#include <string_view>

namespace fincollab {

enum class Task { Fundamental, Sentiment, Risk, Decision };

inline constexpr std::array<Task, 3> kSubTasks{Task::Fundamental, Task::Sentiment, Task::Risk};

std::string_view to_string(Task task) noexcept;
/// Throws Error{UnknownTask}.
Task parse_task(std::string_view name);

}  // namespace fincollab
