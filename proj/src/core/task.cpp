#include "fincollab/core/task.hpp"

#include "fincollab/core/error.hpp"

#include <string>

namespace fincollab {

std::string_view to_string(Task task) noexcept {
  switch (task) {
    case Task::Fundamental: return "fundamental";
    case Task::Sentiment: return "sentiment";
    case Task::Risk: return "risk";
    case Task::Decision: return "decision";
  }
  return "fundamental";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::Fundamental, Task::Sentiment, Task::Risk, Task::Decision}) {
    if (to_string(t) == name) {
      return t;
    }
  }
  throw Error(ErrorCode::UnknownTask, "'" + std::string(name) + "'");
}

}  // namespace fincollab
