#pragma once

#include <stdexcept>
#include <string>

namespace layr {

/// Failure while computing a layout. `step` names the pipeline step that
/// failed, when known.
class LayoutError : public std::runtime_error {
public:
    explicit LayoutError(const std::string& message, std::string step = {})
        : std::runtime_error(message), step_(std::move(step)) {}

    const std::string& step() const { return step_; }

private:
    std::string step_;
};

}  // namespace layr
