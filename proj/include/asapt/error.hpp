#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asapt {

enum class ErrorCode {
    SelfLoop,
    TwoCycle,
    DuplicateArc,
    VertexOutOfRange,
    EmptySet,
    FullSet,
    NotConnected,
    TooLarge,
    NotPermutation,
    NotTournament,
    PreconditionViolated,
    TraceMismatch,
    NotLeafBlock,
    NotTriangle,
    NotForestOfCliques,
    InvalidPlan,
    Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace asapt
