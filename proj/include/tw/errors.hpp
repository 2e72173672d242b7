#ifndef TW_ERRORS_HPP
#define TW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tw {

struct NotSuccessfulError : std::runtime_error {
    explicit NotSuccessfulError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidIntervalError : std::runtime_error {
    explicit InvalidIntervalError(const std::string& what) : std::runtime_error(what) {}
};

struct NotALoopError : std::runtime_error {
    explicit NotALoopError(const std::string& what) : std::runtime_error(what) {}
};

struct BoundExceededError : std::runtime_error {
    explicit BoundExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct MismatchedPairError : std::runtime_error {
    explicit MismatchedPairError(const std::string& what) : std::runtime_error(what) {}
};

struct HasInversionError : std::runtime_error {
    explicit HasInversionError(const std::string& what) : std::runtime_error(what) {}
};

struct TreeMismatchError : std::runtime_error {
    explicit TreeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct NotTotallyOrderedError : std::runtime_error {
    explicit NotTotallyOrderedError(const std::string& what) : std::runtime_error(what) {}
};

struct NotKVisitError : std::runtime_error {
    explicit NotKVisitError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

}  // namespace tw

#endif
