#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stozeta {

// Error with a machine-parsable category ("config", "sampler", "numeric",
// "io", "parse", "range", "domain", "estimation", "contour", "argument").
// The CLI maps categories to exit codes and the "ERROR:<category>:" prefix.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

[[noreturn]] inline void fail(const std::string& category, const std::string& message) {
    throw Error(category, message);
}

inline void require(bool condition, const std::string& category, const std::string& message) {
    if (!condition) fail(category, message);
}

}  // namespace stozeta
