#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace segev {

// Data/validation error. CLI maps these to exit code 2; usage errors are
// handled by the argument parser and map to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

namespace detail {

inline void append_all(std::ostringstream&) {}

template <typename T, typename... Rest>
void append_all(std::ostringstream& os, const T& value, const Rest&... rest) {
    os << value;
    append_all(os, rest...);
}

}  // namespace detail

template <typename... Parts>
std::string cat(const Parts&... parts) {
    std::ostringstream os;
    detail::append_all(os, parts...);
    return os.str();
}

template <typename... Parts>
[[noreturn]] void fail(const Parts&... parts) {
    throw Error(cat(parts...));
}

template <typename... Parts>
void require(bool condition, const Parts&... parts) {
    if (!condition) fail(parts...);
}

}  // namespace segev
