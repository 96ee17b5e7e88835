#pragma once

#include <stdexcept>
#include <string>

namespace cyclotome {

enum class ErrorKind {
    Input,            // malformed or missing input
    Validation,       // an object failed its structural checks
    Resource,         // a cell or group exceeded a configured bound
    UnsupportedRing,  // operation needs a field (or a different ring)
    Invariant,        // d∘d ≠ 0 or a similar broken identity
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
    if (!ok) fail(kind, what);
}

}  // namespace cyclotome
