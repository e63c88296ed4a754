#pragma once

#include <stdexcept>
#include <string>

namespace irg {

// Error categories shared by the C++ core and the C API surface.
enum class errc {
    ok = 0,
    invalid_parameter,  // precondition violated by the caller
    domain,             // numeric input outside the defined domain
    resource,           // configured combinatorial/size budget exceeded
    unsupported,        // valid request the implementation does not cover
    io,                 // file read/write failure
    internal,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
    throw Error(errc::invalid_parameter, what);
}
[[noreturn]] inline void throw_domain(const std::string& what) {
    throw Error(errc::domain, what);
}
[[noreturn]] inline void throw_resource(const std::string& what) {
    throw Error(errc::resource, what);
}
[[noreturn]] inline void throw_unsupported(const std::string& what) {
    throw Error(errc::unsupported, what);
}
[[noreturn]] inline void throw_io(const std::string& what) {
    throw Error(errc::io, what);
}

}  // namespace irg
