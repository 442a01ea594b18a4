#pragma once

#include <stdexcept>
#include <string>

namespace errw {

// Precondition or input violation. The CLI maps this to exit code 3.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A brute-force guard was exceeded (e.g. spanning-tree enumeration on a
// graph that is too large).
class size_error : public domain_error {
public:
    explicit size_error(const std::string& what) : domain_error(what) {}
};

// A fit was requested on data that cannot support it.
class degenerate_fit_error : public domain_error {
public:
    explicit degenerate_fit_error(const std::string& what) : domain_error(what) {}
};

} // namespace errw
