#ifndef FWM_ERRORS_HPP
#define FWM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fwm {

// Invalid run configuration: grids, pulse specs, config files, bounds.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure at runtime: singular linear system, non-finite field,
// aborted sweep point.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem and parse failures.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fwm

#endif
