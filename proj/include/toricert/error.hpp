#ifndef TORICERT_ERROR_HPP
#define TORICERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace toricert
{

// Bad user input or a configuration that violates a stated constraint. The
// message names the violated constraint.
class config_error : public std::invalid_argument
{
public:
    explicit config_error(const std::string &what) : std::invalid_argument(what) {}
};

// A cross-check between two independent computations disagreed, or a branch
// that the mathematics excludes was reached.
class internal_fault : public std::logic_error
{
public:
    explicit internal_fault(const std::string &what) : std::logic_error(what) {}
};

} // namespace toricert

#endif
