#pragma once

#include <stdexcept>
#include <string>

namespace mform {

// error families map onto the CLI exit codes
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RationalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mform
