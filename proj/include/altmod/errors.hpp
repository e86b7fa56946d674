#pragma once
#include <stdexcept>
#include <string>

namespace altmod {

// A caller-supplied value violates an operation's documented precondition.
struct invalid_argument : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

// The requested instance exceeds the configured enumeration/closure limits.
struct scale_limit_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// An internal mathematical certificate failed.  This is never a usage error:
// it means a bug, or an input outside the documented domain (e.g. a matrix
// group that is not an extended centralizer).
struct certificate_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

} // namespace altmod
