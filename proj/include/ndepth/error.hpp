#pragma once

#include <stdexcept>
#include <string>

namespace ndepth {

class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

// Malformed user input: bad JSON, unknown names, inhomogeneous coefficients.
class InputError : public Error
{
public:
	using Error::Error;
};

// A structure does not satisfy what an operation requires of it
// (e.g. a non-nilpotent codifferential handed to the telescoping machinery).
class PreconditionError : public Error
{
public:
	using Error::Error;
};

} // namespace ndepth
