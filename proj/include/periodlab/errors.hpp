#pragma once

#include <stdexcept>
#include <string>

namespace periodlab {

// Exit codes used by the command-line front end.
enum class ErrorKind : int {
    Usage = 1,
    Domain = 2,
    NonConvergence = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

/// Invalid input that is not a physics problem (bad flags, wrong potential family).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

/// Energy or parameter outside the region of periodic motion.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// The energy sits on (or beyond) a barrier top: the period diverges.
class SeparatrixError : public DomainError {
public:
    explicit SeparatrixError(const std::string& what) : DomainError(what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(ErrorKind::NonConvergence, what) {}
};

}  // namespace periodlab
