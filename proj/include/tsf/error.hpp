#ifndef TSF_ERROR_HPP
#define TSF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tsf {

// Every failure carries a short machine-readable code; the CLI prints it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Raised when a finite resource (tower capacity, search budget) runs out.
// Distinct from Error so callers can report "inconclusive" instead of "invalid".
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace tsf

#endif
